//! Cyclic group actions on fans: validation (lattice automorphism, fan
//! automorphism, properness), fixed subcomplexes, and restriction of an
//! instance to the fixed subspace of a subgroup.

use std::collections::{BTreeSet, HashMap};

use num_traits::Signed;
use thiserror::Error;

use crate::exactalg::matrix::solve_integral;
use crate::exactalg::{
    fixed_subspace_dimension, integer_kernel_basis, matrix_order, AlgebraError, IntMatrix, IntVector,
};
use crate::fan::{complex_from_fan, Fan, SimplicialComplex};

/// A finite cyclic group `⟨c⟩` acting on a fan through an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    pub generator: IntMatrix,
    pub order: u64,
    /// `ray_perm[i]` is the index of `c · rays[i]`.
    pub ray_perm: Vec<usize>,
}

impl GroupAction {
    /// The trivial action on the 0-dimensional fan.
    pub fn trivial_point() -> Self {
        GroupAction { generator: IntMatrix::identity(0), order: 1, ray_perm: Vec::new() }
    }

    /// Ray permutation induced by `c^j`.
    pub fn perm_power(&self, j: u64) -> Vec<usize> {
        let j = j % self.order;
        (0..self.ray_perm.len())
            .map(|mut i| {
                for _ in 0..j {
                    i = self.ray_perm[i];
                }
                i
            })
            .collect()
    }

    /// Matrix of `c^j`.
    pub fn element(&self, j: u64) -> IntMatrix {
        self.generator.pow(j % self.order)
    }

    /// Order of `c^j`.
    pub fn element_order(&self, j: u64) -> u64 {
        self.order / num_integer::gcd(self.order, j % self.order)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutomorphismWitness {
    /// `c` maps this ray to a vector that is not a ray.
    Ray { index: usize, image: IntVector },
    /// `c` maps this maximal cone onto a set of rays that is not a maximal cone.
    Cone { index: usize, image: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("generator is {rows}x{cols}, fan dimension is {dim}")]
    DimensionMismatch { dim: usize, rows: usize, cols: usize },
    #[error("generator has determinant {det}, not ±1")]
    NotUnimodular { det: String },
    #[error("generator has no identity power up to {cap}")]
    OrderExceedsCap { cap: u64 },
    #[error("generator is not a fan automorphism: {0:?}")]
    NotFanAutomorphism(AutomorphismWitness),
    #[error("action is not proper: c^{power} maps face {face:?} to itself without fixing it pointwise")]
    NotProper { power: u64, face: Vec<usize> },
    #[error("restriction to the fixed subspace of c^{divisor} failed: {detail}")]
    Restriction { divisor: u64, detail: String },
}

impl From<AlgebraError> for ActionError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::OrderExceedsCap { cap } => ActionError::OrderExceedsCap { cap },
            other => ActionError::Restriction { divisor: 0, detail: other.to_string() },
        }
    }
}

/// Verifies that `generator` generates a finite cyclic group acting properly
/// on `fan`. Checks run in order: shape, unimodularity, finite order, ray
/// permutation, cone permutation, properness.
pub fn validate_action(fan: &Fan, generator: &IntMatrix, cap: u64) -> Result<GroupAction, ActionError> {
    let d = fan.dim;
    if generator.rows() != d || generator.cols() != d {
        return Err(ActionError::DimensionMismatch { dim: d, rows: generator.rows(), cols: generator.cols() });
    }
    let det = generator.det();
    if det.abs() != num_bigint::BigInt::from(1) {
        return Err(ActionError::NotUnimodular { det: det.to_string() });
    }
    let order = matrix_order(generator, cap)?;

    let index = fan.ray_index();
    let mut ray_perm = Vec::with_capacity(fan.rays.len());
    for (i, ray) in fan.rays.iter().enumerate() {
        let image = generator.mul_vec(ray);
        match index.get(image.as_slice()) {
            Some(&k) => ray_perm.push(k),
            None => return Err(ActionError::NotFanAutomorphism(AutomorphismWitness::Ray { index: i, image })),
        }
    }

    let cones: BTreeSet<&Vec<usize>> = fan.maximal_cones.iter().collect();
    for (ci, cone) in fan.maximal_cones.iter().enumerate() {
        let mut image: Vec<usize> = cone.iter().map(|&i| ray_perm[i]).collect();
        image.sort_unstable();
        if !cones.contains(&image) {
            return Err(ActionError::NotFanAutomorphism(AutomorphismWitness::Cone { index: ci, image }));
        }
    }

    let action = GroupAction { generator: generator.clone(), order, ray_perm };
    check_proper(fan, &action)?;
    Ok(action)
}

/// Every face mapped to itself by some `c^j` must be fixed vertex by vertex.
/// The zero cone is skipped.
fn check_proper(fan: &Fan, action: &GroupAction) -> Result<(), ActionError> {
    let faces = complex_from_fan(fan).faces();
    for j in 1..action.order {
        let perm = action.perm_power(j);
        for face in faces.iter().filter(|f| !f.is_empty()) {
            if face.iter().all(|&v| perm[v] == v) {
                continue;
            }
            let mut image: Vec<usize> = face.iter().map(|&v| perm[v]).collect();
            image.sort_unstable();
            if image == *face {
                return Err(ActionError::NotProper { power: j, face: face.clone() });
            }
        }
    }
    Ok(())
}

/// The fixed subcomplex `Δ^{c^j}` together with `δ(c^j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedData {
    pub exponent: u64,
    /// Facets in the original ray indexing; `{∅}` when no ray is fixed.
    pub complex: SimplicialComplex,
    pub delta: usize,
    pub fixed_rays: Vec<usize>,
}

impl FixedData {
    /// Every facet has exactly `delta` vertices.
    pub fn is_sphere_dimensional(&self) -> bool {
        self.complex.facets.iter().all(|f| f.len() == self.delta)
    }
}

/// Faces of `Δ` fixed by `c^j`. Under a proper action these are exactly the
/// faces made of fixed rays.
pub fn fixed_subcomplex(fan: &Fan, action: &GroupAction, j: u64) -> FixedData {
    let perm = action.perm_power(j);
    let fixed_rays: Vec<usize> = (0..perm.len()).filter(|&i| perm[i] == i).collect();
    let faces = fan
        .maximal_cones
        .iter()
        .map(|cone| cone.iter().copied().filter(|&v| perm[v] == v).collect::<Vec<_>>());
    let complex = SimplicialComplex::from_faces(fan.rays.len(), faces);
    let delta = fixed_subspace_dimension(&action.element(j));
    FixedData { exponent: j, complex, delta, fixed_rays }
}

/// An instance restricted to the fixed lattice `L ∩ V_{c^l}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub divisor: u64,
    pub fan: Fan,
    pub action: GroupAction,
    /// `ray_map[k]` is the original index of restricted ray `k`.
    pub ray_map: Vec<usize>,
    /// Lattice basis of the fixed sublattice, in original coordinates.
    pub basis: Vec<IntVector>,
}

impl Restriction {
    /// True when `c^l` fixes only the origin.
    pub fn is_degenerate(&self) -> bool {
        self.fan.dim == 0
    }
}

/// Restricts the instance to the fixed subspace of `c^l`, where the quotient
/// `G / ⟨c^l⟩` acts. Coordinates are taken in a saturated basis of the fixed
/// sublattice, so rays and the restricted generator stay integral.
///
/// When `c^l` fixes only the origin the result is the 0-dimensional instance
/// with one empty cone and the trivial group.
pub fn restrict_to_fixed(fan: &Fan, action: &GroupAction, l: u64) -> Result<Restriction, ActionError> {
    let d = fan.dim;
    if l.is_multiple_of(action.order) {
        return Ok(Restriction {
            divisor: l,
            fan: fan.clone(),
            action: action.clone(),
            ray_map: (0..fan.rays.len()).collect(),
            basis: IntMatrix::identity(d).to_rows(),
        });
    }
    let basis = integer_kernel_basis(&action.element(l).minus_identity());
    if basis.is_empty() {
        return Ok(Restriction {
            divisor: l,
            fan: Fan::point(),
            action: GroupAction::trivial_point(),
            ray_map: Vec::new(),
            basis,
        });
    }
    let k = basis.len();
    let b = IntMatrix::from_columns(d, &basis);
    let fail = |detail: String| ActionError::Restriction { divisor: l, detail };

    let fixed = fixed_subcomplex(fan, action, l);
    let new_index: HashMap<usize, usize> = fixed.fixed_rays.iter().enumerate().map(|(n, &o)| (o, n)).collect();
    let mut rays = Vec::with_capacity(fixed.fixed_rays.len());
    for &o in &fixed.fixed_rays {
        let coords = solve_integral(&b, &fan.rays[o])
            .ok_or_else(|| fail(format!("ray {o} has no integral coordinates in the fixed lattice")))?;
        rays.push(coords);
    }
    let cones = fixed
        .complex
        .facets
        .iter()
        .map(|f| f.iter().map(|o| new_index[o]).collect())
        .collect();
    let restricted_fan = Fan::new(k, rays, cones);

    let mut columns = Vec::with_capacity(k);
    for v in &basis {
        let image = action.generator.mul_vec(v);
        columns.push(
            solve_integral(&b, &image)
                .ok_or_else(|| fail("generator does not preserve the fixed lattice".into()))?,
        );
    }
    let generator = IntMatrix::from_columns(k, &columns);
    let restricted_action = validate_action(&restricted_fan, &generator, action.order)
        .map_err(|e| fail(e.to_string()))?;

    Ok(Restriction {
        divisor: l,
        fan: restricted_fan,
        action: restricted_action,
        ray_map: fixed.fixed_rays,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::DEFAULT_ORDER_CAP;

    fn projective_plane() -> Fan {
        Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[2, 0]])
    }

    fn product_of_lines() -> Fan {
        Fan::from_i64(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]])
    }

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    #[test]
    fn order_three_on_projective_plane() {
        let fan = projective_plane();
        let a = validate_action(&fan, &mat(&[&[0, -1], &[1, -1]]), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(a.order, 3);
        assert_eq!(a.ray_perm, vec![1, 2, 0]);
        let fx = fixed_subcomplex(&fan, &a, 1);
        assert_eq!(fx.complex, SimplicialComplex::empty_face_only(3));
        assert_eq!(fx.delta, 0);
        let full = fixed_subcomplex(&fan, &a, 3);
        assert_eq!(full.complex, complex_from_fan(&fan));
        assert_eq!(full.delta, 2);
    }

    #[test]
    fn rotation_and_reflection_on_product_of_lines() {
        let fan = product_of_lines();
        let rot = validate_action(&fan, &mat(&[&[0, -1], &[1, 0]]), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(rot.order, 4);
        let refl = validate_action(&fan, &mat(&[&[1, 0], &[0, -1]]), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(refl.order, 2);
        let fx = fixed_subcomplex(&fan, &refl, 1);
        assert_eq!(fx.complex.facets, vec![vec![0], vec![1]]);
        assert_eq!(fx.delta, 1);
        assert!(fx.is_sphere_dimensional());
    }

    #[test]
    fn swapping_rays_of_a_cone_is_not_proper() {
        // the swap of x and y maps cone {e1, e2} to itself but exchanges its rays
        let fan = projective_plane();
        let err = validate_action(&fan, &mat(&[&[0, 1], &[1, 0]]), DEFAULT_ORDER_CAP).unwrap_err();
        assert_eq!(err, ActionError::NotProper { power: 1, face: vec![0, 1] });
    }

    #[test]
    fn validation_failures() {
        let fan = product_of_lines();
        assert!(matches!(
            validate_action(&fan, &mat(&[&[2, 0], &[0, 1]]), 100),
            Err(ActionError::NotUnimodular { .. })
        ));
        assert_eq!(validate_action(&fan, &mat(&[&[1, 1], &[0, 1]]), 50), Err(ActionError::OrderExceedsCap { cap: 50 }));
        assert!(matches!(
            validate_action(&projective_plane(), &mat(&[&[-1, 0], &[0, -1]]), 100),
            Err(ActionError::NotFanAutomorphism(AutomorphismWitness::Ray { index: 0, .. }))
        ));
        assert!(matches!(
            validate_action(&fan, &mat(&[&[1, 0, 0], &[0, 1, 0]]), 100),
            Err(ActionError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn cone_witness() {
        // rays are permuted by the rotation but the cone list is not
        let fan = Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[&[0, 1], &[1, 2], &[2, 3], &[0, 2]]);
        assert_eq!(
            validate_action(&fan, &mat(&[&[0, -1], &[1, 0]]), 100),
            Err(ActionError::NotFanAutomorphism(AutomorphismWitness::Cone { index: 2, image: vec![0, 3] }))
        );
    }

    #[test]
    fn restriction_examples() {
        let fan = product_of_lines();
        let rot = validate_action(&fan, &mat(&[&[0, -1], &[1, 0]]), 100).unwrap();
        let r = restrict_to_fixed(&fan, &rot, 2).unwrap();
        assert!(r.is_degenerate());
        assert_eq!(r.fan, Fan::point());
        assert_eq!(r.action.order, 1);

        let refl = validate_action(&fan, &mat(&[&[1, 0], &[0, -1]]), 100).unwrap();
        let r = restrict_to_fixed(&fan, &refl, 1).unwrap();
        assert_eq!(r.fan, Fan::from_i64(1, &[&[1], &[-1]], &[&[0], &[1]]));
        assert_eq!(r.action.order, 1);
        assert_eq!(r.ray_map, vec![0, 1]);

        let same = restrict_to_fixed(&fan, &rot, 4).unwrap();
        assert_eq!((same.fan, same.action), (fan.clone(), rot));
    }
}
