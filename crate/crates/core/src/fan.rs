//! Complete simplicial fans, their associated simplicial complexes, and
//! face-count bookkeeping (f-vectors and h-polynomials).
//!
//! Faces are enumerated by expanding every facet into its subsets and
//! deduplicating. That is exponential in the facet size and intended for
//! fans with at most a couple of dozen rays.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::matrix::{content, dot, normal_vector};
use crate::exactalg::{IntMatrix, IntPolynomial, IntVector};

/// Ambient dimension up to which the overlap test is run at the geometric level.
pub const GEOMETRIC_MAX_DIM: usize = 3;

/// A fan given by primitive integer rays and its maximal cones, each a set of
/// ray indices. Cones are stored sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub dim: usize,
    pub rays: Vec<IntVector>,
    pub maximal_cones: Vec<Vec<usize>>,
}

impl Fan {
    pub fn new(dim: usize, rays: Vec<IntVector>, maximal_cones: Vec<Vec<usize>>) -> Self {
        let maximal_cones = maximal_cones
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        Fan { dim, rays, maximal_cones }
    }

    pub fn from_i64(dim: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Self {
        Self::new(
            dim,
            rays.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
            cones.iter().map(|c| c.to_vec()).collect(),
        )
    }

    /// The 0-dimensional fan: no rays and a single empty cone.
    pub fn point() -> Self {
        Fan { dim: 0, rays: Vec::new(), maximal_cones: vec![Vec::new()] }
    }

    /// Divides every ray by the gcd of its coordinates.
    pub fn normalize_rays(&mut self) {
        for ray in &mut self.rays {
            let g = content(ray);
            if !g.is_zero() && !g.is_one() {
                for x in ray.iter_mut() {
                    *x = &*x / &g;
                }
            }
        }
    }

    pub fn ray_index(&self) -> HashMap<&[BigInt], usize> {
        self.rays.iter().enumerate().map(|(i, r)| (r.as_slice(), i)).collect()
    }
}

/// A simplicial complex stored by its facets (sorted, deduplicated).
/// `{∅}` is the complex whose only facet is the empty set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimplicialComplex {
    pub vertex_count: usize,
    pub facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Builds a complex from any generating family of faces, keeping only the
    /// inclusion-maximal ones. An empty family gives `{∅}`.
    pub fn from_faces(vertex_count: usize, faces: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let mut set: BTreeSet<Vec<usize>> = faces
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        if set.is_empty() {
            set.insert(Vec::new());
        }
        let all: Vec<Vec<usize>> = set.into_iter().collect();
        let facets = all
            .iter()
            .filter(|f| !all.iter().any(|g| g.len() > f.len() && is_subset(f, g)))
            .cloned()
            .collect();
        SimplicialComplex { vertex_count, facets }
    }

    pub fn empty_face_only(vertex_count: usize) -> Self {
        SimplicialComplex { vertex_count, facets: vec![Vec::new()] }
    }

    /// Every face, including the empty face.
    pub fn faces(&self) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for facet in &self.facets {
            let k = facet.len();
            for mask in 0u64..(1u64 << k) {
                out.insert((0..k).filter(|&i| mask >> i & 1 == 1).map(|i| facet[i]).collect());
            }
        }
        out
    }

    pub fn contains_face(&self, face: &[usize]) -> bool {
        self.facets.iter().any(|f| is_subset(face, f))
    }

    /// Size of the largest facet.
    pub fn max_facet_size(&self) -> usize {
        self.facets.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_pure(&self) -> bool {
        let k = self.max_facet_size();
        self.facets.iter().all(|f| f.len() == k)
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

/// Face counts by cardinality: `counts[k]` is the number of faces with `k`
/// vertices, so `counts[0] = 1` counts the empty face.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FVector {
    pub counts: Vec<u64>,
}

pub fn complex_from_fan(fan: &Fan) -> SimplicialComplex {
    SimplicialComplex::from_faces(fan.rays.len(), fan.maximal_cones.iter().cloned())
}

pub fn f_vector(c: &SimplicialComplex) -> FVector {
    let mut counts = vec![0u64; c.max_facet_size() + 1];
    for face in c.faces() {
        counts[face.len()] += 1;
    }
    FVector { counts }
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// h-polynomial of a pure complex whose facets have `d` vertices:
/// `h_k = Σ_{i=0}^{k} (-1)^{k-i} C(d-i, k-i) f_{i-1}` for `k = 0..=d`.
pub fn h_polynomial(f: &FVector, d: usize) -> IntPolynomial {
    let coeffs = (0..=d)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let fi = BigInt::from(f.counts.get(i).copied().unwrap_or(0));
                    let term = binomial((d - i) as u64, (k - i) as u64) * fi;
                    if (k - i) % 2 == 0 { term } else { -term }
                })
                .sum()
        })
        .collect();
    IntPolynomial::new(coeffs)
}

/// Number of facets; `{∅}` has exactly one.
pub fn facet_count(c: &SimplicialComplex) -> usize {
    c.facets.len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ValidationLevel {
    Basic,
    Geometric,
}

impl fmt::Display for ValidationLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ValidationLevel::Basic => "basic",
            ValidationLevel::Geometric => "geometric",
        })
    }
}

/// Machine-readable reason for a failed fan check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FanInvalidReason {
    RayDimension,
    RayIndexOutOfRange,
    ZeroRay,
    NonPrimitiveRay,
    DuplicateRay,
    ConeSize,
    DuplicateCone,
    NotSimplicial,
    UnusedRay,
    PseudoManifold,
    Disconnected,
    EulerCharacteristic,
    Overlap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanIssue {
    pub reason: FanInvalidReason,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FanError {
    #[error("invalid fan: {}", .0.iter().map(|i| format!("{:?} ({})", i.reason, i.detail)).collect::<Vec<_>>().join("; "))]
    FanInvalid(Vec<FanIssue>),
}

impl FanError {
    pub fn reasons(&self) -> Vec<FanInvalidReason> {
        let FanError::FanInvalid(issues) = self;
        issues.iter().map(|i| i.reason).collect()
    }
}

/// Outcome of a successful validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub requested: ValidationLevel,
    pub achieved: ValidationLevel,
    pub checks: Vec<&'static str>,
    /// Non-fatal observations such as an asymmetric h-vector.
    pub warnings: Vec<String>,
}

struct Issues(Vec<FanIssue>);

impl Issues {
    fn push(&mut self, reason: FanInvalidReason, detail: impl Into<String>) {
        self.0.push(FanIssue { reason, detail: detail.into() });
    }
}

/// Checks that `fan` is a complete simplicial fan, as far as the requested
/// level allows. All failing checks are collected into one error.
pub fn validate_fan(fan: &Fan, level: ValidationLevel) -> Result<ValidationReport, FanError> {
    use FanInvalidReason::*;
    let d = fan.dim;
    let mut issues = Issues(Vec::new());
    let mut checks = Vec::new();

    // structural checks; nothing else is meaningful if these fail
    for (i, r) in fan.rays.iter().enumerate() {
        if r.len() != d {
            issues.push(RayDimension, format!("ray {i} has {} coordinates, expected {d}", r.len()));
        }
    }
    for (ci, cone) in fan.maximal_cones.iter().enumerate() {
        if let Some(&bad) = cone.iter().find(|&&x| x >= fan.rays.len()) {
            issues.push(RayIndexOutOfRange, format!("cone {ci} references ray {bad}"));
        }
        let distinct: BTreeSet<_> = cone.iter().collect();
        if cone.len() != d || distinct.len() != d {
            issues.push(ConeSize, format!("cone {ci} has {} distinct rays, expected {d}", distinct.len()));
        }
    }
    if fan.maximal_cones.is_empty() {
        issues.push(ConeSize, "no maximal cones");
    }
    if !issues.0.is_empty() {
        return Err(FanError::FanInvalid(issues.0));
    }
    checks.push("structure");

    let mut seen: HashMap<&[BigInt], usize> = HashMap::new();
    for (i, r) in fan.rays.iter().enumerate() {
        let g = content(r);
        if g.is_zero() {
            issues.push(ZeroRay, format!("ray {i} is zero"));
        } else if !g.is_one() {
            issues.push(NonPrimitiveRay, format!("ray {i} has coordinate gcd {g}"));
        }
        if let Some(j) = seen.insert(r.as_slice(), i) {
            issues.push(DuplicateRay, format!("rays {j} and {i} coincide"));
        }
    }
    checks.push("primitive distinct rays");

    let mut cone_set = HashSet::new();
    for (ci, cone) in fan.maximal_cones.iter().enumerate() {
        if !cone_set.insert(cone.clone()) {
            issues.push(DuplicateCone, format!("cone {ci} is repeated"));
        }
        let cols: Vec<IntVector> = cone.iter().map(|&i| fan.rays[i].clone()).collect();
        if d > 0 && IntMatrix::from_columns(d, &cols).rank() != d {
            issues.push(NotSimplicial, format!("rays of cone {ci} are linearly dependent"));
        }
    }
    checks.push("simplicial cones");

    let used: HashSet<usize> = fan.maximal_cones.iter().flatten().copied().collect();
    for i in 0..fan.rays.len() {
        if !used.contains(&i) {
            issues.push(UnusedRay, format!("ray {i} lies in no maximal cone"));
        }
    }

    // every ridge in exactly two facets
    let mut ridges: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    if d > 0 {
        for (ci, cone) in fan.maximal_cones.iter().enumerate() {
            for skip in 0..cone.len() {
                let ridge: Vec<usize> = cone.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &x)| x).collect();
                ridges.entry(ridge).or_default().push(ci);
            }
        }
        for (ridge, owners) in &ridges {
            if owners.len() != 2 {
                issues.push(PseudoManifold, format!("ridge {ridge:?} lies in {} maximal cones", owners.len()));
            }
        }
    }
    checks.push("pseudo-manifold");

    // connectivity of the facet adjacency graph
    let k = fan.maximal_cones.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for owners in ridges.values() {
        for w in owners.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    let roots: HashSet<usize> = (0..k).map(|x| find(&mut parent, x)).collect();
    if roots.len() > 1 {
        issues.push(Disconnected, format!("facet adjacency graph has {} components", roots.len()));
    }
    checks.push("connected");

    let complex = complex_from_fan(fan);
    let f = f_vector(&complex);
    let euler: i64 = f
        .counts
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 1 { c as i64 } else { -(c as i64) })
        .sum();
    let sphere = if d % 2 == 1 { 1 } else { -1 };
    if euler != sphere {
        issues.push(
            EulerCharacteristic,
            format!("reduced Euler characteristic {euler}, a {}-sphere has {sphere}", d as i64 - 1),
        );
    }
    checks.push("Euler characteristic");

    let mut warnings = Vec::new();
    let mut achieved = ValidationLevel::Basic;
    if level == ValidationLevel::Geometric {
        if d <= GEOMETRIC_MAX_DIM {
            if issues.0.is_empty() {
                if let Some((a, b)) = first_overlap(fan) {
                    issues.push(Overlap, format!("interiors of cones {a} and {b} intersect"));
                }
                checks.push("non-overlapping cones");
                achieved = ValidationLevel::Geometric;
            }
        } else {
            warnings.push(format!("overlap test needs dimension at most {GEOMETRIC_MAX_DIM}; validated at basic level"));
        }
    }

    if !issues.0.is_empty() {
        return Err(FanError::FanInvalid(issues.0));
    }

    let h = h_polynomial(&f, d);
    let coeffs = h.truncated(d + 1);
    if coeffs.iter().ne(coeffs.iter().rev()) {
        warnings.push(format!("h-vector {h} is not symmetric"));
    }

    Ok(ValidationReport { requested: level, achieved, checks, warnings })
}

/// Finds two maximal cones whose interiors meet. Any nonzero separating
/// normal can be chosen orthogonal to `d - 1` independent rays of the two
/// cones, so it suffices to try those candidates.
fn first_overlap(fan: &Fan) -> Option<(usize, usize)> {
    let d = fan.dim;
    if d == 0 {
        return None;
    }
    let cones = &fan.maximal_cones;
    for a in 0..cones.len() {
        for b in a + 1..cones.len() {
            let pool: Vec<&IntVector> = cones[a].iter().chain(&cones[b]).map(|&i| &fan.rays[i]).collect();
            if !separable(&pool[..d], &pool[d..], &pool, d) {
                return Some((a, b));
            }
        }
    }
    None
}

fn separable(left: &[&IntVector], right: &[&IntVector], pool: &[&IntVector], d: usize) -> bool {
    let mut chosen = Vec::with_capacity(d - 1);
    try_subsets(pool, d - 1, 0, &mut chosen, &mut |vs| {
        let w = normal_vector(vs, d);
        if w.iter().all(Zero::is_zero) {
            return false;
        }
        let sides = |set: &[&IntVector], sign: i8| {
            set.iter().all(|r| {
                let s = dot(&w, r);
                if sign > 0 { !s.is_negative() } else { !s.is_positive() }
            })
        };
        (sides(left, 1) && sides(right, -1)) || (sides(left, -1) && sides(right, 1))
    })
}

fn try_subsets(
    pool: &[&IntVector],
    k: usize,
    start: usize,
    chosen: &mut Vec<IntVector>,
    test: &mut dyn FnMut(&[IntVector]) -> bool,
) -> bool {
    if chosen.len() == k {
        return test(chosen);
    }
    for i in start..pool.len() {
        chosen.push(pool[i].clone());
        if try_subsets(pool, k, i + 1, chosen, test) {
            return true;
        }
        chosen.pop();
    }
    false
}
