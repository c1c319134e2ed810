//! Named example instances and a generated family of valid ones: planar fans
//! built from orbits of a rotation, cross-polytope fans with signed
//! permutations, projective spaces, and products of these.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::action::validate_action;
use crate::exactalg::IntMatrix;
use crate::fan::{validate_fan, Fan, ValidationLevel};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub fan: Fan,
    pub generator: IntMatrix,
}

impl Instance {
    fn new(name: impl Into<String>, fan: Fan, generator: IntMatrix) -> Self {
        Instance { name: name.into(), fan, generator }
    }

    fn is_valid(&self) -> bool {
        validate_fan(&self.fan, ValidationLevel::Basic).is_ok()
            && validate_action(&self.fan, &self.generator, 10_000).is_ok()
    }
}

pub fn projective_plane() -> Instance {
    Instance::new(
        "projective-plane",
        Fan::from_i64(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]]),
        IntMatrix::from_i64_rows(&[&[0, -1], &[1, -1]]),
    )
}

fn product_of_lines() -> Fan {
    Fan::from_i64(2, &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]])
}

pub fn product_of_lines_rotation() -> Instance {
    Instance::new("product-of-lines-rotation", product_of_lines(), IntMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]))
}

pub fn product_of_lines_reflection() -> Instance {
    Instance::new("product-of-lines-reflection", product_of_lines(), IntMatrix::from_i64_rows(&[&[1, 0], &[0, -1]]))
}

pub fn hexagon() -> Instance {
    Instance::new(
        "hexagon",
        Fan::from_i64(
            2,
            &[&[1, 0], &[1, 1], &[0, 1], &[-1, 0], &[-1, -1], &[0, -1]],
            &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[0, 5]],
        ),
        IntMatrix::from_i64_rows(&[&[1, -1], &[1, 0]]),
    )
}

fn angle_cmp(a: &[i64; 2], b: &[i64; 2]) -> Ordering {
    let half = |v: &[i64; 2]| u8::from(!(v[1] > 0 || (v[1] == 0 && v[0] > 0)));
    half(a).cmp(&half(b)).then_with(|| (b[0] * a[1]).cmp(&(a[0] * b[1])))
}

fn apply2(g: &[[i64; 2]; 2], v: [i64; 2]) -> [i64; 2] {
    [g[0][0] * v[0] + g[0][1] * v[1], g[1][0] * v[0] + g[1][1] * v[1]]
}

/// Planar fan whose rays are the orbits of `seeds` under `g` plus `extra`,
/// with cones between angularly consecutive rays.
fn planar(name: &str, g: [[i64; 2]; 2], seeds: &[[i64; 2]], extra: &[[i64; 2]]) -> Instance {
    let mut rays: BTreeSet<[i64; 2]> = extra.iter().copied().collect();
    for &s in seeds {
        let mut v = s;
        while rays.insert(v) {
            v = apply2(&g, v);
        }
    }
    let mut rays: Vec<[i64; 2]> = rays.into_iter().collect();
    rays.sort_by(angle_cmp);
    let k = rays.len();
    let ray_refs: Vec<&[i64]> = rays.iter().map(|r| r.as_slice()).collect();
    let cones: Vec<Vec<usize>> = (0..k).map(|i| vec![i, (i + 1) % k]).collect();
    let cone_refs: Vec<&[usize]> = cones.iter().map(Vec::as_slice).collect();
    let rows: Vec<&[i64]> = g.iter().map(|r| r.as_slice()).collect();
    Instance::new(name, Fan::from_i64(2, &ray_refs, &cone_refs), IntMatrix::from_i64_rows(&rows))
}

/// Fan of `P^{p-1}` with the companion matrix of `Φ_p` permuting its rays.
pub fn projective_space(p: usize) -> Instance {
    let d = p - 1;
    let mut rays: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|k| i64::from(k == i)).collect()).collect();
    rays.push(vec![-1; d]);
    let cones: Vec<Vec<usize>> = (0..p).map(|skip| (0..p).filter(|&i| i != skip).collect()).collect();
    let mut gen = vec![vec![0i64; d]; d];
    for i in 0..d {
        if i + 1 < d {
            gen[i + 1][i] = 1;
        }
        gen[i][d - 1] = -1;
    }
    let ray_refs: Vec<&[i64]> = rays.iter().map(Vec::as_slice).collect();
    let cone_refs: Vec<&[usize]> = cones.iter().map(Vec::as_slice).collect();
    let rows: Vec<&[i64]> = gen.iter().map(Vec::as_slice).collect();
    Instance::new(format!("projective-space-{d}"), Fan::from_i64(d, &ray_refs, &cone_refs), IntMatrix::from_i64_rows(&rows))
}

/// Rays `±e_i` (ray `2i` is `e_i`, ray `2i+1` is `-e_i`) and one cone per sign pattern.
pub fn cross_polytope(d: usize) -> Fan {
    let mut rays = Vec::new();
    for i in 0..d {
        for s in [1i64, -1] {
            rays.push((0..d).map(|k| if k == i { s } else { 0 }).collect::<Vec<_>>());
        }
    }
    let cones: Vec<Vec<usize>> = (0..1usize << d).map(|mask| (0..d).map(|i| 2 * i + ((mask >> i) & 1)).collect()).collect();
    let ray_refs: Vec<&[i64]> = rays.iter().map(Vec::as_slice).collect();
    let cone_refs: Vec<&[usize]> = cones.iter().map(Vec::as_slice).collect();
    Fan::from_i64(d, &ray_refs, &cone_refs)
}

fn signed_permutation(perm: &[usize], signs: &[i64]) -> IntMatrix {
    let d = perm.len();
    let mut rows = vec![vec![0i64; d]; d];
    for (i, (&p, &s)) in perm.iter().zip(signs).enumerate() {
        rows[p][i] = s;
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntMatrix::from_i64_rows(&refs)
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(d - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, d - 1);
            out.push(q);
        }
    }
    out
}

/// Every signed permutation of `Z^3` acting properly on the octahedral fan.
pub fn cross_polytope_3d_instances() -> Vec<Instance> {
    let fan = cross_polytope(3);
    let mut out = Vec::new();
    for perm in permutations(3) {
        for mask in 0..8u32 {
            let signs: Vec<i64> = (0..3).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
            let g = signed_permutation(&perm, &signs);
            if g.is_identity() {
                continue;
            }
            let inst = Instance::new(format!("octahedral-{perm:?}-{mask}"), fan.clone(), g);
            if inst.is_valid() {
                out.push(inst);
            }
        }
    }
    out
}

/// `e_1 -> e_2 -> e_3 -> e_4 -> -e_1`, of order 8.
pub fn cross_polytope_4d_cycle() -> Instance {
    Instance::new("cross-polytope-4-signed-cycle", cross_polytope(4), signed_permutation(&[1, 2, 3, 0], &[1, 1, 1, -1]))
}

/// The complete fan of `P^1` with `x -> -x`.
pub fn line_flip() -> Instance {
    Instance::new("line-flip", Fan::from_i64(1, &[&[1], &[-1]], &[&[0], &[1]]), IntMatrix::from_i64_rows(&[&[-1]]))
}

/// Product fan with the block-diagonal generator.
pub fn product(a: &Instance, b: &Instance) -> Instance {
    let (da, db) = (a.fan.dim, b.fan.dim);
    let zero = num_bigint::BigInt::from(0);
    let mut rays = Vec::new();
    for r in &a.fan.rays {
        rays.push(r.iter().cloned().chain(std::iter::repeat_n(zero.clone(), db)).collect());
    }
    for r in &b.fan.rays {
        rays.push(std::iter::repeat_n(zero.clone(), da).chain(r.iter().cloned()).collect());
    }
    let offset = a.fan.rays.len();
    let mut cones = Vec::new();
    for ca in &a.fan.maximal_cones {
        for cb in &b.fan.maximal_cones {
            cones.push(ca.iter().copied().chain(cb.iter().map(|i| i + offset)).collect());
        }
    }
    let d = da + db;
    let rows = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| match (i < da, j < da) {
                    (true, true) => a.generator[(i, j)].clone(),
                    (false, false) => b.generator[(i - da, j - da)].clone(),
                    _ => zero.clone(),
                })
                .collect()
        })
        .collect();
    Instance::new(format!("{} x {}", a.name, b.name), Fan::new(d, rays, cones), IntMatrix::from_rows(rows))
}

const PLANAR_GENERATORS: [(&str, [[i64; 2]; 2]); 9] = [
    ("order3-a", [[0, -1], [1, -1]]),
    ("order3-b", [[-1, -1], [1, 0]]),
    ("order3-c", [[1, -3], [1, -2]]),
    ("order4-a", [[0, -1], [1, 0]]),
    ("order4-b", [[1, -2], [1, -1]]),
    ("order4-c", [[2, -5], [1, -2]]),
    ("order6-a", [[1, -1], [1, 0]]),
    ("order6-b", [[2, -3], [1, -1]]),
    ("order2", [[-1, 0], [0, -1]]),
];

const SEEDS: [&[[i64; 2]]; 6] = [
    &[[1, 0]],
    &[[1, 0], [0, 1]],
    &[[2, 1]],
    &[[1, 0], [1, 1]],
    &[[1, 2], [3, 1]],
    &[[1, 0], [2, 1], [1, 1]],
];

/// Valid planar instances with rotations of order 2, 3, 4 and 6 and two reflections.
pub fn planar_instances() -> Vec<Instance> {
    let mut out: Vec<Instance> = Vec::new();
    for (name, g) in PLANAR_GENERATORS {
        for (s, seeds) in SEEDS.iter().enumerate() {
            let inst = planar(&format!("planar-{name}-seed{s}"), g, seeds, &[]);
            if inst.is_valid() && !out.iter().any(|o| o.fan == inst.fan && o.generator == inst.generator) {
                out.push(inst);
            }
        }
    }
    out.push(planar("planar-reflection-axis", [[1, 0], [0, -1]], &[[1, 1], [-1, 1]], &[[1, 0], [-1, 0]]));
    out.push(planar("planar-reflection-diagonal", [[0, 1], [1, 0]], &[[1, 0], [-1, 0]], &[[1, 1], [-1, -1]]));
    out
}

/// The generated family: at least 50 valid instances of orders 2 through 12
/// (except 9 and 11) in dimensions 2 through 6.
pub fn generated_corpus() -> Vec<Instance> {
    let planar = planar_instances();
    let mut out = planar.clone();
    out.extend(cross_polytope_3d_instances());
    out.extend([3, 5, 7].map(projective_space));
    out.push(cross_polytope_4d_cycle());

    let pick = |prefix: &str| planar.iter().find(|i| i.name.starts_with(prefix)).unwrap().clone();
    let (o2, o3, o4, o6) = (pick("planar-order2"), pick("planar-order3"), pick("planar-order4"), pick("planar-order6"));
    let line = line_flip();
    out.push(product(&o3, &line));
    out.push(product(&o4, &line));
    out.push(product(&o6, &line));
    out.push(product(&o3, &o4));
    out.push(product(&o4, &o6));
    out.push(product(&o2, &o3));
    out.push(product(&projective_space(5), &line));
    out.push(product(&projective_plane(), &product_of_lines_rotation()));
    out.retain(Instance::is_valid);
    out
}
