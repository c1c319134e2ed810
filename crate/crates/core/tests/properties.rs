use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

use cyclofan::character::{
    character_table, decompose, f_inverse, f_transform, graded_decomposition, sr_series, DivisorCharacter,
};
use cyclofan::corpus;
use cyclofan::exactalg::matrix::{content, integer_kernel_basis};
use cyclofan::exactalg::{char_poly_one_minus_qg, divisors, moebius_nt, IntMatrix, IntPolynomial};
use cyclofan::validate_action;

fn poly_strategy(max_len: usize) -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-20i64..=20, 0..max_len).prop_map(|c| IntPolynomial::from_i64(&c))
}

fn matrix_strategy(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-bound..=bound, cols), rows).prop_map(|rows| {
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        IntMatrix::from_i64_rows(&refs)
    })
}

/// `det(1 - qG)` by cofactor expansion over polynomial entries.
fn det_oracle(entries: &[Vec<IntPolynomial>]) -> IntPolynomial {
    let n = entries.len();
    if n == 0 {
        return IntPolynomial::one();
    }
    let mut acc = IntPolynomial::zero();
    for (col, top) in entries[0].iter().enumerate() {
        let minor: Vec<Vec<IntPolynomial>> = entries[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != col).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = top * &det_oracle(&minor);
        acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn one_minus_qg(g: &IntMatrix) -> Vec<Vec<IntPolynomial>> {
    (0..g.rows())
        .map(|i| {
            (0..g.cols())
                .map(|j| {
                    let delta = if i == j { BigInt::one() } else { BigInt::zero() };
                    IntPolynomial::new(vec![delta, -g[(i, j)].clone()])
                })
                .collect()
        })
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn exact_division_inverts_multiplication(a in poly_strategy(8), b in poly_strategy(6)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn char_poly_matches_cofactor_expansion(g in (1usize..=4).prop_flat_map(|d| matrix_strategy(d, d, 4))) {
        prop_assert_eq!(char_poly_one_minus_qg(&g), det_oracle(&one_minus_qg(&g)));
    }

    #[test]
    fn kernel_basis_is_saturated(m in (1usize..=3, 2usize..=5).prop_flat_map(|(r, c)| matrix_strategy(r, c, 5))) {
        let basis = integer_kernel_basis(&m);
        prop_assert_eq!(basis.len(), m.cols() - m.rank());
        for v in &basis {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        if !basis.is_empty() {
            let b = IntMatrix::from_columns(m.cols(), &basis);
            let k = basis.len();
            let g = combinations(m.cols(), k).into_iter().fold(BigInt::zero(), |g, rows| {
                let sub: Vec<Vec<BigInt>> = rows.iter().map(|&r| b.row(r).to_vec()).collect();
                g.gcd(&IntMatrix::from_rows(sub).det())
            });
            prop_assert_eq!(g, BigInt::one());
        }
    }

    #[test]
    fn moebius_is_multiplicative(a in 1u64..200, b in 1u64..200) {
        prop_assume!(a.gcd(&b) == 1);
        prop_assert_eq!(moebius_nt(a * b), moebius_nt(a) * moebius_nt(b));
    }

    #[test]
    fn f_transform_round_trip(n in 1u64..=120, seed in prop::collection::vec(-50i64..=50, 16)) {
        let chi = DivisorCharacter::from_fn(n, |j| BigInt::from(seed[(j % 16) as usize] * j as i64));
        prop_assert_eq!(f_inverse(&f_transform(&chi), n), chi);
    }
}

#[test]
fn content_of_zero_vector_is_zero() {
    assert!(content(&[BigInt::zero(), BigInt::zero()]).is_zero());
}

#[test]
fn corpus_invariants() {
    for inst in corpus::generated_corpus() {
        let action = validate_action(&inst.fan, &inst.generator, 10_000).unwrap();
        let t = character_table(&inst.fan, &action).unwrap();
        let d = inst.fan.dim;
        let chi = t.ungraded();
        assert!(decompose(&chi).reconstructs(&chi), "{}", inst.name);
        assert_eq!(chi.value(t.order), &BigInt::from(inst.fan.maximal_cones.len()), "{}", inst.name);

        for (&j, e) in &t.entries {
            assert_eq!(e.graded.degree(), Some(d), "{}: degree at c^{j}", inst.name);
            assert!(e.graded.coeff(0).is_one(), "{}: constant term at c^{j}", inst.name);
            assert_eq!(e.graded.eval_at_one(), e.ungraded, "{}", inst.name);

            let n_terms = d + 3;
            let series = sr_series(&inst.fan, &action, j, n_terms);
            assert!(series.iter().all(|c| *c >= BigInt::zero()), "{}: negative series at c^{j}", inst.name);
            let product = &IntPolynomial::new(series) * &e.det_poly;
            assert_eq!(product.truncated(n_terms + 1), e.graded.truncated(n_terms + 1), "{}: series at c^{j}", inst.name);
        }

        let g = graded_decomposition(&t);
        for deg in &g.degrees {
            assert!(deg.decomposition.reconstructs(&deg.character), "{}", inst.name);
        }
        if cyclofan::exactalg::arith::prime_power(t.order).is_some() {
            assert!(g.all_permutation(), "{}: graded verdict for prime power order", inst.name);
        }
        let total: DivisorCharacter = DivisorCharacter::from_fn(t.order, |j| {
            g.degrees.iter().map(|deg| deg.character.value(j).clone()).sum()
        });
        assert_eq!(total, chi, "{}", inst.name);
    }
}

#[test]
fn divisors_are_sorted_and_complete() {
    for n in 1..=300u64 {
        let ds = divisors(n);
        assert!(ds.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(ds, (1..=n).filter(|d| n % d == 0).collect::<Vec<_>>());
    }
}
