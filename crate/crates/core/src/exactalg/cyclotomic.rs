//! Cyclotomic polynomials and factorization of reversed characteristic
//! polynomials into them.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use super::arith::{divisors, totient};
use super::{AlgebraError, IntPolynomial};

fn memo() -> &'static Mutex<HashMap<u64, IntPolynomial>> {
    static MEMO: OnceLock<Mutex<HashMap<u64, IntPolynomial>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `l`-th cyclotomic polynomial `Φ_l`, computed as
/// `(q^l - 1) / Π_{d | l, d < l} Φ_d` by exact division.
pub fn cyclotomic(l: u64) -> IntPolynomial {
    assert!(l >= 1, "cyclotomic: index must be positive");
    if let Some(p) = memo().lock().unwrap().get(&l) {
        return p.clone();
    }
    let result = if l == 1 {
        IntPolynomial::from_i64(&[-1, 1])
    } else {
        let mut acc = &IntPolynomial::monomial(l as usize) - &IntPolynomial::one();
        for d in divisors(l) {
            if d < l {
                acc = acc
                    .exact_div(&cyclotomic(d))
                    .expect("q^l - 1 is divisible by every Φ_d with d | l");
            }
        }
        acc
    };
    memo().lock().unwrap().insert(l, result.clone());
    result
}

/// `deg Φ_k / deg Φ_m`. Integral whenever `m | k`.
pub fn degree_ratio(k: u64, m: u64) -> u64 {
    let (dk, dm) = (totient(k), totient(m));
    debug_assert_eq!(dk % dm, 0, "deg Φ_{m} does not divide deg Φ_{k}");
    dk / dm
}

/// A product `Π_l Φ_l^{a_l}` over indices `l >= 2` dividing `order`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CyclotomicFactorization {
    /// Order of the group element whose polynomial was factored.
    pub order: u64,
    /// Nonzero exponents only.
    pub exponents: BTreeMap<u64, u32>,
}

impl CyclotomicFactorization {
    /// Exponent of `Φ_l`, zero when absent.
    pub fn exponent(&self, l: u64) -> u32 {
        self.exponents.get(&l).copied().unwrap_or(0)
    }

    pub fn expand(&self) -> IntPolynomial {
        self.exponents
            .iter()
            .map(|(&l, &a)| cyclotomic(l).pow(u64::from(a)))
            .product()
    }
}

/// Writes `p` (constant term 1) as a product of `Φ_l`, `l | m`, `l >= 2`, by
/// repeated exact trial division.
pub fn factor_into_cyclotomics(
    p: &IntPolynomial,
    m: u64,
) -> Result<CyclotomicFactorization, AlgebraError> {
    let mut rest = p.clone();
    let mut exponents = BTreeMap::new();
    for l in divisors(m).into_iter().filter(|&l| l >= 2) {
        let phi = cyclotomic(l);
        let mut a = 0;
        while rest.degree().unwrap_or(0) >= phi.degree().unwrap_or(0) {
            match rest.try_exact_div(&phi) {
                Some(q) => {
                    rest = q;
                    a += 1;
                }
                None => break,
            }
        }
        if a > 0 {
            exponents.insert(l, a);
        }
    }
    if !rest.is_one() {
        return Err(AlgebraError::NotCyclotomicProduct {
            polynomial: p.to_string(),
            order: m,
            remainder: rest.to_string(),
        });
    }
    Ok(CyclotomicFactorization { order: m, exponents })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(4), p(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi_nine() {
        let phi = cyclotomic(9);
        assert_eq!(phi.eval_at_one(), BigInt::from(3));
        assert_eq!(phi.degree(), Some(6));
    }

    #[test]
    fn phi_105_has_a_coefficient_of_minus_two() {
        assert!(cyclotomic(105).coeffs().iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn factor_examples() {
        let f = factor_into_cyclotomics(&p(&[1, 0, 1]), 4).unwrap();
        assert_eq!(f.exponents, BTreeMap::from([(4, 1)]));
        let f = factor_into_cyclotomics(&p(&[1, 2, 1]), 2).unwrap();
        assert_eq!(f.exponents, BTreeMap::from([(2, 2)]));
        let f = factor_into_cyclotomics(&IntPolynomial::one(), 7).unwrap();
        assert!(f.exponents.is_empty());
        assert_eq!(f.expand(), IntPolynomial::one());
    }

    #[test]
    fn factor_rejects_wrong_order() {
        // Φ_4 is not a product of Φ_2, Φ_3, Φ_6.
        assert!(matches!(
            factor_into_cyclotomics(&p(&[1, 0, 1]), 6),
            Err(AlgebraError::NotCyclotomicProduct { .. })
        ));
        assert!(factor_into_cyclotomics(&p(&[1, 3]), 12).is_err());
    }

    #[test]
    fn degree_ratios() {
        assert_eq!(degree_ratio(4, 2), 2);
        assert_eq!(degree_ratio(6, 2), 2);
        assert_eq!(degree_ratio(12, 3), 2);
        assert_eq!(degree_ratio(8, 1), 4);
    }
}
