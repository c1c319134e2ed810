//! Identities relating `Q_{c^l}` to the cyclotomic factorization
//! `Q_c = Π_k Φ_k^{a_k}`, and the character of `G` to the character of the
//! quotient `G / ⟨c^l⟩` acting on the fixed fan of `c^l`.
//!
//! Throughout, `M(p, N)` is the `p`-adic valuation and `d(N, m)` is
//! `deg Φ_N / deg Φ_m`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::gcd;
use num_traits::pow;

use super::{character_data, CharacterData, CharacterError, CharacterTable};
use crate::action::{restrict_to_fixed, GroupAction, Restriction};
use crate::exactalg::arith::prime_divisors;
use crate::exactalg::{cyclotomic, degree_ratio, divisors, p_adic_valuation, CyclotomicFactorization, IntPolynomial};
use crate::fan::{facet_count, Fan};

fn a(cyclo: &CyclotomicFactorization, k: u64) -> u64 {
    u64::from(cyclo.exponent(k))
}

/// `Π_{k | n, k ∤ l} Φ_{k/(k,j)}^{a_k d(k, k/(k,j))}`.
fn partial_product(cyclo: &CyclotomicFactorization, n: u64, l: u64, j: u64) -> IntPolynomial {
    divisors(n)
        .into_iter()
        .filter(|&k| !l.is_multiple_of(k) && cyclo.exponent(k) > 0)
        .map(|k| {
            let target = k / gcd(k, j);
            cyclotomic(target).pow(a(cyclo, k) * degree_ratio(k, target))
        })
        .product()
}

/// `Π_{k | n, k ∤ l} Φ_{k/(k,l)}^{a_k d(k, k/(k,l))}`, which equals `Q_{c^l}`
/// when `cyclo` factors `Q_c`.
pub fn q_power_from_base(cyclo: &CyclotomicFactorization, n: u64, l: u64) -> IntPolynomial {
    partial_product(cyclo, n, l, l)
}

/// `b(p, l, n)`, the exponent of `p` in `Q_{c^l}(1)`.
pub fn b_exponent(p: u64, l: u64, n: u64, cyclo: &CyclotomicFactorization) -> u64 {
    let (ml, mn) = (p_adic_valuation(p, l), p_adic_valuation(p, n));
    if ml == mn {
        return 0;
    }
    let rest = l / p.pow(ml);
    (ml + 1..=mn)
        .flat_map(|i| divisors(rest).into_iter().map(move |s| (i, s)))
        .map(|(i, s)| {
            let k = p.pow(i) * s;
            if !n.is_multiple_of(k) {
                return 0;
            }
            a(cyclo, k) * degree_ratio(k, p.pow(i - ml))
        })
        .sum()
}

/// `b^l(p, j, n)`: exponent of `p` in `C^l(j)`, for `j | l | n`.
///
/// Writing `j = p^r k` with `p ∤ k` and `M = M(p, l)`, the `r > 0` terms are
/// `(p - 1) a_{p^i k} d(p^i k, p^{i-r+1})`. These are what make
/// `Σ_{j' | j} b^l(p, j', n) = b(p, j, n) - b(p, j, l)` telescope.
pub fn b_quotient_exponent(p: u64, j: u64, l: u64, n: u64, cyclo: &CyclotomicFactorization) -> u64 {
    let (m, mn) = (p_adic_valuation(p, l), p_adic_valuation(p, n));
    if m == mn {
        return 0;
    }
    let r = p_adic_valuation(p, j);
    let k = j / p.pow(r);
    (m + 1..=mn)
        .map(|i| {
            let pi = p.pow(i);
            if r == 0 {
                let idx = pi * j;
                if !n.is_multiple_of(idx) {
                    return 0;
                }
                a(cyclo, idx) * degree_ratio(idx, pi)
            } else {
                let idx = pi * k;
                if !n.is_multiple_of(idx) {
                    return 0;
                }
                (p - 1) * a(cyclo, idx) * degree_ratio(idx, p.pow(i - r + 1))
            }
        })
        .sum()
}

/// `C^l(j) = Π_p p^{b^l(p, j, n)}`.
pub fn c_factor(j: u64, l: u64, n: u64, cyclo: &CyclotomicFactorization) -> BigInt {
    prime_divisors(n)
        .into_iter()
        .map(|p| pow(BigInt::from(p), b_quotient_exponent(p, j, l, n, cyclo) as usize))
        .product()
}

fn prime_product(n: u64, exponent: impl Fn(u64) -> u64) -> BigInt {
    prime_divisors(n).into_iter().map(|p| pow(BigInt::from(p), exponent(p) as usize)).product()
}

/// Character data of `G/⟨c^l⟩` acting on the fixed fan of `c^l`, at every
/// `c̄^j` with `j | l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCharacter {
    pub divisor: u64,
    pub restriction: Restriction,
    pub entries: BTreeMap<u64, CharacterData>,
}

pub fn quotient_character(fan: &Fan, action: &GroupAction, l: u64) -> Result<QuotientCharacter, CharacterError> {
    let restriction = restrict_to_fixed(fan, action, l)?;
    let entries = divisors(l)
        .into_iter()
        .map(|j| Ok((j, character_data(&restriction.fan, &restriction.action, j)?)))
        .collect::<Result<_, CharacterError>>()?;
    Ok(QuotientCharacter { divisor: l, restriction, entries })
}

/// Outcome of the quotient identities for one pair `j | l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCheck {
    pub l: u64,
    pub j: u64,
    /// `χ[q](c^j) = χ^l[q](c̄^j) · Π_{k | n, k ∤ l} Φ_{k/(k,j)}^{a_k d(k, k/(k,j))}`.
    pub graded: bool,
    /// `χ^l[q](c̄^j) = P_{Δ^{c^j}} · Π_{k | l, k ∤ j} Φ_{k/(k,j)}^{a_k d(k, k/(k,j))}` and
    /// `χ_u^l(c̄^j) = |Δ^{c^j}| · Π_p p^{b(p,j,l)}`.
    pub quotient_formula: bool,
    /// `χ_u(c^j) = χ_u^l(c̄^j) · Π_p p^{b(p,j,n) - b(p,j,l)}`.
    pub valuation: bool,
    /// `χ_u(c^j) = χ_u^l(c̄^j) · Π_{a | j} C^l(a)`.
    pub ungraded: bool,
    pub c_product: BigInt,
}

impl QuotientCheck {
    pub fn passed(&self) -> bool {
        self.graded && self.quotient_formula && self.valuation && self.ungraded
    }
}

pub fn cross_check_quotient(
    fan: &Fan,
    action: &GroupAction,
    table: &CharacterTable,
    l: u64,
) -> Result<Vec<QuotientCheck>, CharacterError> {
    let n = table.order;
    let cyclo = table.base_factorization();
    let quotient = quotient_character(fan, action, l)?;
    let checks = divisors(l)
        .into_iter()
        .map(|j| {
            let full = &table.entries[&j];
            let part = &quotient.entries[&j];

            let graded = full.graded == &part.graded * &partial_product(cyclo, n, l, j);
            let facets = BigInt::from(facet_count(&full.fixed.complex));
            let quotient_formula = part.graded == &full.h_poly * &partial_product(cyclo, l, j, j)
                && part.ungraded == &facets * prime_product(n, |p| b_exponent(p, j, l, cyclo));

            let diffs: Option<Vec<u64>> = prime_divisors(n)
                .into_iter()
                .map(|p| b_exponent(p, j, n, cyclo).checked_sub(b_exponent(p, j, l, cyclo)))
                .collect();
            let valuation = diffs.is_some_and(|diffs| {
                let factor: BigInt =
                    prime_divisors(n).into_iter().zip(diffs).map(|(p, e)| pow(BigInt::from(p), e as usize)).product();
                full.ungraded == &part.ungraded * factor
            });

            let c_product: BigInt = divisors(j).into_iter().map(|d| c_factor(d, l, n, cyclo)).product();
            let ungraded = full.ungraded == &part.ungraded * &c_product;
            QuotientCheck { l, j, graded, quotient_formula, valuation, ungraded, c_product }
        })
        .collect();
    Ok(checks)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossCheckReport {
    /// `q_power_from_base(Q_c, n, l) == Q_{c^l}` per divisor.
    pub q_formula: BTreeMap<u64, bool>,
    /// `Q_{c^l}(1) == Π_p p^{b(p,l,n)}` per divisor.
    pub valuation: BTreeMap<u64, bool>,
    pub quotient: Vec<QuotientCheck>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.q_formula.values().all(|&b| b)
            && self.valuation.values().all(|&b| b)
            && self.quotient.iter().all(QuotientCheck::passed)
    }
}

pub fn cross_check_all(fan: &Fan, action: &GroupAction, table: &CharacterTable) -> Result<CrossCheckReport, CharacterError> {
    let n = table.order;
    let cyclo = table.base_factorization();
    let mut report = CrossCheckReport::default();
    for (&l, entry) in &table.entries {
        report.q_formula.insert(l, q_power_from_base(cyclo, n, l) == entry.q_poly);
        let product = prime_product(n, |p| b_exponent(p, l, n, cyclo));
        report.valuation.insert(l, entry.q_poly.eval_at_one() == product);
        report.quotient.extend(cross_check_quotient(fan, action, table, l)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::validate_action;
    use crate::character::character_table;
    use crate::exactalg::IntMatrix;

    fn cyc(n: u64, pairs: &[(u64, u32)]) -> CyclotomicFactorization {
        CyclotomicFactorization { order: n, exponents: pairs.iter().copied().collect() }
    }

    fn instance(rays: &[&[i64]], cones: &[&[usize]], gen: &[&[i64]]) -> (Fan, GroupAction) {
        let fan = Fan::from_i64(2, rays, cones);
        let action = validate_action(&fan, &IntMatrix::from_i64_rows(gen), 1000).unwrap();
        (fan, action)
    }

    fn lines(gen: &[&[i64]]) -> (Fan, GroupAction) {
        instance(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]], &[&[0, 2], &[0, 3], &[1, 2], &[1, 3]], gen)
    }

    fn hexagon() -> (Fan, GroupAction) {
        instance(
            &[&[1, 0], &[1, 1], &[0, 1], &[-1, 0], &[-1, -1], &[0, -1]],
            &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 0]],
            &[&[1, -1], &[1, 0]],
        )
    }

    /// The `r > 0` branch with `d(p^i k, p^{i-r-1})` in place of `p^{i-r+1}`.
    fn b_quotient_misprinted(p: u64, j: u64, l: u64, n: u64, cyclo: &CyclotomicFactorization) -> u64 {
        let (m, mn) = (p_adic_valuation(p, l), p_adic_valuation(p, n));
        let r = p_adic_valuation(p, j);
        if m == mn || r == 0 {
            return b_quotient_exponent(p, j, l, n, cyclo);
        }
        let k = j / p.pow(r);
        (m + 1..=mn)
            .map(|i| {
                let idx = p.pow(i) * k;
                if !n.is_multiple_of(idx) {
                    return 0;
                }
                (p - 1) * a(cyclo, idx) * degree_ratio(idx, p.pow(i - r - 1))
            })
            .sum()
    }

    #[test]
    fn q_power_examples() {
        let f4 = cyc(4, &[(4, 1)]);
        assert_eq!(q_power_from_base(&f4, 4, 2), IntPolynomial::from_i64(&[1, 2, 1]));
        assert_eq!(q_power_from_base(&f4, 4, 4), IntPolynomial::one());
        let f6 = cyc(6, &[(6, 1)]);
        assert_eq!(q_power_from_base(&f6, 6, 3), IntPolynomial::from_i64(&[1, 2, 1]));
        assert_eq!(q_power_from_base(&f6, 6, 1), cyclotomic(6));
    }

    #[test]
    fn b_exponent_examples() {
        assert_eq!(b_exponent(2, 2, 4, &cyc(4, &[(4, 1)])), 2);
        assert_eq!(b_exponent(2, 3, 6, &cyc(6, &[(6, 1)])), 2);
        assert_eq!(b_exponent(3, 3, 6, &cyc(6, &[(6, 1)])), 0);
        assert_eq!(b_exponent(3, 2, 6, &cyc(6, &[(6, 1)])), 1);
    }

    #[test]
    fn c_factor_hexagon() {
        let f6 = cyc(6, &[(6, 1)]);
        assert_eq!(c_factor(1, 2, 6, &f6), BigInt::from(1));
        assert_eq!(c_factor(2, 2, 6, &f6), BigInt::from(3));
    }

    #[test]
    fn misprinted_branch_breaks_the_rotation_identity() {
        let f4 = cyc(4, &[(4, 1)]);
        let good: u64 = [1, 2].iter().map(|&a| b_quotient_exponent(2, a, 2, 4, &f4)).sum();
        let bad: u64 = [1, 2].iter().map(|&a| b_quotient_misprinted(2, a, 2, 4, &f4)).sum();
        // χ_u(c^2) = 4 and the quotient is a point, so the exponents must sum to 2.
        assert_eq!(good, 2);
        assert_eq!(bad, 3);
    }

    #[test]
    fn quotient_examples() {
        let (fan, a) = lines(&[&[0, -1], &[1, 0]]);
        let q = quotient_character(&fan, &a, 2).unwrap();
        assert!(q.restriction.is_degenerate());
        assert!(q.entries.values().all(|e| e.graded.is_one()));

        let (fan, a) = lines(&[&[1, 0], &[0, -1]]);
        let q = quotient_character(&fan, &a, 1).unwrap();
        assert_eq!(q.restriction.fan.dim, 1);
        assert_eq!(q.restriction.action.order, 1);
        assert_eq!(q.entries[&1].graded, IntPolynomial::from_i64(&[1, 1]));

        let q = quotient_character(&fan, &a, 2).unwrap();
        assert_eq!(q.restriction.fan, fan);
    }

    #[test]
    fn cross_checks_pass_on_small_instances() {
        for (fan, a) in [lines(&[&[0, -1], &[1, 0]]), lines(&[&[1, 0], &[0, -1]]), hexagon()] {
            let t = character_table(&fan, &a).unwrap();
            let report = cross_check_all(&fan, &a, &t).unwrap();
            assert!(report.passed(), "{report:?}");
        }
        let (fan, a) = hexagon();
        let t = character_table(&fan, &a).unwrap();
        let checks = cross_check_quotient(&fan, &a, &t, 2).unwrap();
        assert_eq!(checks.iter().map(|c| c.c_product.clone()).collect::<Vec<_>>(), [1, 3].map(BigInt::from).to_vec());
    }
}
