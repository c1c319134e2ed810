//! Weighted sums over a finite bounded poset of divisors ordered by
//! divisibility.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::CharacterError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetCheck {
    /// `Σ_p f'(p) · Π_{q <= p} C(q)`.
    pub value: BigInt,
    /// Every upper sum `Σ_{q >= p} f'(q)` is non-negative.
    pub hypothesis_ok: bool,
}

/// If the hypothesis holds and every `C(q)` is a positive integer, `value >= 0`.
/// Missing `fprime` entries count as 0 and missing `cmap` entries as 1.
pub fn poset_weighted_check(
    elements: &[u64],
    fprime: &BTreeMap<u64, BigInt>,
    cmap: &BTreeMap<u64, BigInt>,
) -> Result<PosetCheck, CharacterError> {
    let leq = |a: u64, b: u64| b.is_multiple_of(a);
    if elements.is_empty() {
        return Err(CharacterError::UnboundedPoset("bottom"));
    }
    if !elements.iter().any(|&b| elements.iter().all(|&x| leq(b, x))) {
        return Err(CharacterError::UnboundedPoset("bottom"));
    }
    if !elements.iter().any(|&t| elements.iter().all(|&x| leq(x, t))) {
        return Err(CharacterError::UnboundedPoset("top"));
    }
    let zero = BigInt::zero();
    let f = |p: u64| fprime.get(&p).unwrap_or(&zero);

    let hypothesis_ok = elements.iter().all(|&p| {
        let upper: BigInt = elements.iter().filter(|&&q| leq(p, q)).map(|&q| f(q)).sum();
        !upper.is_negative()
    });
    let value = elements
        .iter()
        .map(|&p| {
            let weight: BigInt = elements
                .iter()
                .filter(|&&q| leq(q, p))
                .map(|q| cmap.get(q).cloned().unwrap_or_else(|| BigInt::from(1)))
                .product();
            f(p) * weight
        })
        .sum();
    Ok(PosetCheck { value, hypothesis_ok })
}
