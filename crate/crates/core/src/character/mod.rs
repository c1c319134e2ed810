//! Graded and ungraded characters of `G = ⟨c⟩` on the cohomology of the toric
//! variety, computed per divisor `j | n` from the fixed subcomplex of `c^j`:
//!
//! ```text
//! χ[q](c^j) = P_{Δ^{c^j}}(q) · Q_{c^j}(q),    Q_g(q) = det(1 - q g) / (1 - q)^{δ(g)}
//! χ_u(c^j)  = |facets of Δ^{c^j}| · Q_{c^j}(1)
//! ```
//!
//! A character of a cyclic group with rational values is constant on the
//! generators of each subgroup, so it is stored as one value per divisor.

mod decompose;
mod identities;
mod poset;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::action::{fixed_subcomplex, ActionError, FixedData, GroupAction};
use crate::exactalg::{
    char_poly_one_minus_qg, divisors, factor_into_cyclotomics, AlgebraError, CyclotomicFactorization,
    IntPolynomial,
};
use crate::fan::{f_vector, facet_count, h_polynomial, FVector, Fan};

pub use decompose::{
    decompose, decompose_graded, f_inverse, f_transform, graded_decomposition, induced_character,
    prime_power_check, prime_power_verdict, subgroup_label, subgroup_moebius, DegreeDecomposition, Decomposition,
    GradedDecomposition, PrimePowerReport, Verdict,
};
pub use identities::{
    b_exponent, b_quotient_exponent, c_factor, cross_check_all, cross_check_quotient, q_power_from_base,
    quotient_character, CrossCheckReport, QuotientCharacter, QuotientCheck,
};
pub use poset::{poset_weighted_check, PosetCheck};
pub use crate::exactalg::p_adic_valuation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharacterError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("group order {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("poset has no {0} element")]
    UnboundedPoset(&'static str),
    #[error("character values are missing divisor {0}")]
    MissingDivisor(u64),
}

/// An integer-valued class function on `G = Z_n`, stored as `j ↦ χ(c^j)` for
/// each divisor `j` of `n` (with `c^n = 1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorCharacter {
    pub order: u64,
    pub values: BTreeMap<u64, BigInt>,
}

impl DivisorCharacter {
    pub fn new(order: u64, values: BTreeMap<u64, BigInt>) -> Self {
        DivisorCharacter { order, values }
    }

    pub fn from_fn(order: u64, mut f: impl FnMut(u64) -> BigInt) -> Self {
        DivisorCharacter { order, values: divisors(order).into_iter().map(|j| (j, f(j))).collect() }
    }

    pub fn value(&self, j: u64) -> &BigInt {
        &self.values[&j]
    }

    /// Value at an arbitrary element `c^e`, `0 <= e < n`.
    pub fn at_element(&self, e: u64) -> &BigInt {
        self.value(num_integer::gcd(e % self.order, self.order))
    }

    /// Values on `1, c, c^2, …, c^{n-1}`.
    pub fn element_values(&self) -> Vec<BigInt> {
        (0..self.order).map(|e| self.at_element(e).clone()).collect()
    }
}

/// Everything computed for one group element `c^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterData {
    pub exponent: u64,
    pub fixed: FixedData,
    pub f_vector: FVector,
    pub h_poly: IntPolynomial,
    /// `det(1 - q c^j)`.
    pub det_poly: IntPolynomial,
    pub q_poly: IntPolynomial,
    pub cyclo: CyclotomicFactorization,
    pub graded: IntPolynomial,
    pub ungraded: BigInt,
}

/// `Q_{c^j}(q) = det(1 - q c^j) / (1 - q)^{δ(c^j)}`, by exact division.
pub fn q_polynomial(action: &GroupAction, j: u64) -> Result<IntPolynomial, AlgebraError> {
    let g = action.element(j);
    let delta = crate::exactalg::fixed_subspace_dimension(&g);
    char_poly_one_minus_qg(&g).exact_div(&IntPolynomial::one_minus_q().pow(delta as u64))
}

/// Full data for `c^j`; `j` may be any non-negative exponent.
pub fn character_data(fan: &Fan, action: &GroupAction, j: u64) -> Result<CharacterData, CharacterError> {
    let fixed = fixed_subcomplex(fan, action, j);
    let fv = f_vector(&fixed.complex);
    let h_poly = h_polynomial(&fv, fixed.delta);
    let g = action.element(j);
    let det_poly = char_poly_one_minus_qg(&g);
    let q_poly = det_poly.exact_div(&IntPolynomial::one_minus_q().pow(fixed.delta as u64))?;
    let cyclo = factor_into_cyclotomics(&q_poly, action.element_order(j))?;
    let graded = &h_poly * &q_poly;
    let ungraded = BigInt::from(facet_count(&fixed.complex)) * q_poly.eval_at_one();
    Ok(CharacterData { exponent: j, fixed, f_vector: fv, h_poly, det_poly, q_poly, cyclo, graded, ungraded })
}

/// `χ[q](c^j) = P_{Δ^{c^j}}(q) · Q_{c^j}(q)`.
pub fn graded_character(fan: &Fan, action: &GroupAction, j: u64) -> Result<IntPolynomial, CharacterError> {
    Ok(character_data(fan, action, j)?.graded)
}

/// Per-divisor character data for the whole group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub order: u64,
    pub dim: usize,
    pub entries: BTreeMap<u64, CharacterData>,
}

impl CharacterTable {
    pub fn ungraded(&self) -> DivisorCharacter {
        DivisorCharacter::new(self.order, self.entries.iter().map(|(&j, e)| (j, e.ungraded.clone())).collect())
    }

    /// The character carried by degree `i`: `c^j ↦ [q^i] χ[q](c^j)`.
    pub fn degree_character(&self, i: usize) -> DivisorCharacter {
        DivisorCharacter::new(self.order, self.entries.iter().map(|(&j, e)| (j, e.graded.coeff(i))).collect())
    }

    /// Factorization of `Q_c`.
    pub fn base_factorization(&self) -> &CyclotomicFactorization {
        &self.entries[&1].cyclo
    }
}

pub fn character_table(fan: &Fan, action: &GroupAction) -> Result<CharacterTable, CharacterError> {
    let entries = divisors(action.order)
        .into_iter()
        .map(|j| Ok((j, character_data(fan, action, j)?)))
        .collect::<Result<_, CharacterError>>()?;
    Ok(CharacterTable { order: action.order, dim: fan.dim, entries })
}

/// `χ_u` as a divisor-indexed value map.
pub fn ungraded_character(fan: &Fan, action: &GroupAction) -> Result<DivisorCharacter, CharacterError> {
    Ok(character_table(fan, action)?.ungraded())
}

/// First `n_terms + 1` coefficients of the graded character of the face ring,
/// `P_{Δ^{c^j}}(q) / (1 - q)^{δ(c^j)}`.
pub fn sr_series(fan: &Fan, action: &GroupAction, j: u64, n_terms: usize) -> Vec<BigInt> {
    let fixed = fixed_subcomplex(fan, action, j);
    let h = h_polynomial(&f_vector(&fixed.complex), fixed.delta);
    let delta = fixed.delta as u64;
    // (1 - q)^{-δ} = Σ_i C(i + δ - 1, δ - 1) q^i
    let mut series = vec![BigInt::zero(); n_terms + 1];
    if delta == 0 {
        series[0] = BigInt::one();
    } else {
        let mut c = BigInt::one();
        for (i, slot) in series.iter_mut().enumerate() {
            *slot = c.clone();
            let i = i as u64;
            c = c * BigInt::from(i + delta) / BigInt::from(i + 1);
        }
    }
    (0..=n_terms)
        .map(|k| (0..=k).map(|i| h.coeff(i) * &series[k - i]).sum())
        .collect()
}
