//! Möbius inversion on the subgroup lattice of `Z_n` (isomorphic to the
//! divisor lattice of `n`) and decomposition into induced trivial characters.
//!
//! With `H_l = ⟨c^l⟩` of index `l`, `F(l) = Σ_{j | l} μ(l/j) χ(c^j)` and
//! `χ = Σ_l (F(l)/l) · ind_{H_l}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{character_table, CharacterError, CharacterTable, DivisorCharacter};
use crate::action::GroupAction;
use crate::exactalg::arith::prime_power;
use crate::exactalg::{divisors, moebius_nt};
use crate::fan::Fan;

/// `ind_{⟨c^l⟩}^G 1` evaluated at each divisor: `l` if `l | j`, else 0.
pub fn induced_character(l: u64, n: u64) -> DivisorCharacter {
    assert!(n.is_multiple_of(l), "induced_character: {l} does not divide {n}");
    DivisorCharacter::from_fn(n, |j| if j % l == 0 { BigInt::from(l) } else { BigInt::zero() })
}

/// `μ(⟨c^l⟩, ⟨c^j⟩)` for `j | l`.
pub fn subgroup_moebius(l: u64, j: u64) -> i64 {
    assert!(l.is_multiple_of(j), "subgroup_moebius: {j} does not divide {l}");
    moebius_nt(l / j)
}

pub fn f_transform(chi: &DivisorCharacter) -> BTreeMap<u64, BigInt> {
    chi.values
        .keys()
        .map(|&l| {
            let f = divisors(l)
                .into_iter()
                .map(|j| BigInt::from(subgroup_moebius(l, j)) * chi.value(j))
                .sum();
            (l, f)
        })
        .collect()
}

/// Inverse of [`f_transform`]: `χ(c^l) = Σ_{j | l} F(j)`.
pub fn f_inverse(f: &BTreeMap<u64, BigInt>, n: u64) -> DivisorCharacter {
    DivisorCharacter::from_fn(n, |l| divisors(l).into_iter().map(|j| &f[&j]).sum())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Permutation,
    /// `witness` is the smallest `l` whose multiplicity is negative or fractional.
    NotPermutation { witness: u64, multiplicity: BigRational },
}

impl Verdict {
    pub fn is_permutation(&self) -> bool {
        matches!(self, Verdict::Permutation)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub order: u64,
    pub f_values: BTreeMap<u64, BigInt>,
    /// Coefficient of `ind_{⟨c^l⟩}` for every `l | n`.
    pub multiplicities: BTreeMap<u64, BigRational>,
    pub verdict: Verdict,
}

impl Decomposition {
    /// `Σ_l m_l · ind_{⟨c^l⟩}` at each divisor; `None` if a value is not integral.
    pub fn reconstruct(&self) -> Option<DivisorCharacter> {
        let mut values = BTreeMap::new();
        for j in divisors(self.order) {
            let v: BigRational = self
                .multiplicities
                .iter()
                .filter(|(&l, _)| j % l == 0)
                .map(|(&l, m)| m * BigRational::from_integer(BigInt::from(l)))
                .sum();
            if !v.is_integer() {
                return None;
            }
            values.insert(j, v.to_integer());
        }
        Some(DivisorCharacter::new(self.order, values))
    }

    pub fn reconstructs(&self, chi: &DivisorCharacter) -> bool {
        self.reconstruct().as_ref() == Some(chi)
    }

    /// Nonzero terms as `(l, m_l)`, ascending in `l`.
    pub fn nonzero_terms(&self) -> Vec<(u64, &BigRational)> {
        self.multiplicities.iter().filter(|(_, m)| !m.is_zero()).map(|(&l, m)| (l, m)).collect()
    }
}

/// Name of `⟨c^l⟩` in a group of order `n`.
pub fn subgroup_label(l: u64, n: u64) -> String {
    if l == 1 {
        "G".to_string()
    } else if l == n {
        "<1>".to_string()
    } else {
        format!("<c^{l}>")
    }
}

pub fn decompose(chi: &DivisorCharacter) -> Decomposition {
    let f_values = f_transform(chi);
    let multiplicities: BTreeMap<u64, BigRational> = f_values
        .iter()
        .map(|(&l, f)| (l, BigRational::new(f.clone(), BigInt::from(l))))
        .collect();
    let verdict = multiplicities
        .iter()
        .find(|(_, m)| !m.is_integer() || m.is_negative())
        .map_or(Verdict::Permutation, |(&l, m)| Verdict::NotPermutation { witness: l, multiplicity: m.clone() });
    Decomposition { order: chi.order, f_values, multiplicities, verdict }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeDecomposition {
    pub degree: usize,
    pub character: DivisorCharacter,
    pub decomposition: Decomposition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDecomposition {
    pub degrees: Vec<DegreeDecomposition>,
}

impl GradedDecomposition {
    pub fn all_permutation(&self) -> bool {
        self.degrees.iter().all(|d| d.decomposition.verdict.is_permutation())
    }

    /// First degree whose character is not a permutation character.
    pub fn first_failure(&self) -> Option<&DegreeDecomposition> {
        self.degrees.iter().find(|d| !d.decomposition.verdict.is_permutation())
    }
}

/// Decomposes each coefficient character `γ_i`, `0 <= i <= d`.
pub fn graded_decomposition(table: &CharacterTable) -> GradedDecomposition {
    let degrees = (0..=table.dim)
        .map(|i| {
            let character = table.degree_character(i);
            let decomposition = decompose(&character);
            DegreeDecomposition { degree: i, character, decomposition }
        })
        .collect();
    GradedDecomposition { degrees }
}

pub fn decompose_graded(fan: &Fan, action: &GroupAction) -> Result<GradedDecomposition, CharacterError> {
    Ok(graded_decomposition(&character_table(fan, action)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePowerReport {
    pub prime: u64,
    pub exponent: u32,
    /// `i` for which `χ[q](c^{p^i}) - χ[q](c^{p^{i-1}})` has a negative coefficient.
    pub negative_differences: Vec<u32>,
    pub graded_all_permutation: bool,
}

impl PrimePowerReport {
    pub fn differences_nonnegative(&self) -> bool {
        self.negative_differences.is_empty()
    }

    pub fn agree(&self) -> bool {
        self.differences_nonnegative() == self.graded_all_permutation
    }

    pub fn passed(&self) -> bool {
        self.agree() && self.graded_all_permutation
    }
}

/// For `n = p^r` the subgroup lattice is a chain, so `γ_i` is a permutation
/// character iff the successive differences along the chain are non-negative.
pub fn prime_power_verdict(table: &CharacterTable) -> Result<PrimePowerReport, CharacterError> {
    let (prime, exponent) = prime_power(table.order).ok_or(CharacterError::NotPrimePower(table.order))?;
    let negative_differences = (1..exponent)
        .filter(|&i| {
            let hi = &table.entries[&prime.pow(i)].graded;
            let lo = &table.entries[&prime.pow(i - 1)].graded;
            !(hi - lo).has_nonnegative_coeffs()
        })
        .collect();
    Ok(PrimePowerReport {
        prime,
        exponent,
        negative_differences,
        graded_all_permutation: graded_decomposition(table).all_permutation(),
    })
}

pub fn prime_power_check(fan: &Fan, action: &GroupAction) -> Result<PrimePowerReport, CharacterError> {
    prime_power_verdict(&character_table(fan, action)?)
}
