//! Characters of finite cyclic groups acting properly on complete simplicial
//! fans, computed exactly from fixed subcomplexes and cyclotomic data, and
//! their decomposition into transitive permutation characters.
//!
//! The pipeline is:
//!
//! 1. [`fan::validate_fan`] checks the fan; [`action::validate_action`] checks
//!    the generator (unimodular, finite order, fan automorphism, proper).
//! 2. For each divisor `j` of the group order, [`character`] computes the
//!    graded character `P_{Δ^{c^j}}(q) · Q_{c^j}(q)` and its value at `q = 1`.
//! 3. [`character::decompose`] inverts over the divisor lattice to get the
//!    multiplicity of each `ind_{⟨c^l⟩}^G`.
//!
//! All arithmetic is exact.

pub mod action;
pub mod character;
pub mod cli;
pub mod corpus;
pub mod exactalg;
pub mod fan;

pub use action::{fixed_subcomplex, restrict_to_fixed, validate_action, FixedData, GroupAction};
pub use exactalg::{IntMatrix, IntPolynomial};
pub use fan::{complex_from_fan, f_vector, facet_count, h_polynomial, validate_fan, Fan, SimplicialComplex};
