//! Exact arithmetic: integers, integer polynomials and matrices, cyclotomic
//! polynomials and Möbius values. No floating point anywhere.

pub mod arith;
pub mod cyclotomic;
pub mod matrix;
pub mod poly;

use thiserror::Error;

pub use arith::{divisors, moebius_nt, moebius_recursive, p_adic_valuation};
pub use cyclotomic::{cyclotomic, degree_ratio, factor_into_cyclotomics, CyclotomicFactorization};
pub use matrix::{
    char_poly_one_minus_qg, fixed_subspace_dimension, integer_kernel_basis, matrix_order, IntMatrix,
    IntVector, DEFAULT_ORDER_CAP,
};
pub use poly::{poly_exact_divide, IntPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("inexact division: ({numerator}) / ({denominator}) leaves a remainder")]
    InexactDivision { numerator: String, denominator: String },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{polynomial} is not a product of cyclotomic polynomials Φ_l with l | {order} (remainder {remainder})")]
    NotCyclotomicProduct { polynomial: String, order: u64, remainder: String },
    #[error("no power up to {cap} is the identity")]
    OrderExceedsCap { cap: u64 },
}
