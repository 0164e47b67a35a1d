//! Exact arithmetic over prime fields: polynomials, rational functions,
//! truncated Laurent series in `Y⁻¹`, Euler functions, continued fractions
//! and quadratic irrationals.

use thiserror::Error;

pub mod cf;
pub mod field;
pub mod laurent;
pub mod mertens;
pub mod poly;
pub mod quad;
pub mod ratfunc;

pub use cf::{cf_expand, CfExpansion, CfInput};
pub use field::{FqElem, MAX_PRIME, MAX_SQRT_PRIME};
pub use laurent::{
    laurent_expand, precision_cap, valuation_abs, valuation_adaptive, Expand, LaurentSeries, QPower,
    DEFAULT_PRECISION_CAP,
};
pub use mertens::{euler_phi, factor, mertens_closed_form, mertens_sum, monic_degree_phi_sum};
pub use poly::FqPoly;
pub use quad::{QuadInvariants, QuadIrr};
pub use ratfunc::RatFunc;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FfError {
    #[error("not-prime: {0} is not a supported prime")]
    NotPrime(u32),
    #[error("field-too-large: square roots are searched only for q <= 101, got {0}")]
    FieldTooLarge(u32),
    #[error("division-by-zero")]
    DivisionByZero,
    #[error("not-divisible: exact division left a remainder")]
    NotDivisible,
    #[error("modulus-mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("not-split: discriminant has no square root in the completion")]
    NotSplit,
    #[error("char-2-unsupported")]
    Char2Unsupported,
    #[error("not-irrational: discriminant is a square in the rational function field")]
    NotIrrational,
    #[error("degenerate: leading coefficient A must be nonzero")]
    ZeroLeading,
    #[error("precision-cap: requested {requested} coefficients, cap is {cap}")]
    PrecisionCap { requested: usize, cap: usize },
    #[error("precision-exhausted: no nonzero coefficient within the precision cap")]
    PrecisionExhausted,
    #[error("too-large: enumeration of {needed} items exceeds budget {budget}")]
    TooLarge { needed: u128, budget: u64 },
    #[error("invalid-argument: {0}")]
    InvalidArgument(String),
}
