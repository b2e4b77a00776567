//! Exact coefficient arithmetic: rationals, polynomials and rational
//! functions in `q`.

pub mod arith;
pub mod coeff;
pub mod parse;
pub mod qpoly;
pub mod ratfunc;
pub mod weights;

pub use coeff::Coeff;
pub use num_rational::BigRational;
pub use parse::{parse_ratfunc, parse_rational};
pub use qpoly::QPoly;
pub use ratfunc::{rf_adams_q, rf_arith, rf_eval, ArithOp, RatFunc};
pub use weights::{WeightPoly, WeightVar};

/// Arbitrary-precision rational number.
pub type BigRat = BigRational;
