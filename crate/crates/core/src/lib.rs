//! Plethystic calculus for the S_n-equivariant point counts of moduli spaces
//! of stable curves in genus at most two.

pub mod algebra;
pub mod critical;
pub mod error;
pub mod genus0;
pub mod graphs;
pub mod hbar;
pub mod io;
pub mod pipeline;
pub mod symfun;

pub use algebra::{BigRat, Coeff, QPoly, RatFunc, WeightPoly};
pub use error::{Error, Result};
pub use symfun::{Partition, SymSeries};
