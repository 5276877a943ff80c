//! Exact arithmetic: rationals, polynomials in named formal variables, and
//! dense rational matrices.

mod matrix;
mod poly;
mod rat;

pub use matrix::RatMatrix;
pub use poly::{Monomial, MPoly, TermRecord, Var};
pub use rat::{parse_rat, rat, rat_to_string, Rat};
pub(crate) use rat::serde_rat;
