//! Finite-dimensional algebras and dialgebras, polylinear identities, and
//! the translation of a variety of algebras into a variety of dialgebras.

mod algebra;
pub mod samples;
mod term;
mod variety;

pub use algebra::{basis_vectors, StructureAlgebra, StructureDialgebra};
pub use term::{DiOp, DiTerm, IdentityTerm, Model, OpSymbol, Polylinear, Product, Tree};
pub use variety::{
    associativity, bar_identities, check_algebra, check_dialgebra, check_variety, di_translate,
    is_leibniz, is_lie, left_leibniz, leibniz_quotient, leibniz_to_dialgebra, lie_identities,
    minus_functor, variety_identities, LeibnizQuotient, Violation,
};
