//! The universal enveloping dialgebra `U(L)` of a Leibniz algebra: free
//! dialgebra words, rewriting onto normal words `c̃ ⊣ ã_{i1} ⊣ … ⊣ ã_{in}`,
//! the truncated enveloping algebra of `L^alg`, and the faithfulness check
//! through the conformal representation on `U(L^alg) ⊕ (L ⊗ U(L^alg))`.

mod eval;
mod pbw;
mod rewrite;
mod verify;
mod word;

pub use eval::{Evaluator, M0Key, M0Vector, ZValue};
pub use pbw::{monomial_count, PbwAlgebra, PbwElement, PbwMonomial};
pub use rewrite::{Envelope, NormalWord, OrderedBasis, Rewriting, UEnvElement};
pub use verify::{
    free_dialgebra_violation, oracle_equivalence, pbw_count, random_dipoly, verify_faithfulness,
    FaithfulnessReport, OracleMismatch, OracleReport, PbwCount,
};
pub use word::{all_words, diword_products, DiPoly, DiWord, FreeDialgebra};

#[cfg(test)]
mod tests;
