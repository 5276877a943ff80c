//! Exact computation with Leibniz algebras, dialgebras and conformal
//! representations over the rationals.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`]: rationals, polynomials in a handful of named formal
//!   variables, dense rational matrices.
//! * [`finalg`]: finite-dimensional algebras and dialgebras given by
//!   structure constants, polylinear identities and their dialgebra
//!   translation.
//! * [`conformal`]: conformal endomorphisms of free `Q[T]`-modules, their
//!   z-products, the dialgebra `Cend M^(0)` and current algebras.
//! * [`leibrep`]: the faithful conformal representation of a Leibniz algebra.
//! * [`envelope`]: the universal enveloping dialgebra, its normal form and
//!   the PBW-type dimension count.
//! * [`io`]: the JSON document formats used by the command line tool.

pub mod conformal;
pub mod envelope;
pub mod error;
pub mod exact;
pub mod finalg;
pub mod io;
pub mod leibrep;

pub use error::{Error, Result};
