//! Exact computations in quiver Hecke (KLR) algebras: PBW normal forms, the
//! adjoint-action complexes and their graded cohomology, and a word-algebra
//! model of `U+` with Lusztig's form for decategorified cross-checks.

pub mod adjoint;
pub mod error;
pub mod klr;
pub mod linalg;
pub mod nilhecke;
pub mod polycalc;
pub mod qring;
pub mod rootdata;
pub mod uplus;

pub use error::{Error, Result};
