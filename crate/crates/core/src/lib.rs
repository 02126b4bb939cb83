//! Exact construction and verification of the representation theory of three
//! towers of algebras: `HS_n` (generated by elementary transpositions and
//! sorting operators on permutations), the monoid algebras of nondecreasing
//! functions `NDF_n`, and of nondecreasing parking functions `NDPF_n`.

pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod exactla;
pub mod hsn;
pub mod ndf;
pub mod repr;
pub mod symfunc;
pub mod towers;

pub use error::{Error, Result};
