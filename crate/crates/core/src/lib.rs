//! Exact computations with tropical ideals over the min-plus semiring.

pub mod cideal;
pub mod classical;
pub mod cli;
pub mod complex;
pub mod config;
pub mod error;
pub mod export;
pub mod field;
pub mod ideal;
pub mod lattice;
pub mod linalg;
pub mod lp;
pub mod matroid;
pub mod multiplicity;
pub mod parse;
pub mod poly;
pub mod polyhedron;
pub mod scalar;
pub mod univariate;

pub use error::{Error, Result};
