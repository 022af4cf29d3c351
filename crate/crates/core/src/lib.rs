//! Lattices over `Z C_{p²}`, their isomorphism and genus invariants, Galois
//! twisting, and the profinite genus of `Z^n ⋊ C_{p²}`.
//!
//! Lattices are written as sums of indecomposables in a small language,
//! e.g. `"Z + c(0) + B(0,0;1,1+l)"`, and parsed against a [`Context`]
//! holding the class-group data for a prime `p`.

pub mod abelian;
pub mod arith;
pub mod classdata;
pub mod cli;
pub mod context;
pub mod error;
pub mod galois;
pub mod genus;
pub mod iso;
pub mod lattice;
pub mod materialize;
pub mod modring;

pub use context::Context;
pub use error::{Error, Result};
pub use lattice::{parse, ExtKind, LatticeDescriptor, Summand};
