//! Exact solvability of linear systems over `Z^m` and `Q^m`, lattice point
//! counting in dilated cubes, Ehrhart quasipolynomials, and exact or
//! Monte Carlo measurement of asymptotic densities of solvable systems.

pub mod cli;
pub mod closed_forms;
pub mod density;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod solve;

pub use error::{Error, Result};
pub use linalg::{IntMatrix, Matrix};
