//! Exact engine for infinite-dimensional Calogero–Moser–Sutherland operators
//! on symmetric functions, their finite and deformed restrictions, and the
//! triangular eigen-solver for Jack and Jacobi symmetric functions.

pub mod coeff;
pub mod eigen;
pub mod error;
pub mod finite;
pub mod infinite;
pub mod linalg;
pub mod symfun;
pub mod verify;

pub use coeff::{Bindings, CoeffFrac, Param, ParamPoly, Rational};
pub use error::{Error, Result};
pub use finite::{DeformedContext, MPoly, Vars};
pub use symfun::{MBasisExpansion, Partition, SymFun};
