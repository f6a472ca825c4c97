//! Schmidt-rank-three complex Hadamard matrices of order six.
//!
//! The crate builds the parametric family `(I2 ⊗ V) · Mid · (I2 ⊗ W)` of
//! 6x6 complex Hadamard matrices (CHMs) together with an explicit example,
//! measures their operator Schmidt rank across the `C^2 : C^3` cut, scans
//! them for submatrix patterns that rule out membership in a set of
//! mutually unbiased bases (MUBs), and evaluates the entangling power of the
//! associated controlled unitaries.

pub mod chm;
pub mod cli;
pub mod entangle;
pub mod error;
pub mod io;
pub mod mub;
pub mod numerics;
pub mod optim;
pub mod presets;

pub use error::{Error, Result};
pub use numerics::{CMatrix, Tolerances, C64};
