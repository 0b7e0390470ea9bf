//! Two-phase discrete-time quantum walk on the integer line with a single
//! defect at the origin.
//!
//! The walk uses the coin `U₊` on `x ≥ 1`, `U₋` on `x ≤ −1` and `diag(1, −1)`
//! at the origin. The crate provides
//!
//! * exact light-cone evolution and finite-horizon time averages ([`evolution`]),
//! * the four closed-form eigenpairs and their stationary measures ([`sgf`]),
//! * the generating-function kernels, singular points, residues and the
//!   time-averaged limit measure ([`gf`]),
//! * a verification harness cross-checking all of the above ([`verify`]),
//! * the command-line driver and CSV/JSON emission ([`cli`], [`io`]).

pub mod cli;
pub mod coin;
pub mod error;
pub mod evolution;
pub mod gf;
pub mod io;
pub mod sgf;
pub mod verify;

pub use coin::{CoinOperator, Matrix2, ModelParams, PolarState, QubitState};
pub use error::{Error, Result};
pub use evolution::{time_average, Measure, WaveWindow};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Default tolerance for complex equality checks.
pub const DEFAULT_TOL: f64 = 1e-12;
