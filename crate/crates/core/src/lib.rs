//! Exact numerics for quantum database search under an isotropic depolarizing
//! channel.
//!
//! The crate has two independent computation routes and keeps them honest
//! against each other:
//!
//! - [`sim`] is a brute-force dense density-matrix simulator of the noisy
//!   search iteration. It is deliberately unclever: full N×N complex
//!   matrices, one Grover conjugation and one channel application per step.
//! - [`grover`] and [`analytic`] evaluate the closed-form success
//!   probabilities (orthogonal and smeared-POVM measurements) that the
//!   simulator must reproduce to within 1e-10.
//!
//! [`analysis`] builds on the closed forms: optimal iteration counts under
//! noise, the critical depolarizing strength at which the search stops
//! beating a coin flip, iteration-rule comparisons and sweep data for
//! plotting. [`verify`] packages the cross-route equivalence checks into a
//! runnable report.

pub mod analysis;
pub mod analytic;
pub mod channel;
pub mod density;
pub mod error;
pub mod grover;
pub mod numeric;
pub mod sim;
pub mod tol;
pub mod verify;

pub use analysis::{CriticalNoise, IterationRule, PeakResult, ProbabilityCurve, RuleComparison};
pub use analytic::{NoiseSpec, PovmSpec};
pub use channel::KrausSet;
pub use density::DensityMatrix;
pub use error::{Error, Result};
pub use grover::{DatabaseSpec, GroverAngle, UnitaryMatrix};
pub use sim::SimulationRun;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Dense complex matrix used throughout the simulator.
pub type CMat = DMatrix<Complex64>;
/// Dense complex column vector.
pub type CVec = DVector<Complex64>;

/// Largest database size for which dense N×N matrices are constructed.
/// Closed-form evaluators have no such cap.
pub const DENSE_CAP: usize = 4096;
