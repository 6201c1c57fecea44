//! Probability amplitudes for successive spin-projection measurements along
//! arbitrary directions.
//!
//! The numeric routines are generic over [`Scalar`] (`f32` or `f64`); the
//! `*64` aliases below fix the common double-precision case.

pub mod amplitude;
pub mod cli;
pub mod closed_form;
pub mod error;
pub mod linalg;
pub mod scalar;
pub mod simulate;
pub mod spin;

pub use amplitude::{
    chain_compose, eigenbasis, general_table, probabilities, standard_table, AmplitudeTable, PhaseConvention,
    ProbabilityTable,
};
pub use error::{Error, Result};
pub use scalar::Scalar;
pub use spin::{casimir, commutator, projection_operator, spin_components, Direction, Projection, Spin, SpinMatrix};

pub type Direction64 = Direction<f64>;
pub type SpinMatrix64 = SpinMatrix<f64>;
pub type AmplitudeTable64 = AmplitudeTable<f64>;
pub type ProbabilityTable64 = ProbabilityTable<f64>;
pub type Direction32 = Direction<f32>;
pub type SpinMatrix32 = SpinMatrix<f32>;
pub type AmplitudeTable32 = AmplitudeTable<f32>;
pub type MeasurementChain64 = simulate::MeasurementChain<f64>;
pub type SimulationResult64 = simulate::SimulationResult<f64>;
