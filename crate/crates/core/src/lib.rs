//! Spin correlations of hyperon-antihyperon pairs as two-qubit states:
//! state construction, decoherence channels, entanglement and
//! discord-like measures, teleportation, and deterministic parameter sweeps.
//!
//! Every numeric routine is generic over [`Real`] (`f32` or `f64`); the
//! `*F64` / `*F32` aliases below fix the scalar.

#![allow(clippy::needless_range_loop)]

pub mod channels;
pub mod error;
pub mod linalg;
pub mod measures;
pub mod oracle;
pub mod scalar;
pub mod spin_state;
pub mod sweep;
pub mod teleport;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;

pub type HyperonParamsF64 = spin_state::HyperonParams<f64>;
pub type HyperonParamsF32 = spin_state::HyperonParams<f32>;
pub type ThetaMatrixF64 = spin_state::ThetaMatrix<f64>;
pub type ThetaMatrixF32 = spin_state::ThetaMatrix<f32>;
pub type DensityMatrixF64 = spin_state::DensityMatrix<f64>;
pub type DensityMatrixF32 = spin_state::DensityMatrix<f32>;
pub type XStateF64 = spin_state::XState<f64>;
pub type XStateF32 = spin_state::XState<f32>;
pub type QubitChannelF64 = channels::QubitChannel<f64>;
pub type QubitChannelF32 = channels::QubitChannel<f32>;
pub type InputStateF64 = teleport::InputState<f64>;
pub type InputStateF32 = teleport::InputState<f32>;
pub type CorrelationTripleF64 = measures::CorrelationTriple<f64>;
pub type CorrelationTripleF32 = measures::CorrelationTriple<f32>;
pub type SpectrumF64 = oracle::Spectrum<f64>;
pub type SpectrumF32 = oracle::Spectrum<f32>;
