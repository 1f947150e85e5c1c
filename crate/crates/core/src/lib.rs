//! Statevector laboratory for small quantum error-correcting codes.
//!
//! The crate encodes a qubit with one of five codes, applies Pauli or
//! arbitrary single-qubit errors, corrects by syndrome lookup, decodes, and
//! classifies what is left on the useful qubit. The same machinery drives the
//! double-error census and the depolarizing-channel fidelity curves.

pub mod codes;
pub mod density;
pub mod error;
pub mod fidelity;
pub mod noise;
pub mod pauli;
pub mod reference;
pub mod report;
pub mod state;

pub use codes::{
    build_code, run_pipeline, CodeName, CodeSpec, PipelineOptions, PipelineResult, Policy,
    ResidualClass,
};
pub use density::DensityMatrix2;
pub use error::{QeccError, Result};
pub use noise::{ErrorOperator, YConvention};
pub use pauli::{Pauli1, PauliString, Phase, Syndrome};
pub use state::{Gate, StateVector, MAX_QUBITS, TOLERANCE};
