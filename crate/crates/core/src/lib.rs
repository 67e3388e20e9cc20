//! Classicality (ECCC, `J`) and quantumness (`Q = 1 − J`) of quantum ensembles.
//!
//! `J` is the largest average fidelity between each state of an ensemble and
//! its copy under the classical cloning strategy `|j⟩|0⟩ → |j⟩|j⟩`, maximized
//! over the cloning basis. The single-copy output of that strategy is the
//! dephasing channel in the basis, so everything here reduces to fidelities
//! between states and their dephased images.

pub mod error;
pub mod quantum;
pub mod tolerance;

pub use error::{EcccError, Result};
pub mod cloning;
pub mod ensemble;
pub mod eccc;
pub mod infinite;
pub mod qkd;
