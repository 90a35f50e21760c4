//! Exact simulation and analysis toolkit for a BB84 variant that sends
//! entangled qubit pairs through a publicly known non-local gate.
//!
//! The crate is organized in layers:
//!
//! - [`quantum`]: complex linear algebra for one and two qubits, projective
//!   and POVM measurements, partial trace, fidelity, concurrence.
//! - [`gates`]: the BB84 alphabet, the 16 pair states, and the parametrized
//!   SU(2) and canonical non-local gates.
//! - [`info`]: discrete entropy, mutual information, and the closed-form
//!   attack and cloning bounds.
//! - [`bb84`]: exact enumeration of the original protocol under an
//!   intercept-resend attack.
//! - [`protocol`]: the six-phase exact simulation of the entangled-pair
//!   protocol, per-gate attack outcomes, the parameter sweep and envelopes.
//! - [`approx`]: the nested max-min optimization bounding how well a product
//!   state can approximate an entangled pair.
//! - [`epr`]: the EPR-pair attack against a known-basis transmission.
//! - [`reconcile`]: bit-flip channel, XOR and Cascade reconciliation, and
//!   privacy amplification.

pub mod approx;
pub mod bb84;
pub mod epr;
pub mod error;
pub mod gates;
pub mod info;
mod optim;
pub mod protocol;
pub mod quantum;
pub mod reconcile;

pub use error::{Error, Result};
