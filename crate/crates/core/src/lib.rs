//! Two cascaded atom-cavity nodes in the single-excitation sector.
//!
//! The system starts in `|a⟩` (atom A excited) and is followed three
//! ways: closed-form no-jump amplitudes ([`analytic`]), RK4 integration of
//! the non-Hermitian Schrödinger and Lindblad equations ([`dynamics`]),
//! and Monte Carlo quantum trajectories ([`trajectories`]). The
//! [`entanglement`] module reduces states to the atom pair or the cavity
//! pair and computes the concurrence.
//!
//! Rates are in units of the total cavity loss `K` and `ħ = 1`.

pub mod analytic;
pub mod cli;
pub mod dynamics;
pub mod entanglement;
pub mod error;
pub mod model;
pub mod numerics;
pub mod trajectories;

pub use error::{Error, Result};
pub use model::{basis, JumpChannel, Node, NodeParams, SystemParams};
