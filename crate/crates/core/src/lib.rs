//! Nonlinear entanglement witnesses for relativistic single-particle
//! spin-momentum states.
//!
//! The crate is layered bottom-up: [`matcore`] supplies small dense complex
//! linear algebra, [`kinematics`] the Wigner rotation and spin
//! representations, [`states`] the state families and their boosts,
//! [`witness`] the witness construction and closed forms, and [`measures`]
//! the comparison measures (concurrence, PPT spectra, nearest separable
//! state).

pub mod error;
pub mod kinematics;
pub mod matcore;
pub mod measures;
pub mod states;
pub mod witness;

pub use error::{Error, Result};
