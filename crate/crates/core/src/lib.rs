//! Hidden subgroup solvers for the semi-direct products `Z_{p^r} x| Z_q` and
//! `Z_{p^r}^m x| Z_p`, run against black-box groups with a simulated
//! Abelian Fourier sampling engine.
//!
//! The modules build on each other bottom-up: [`algebra`] supplies modular
//! arithmetic and subgroup lattices, [`sdp_group`] the explicit groups,
//! [`blackbox`] the opaque oracle model, [`qsim`] the Abelian sampling
//! engine, and [`hsp_p`] / [`hsp_zm`] the two non-Abelian solvers.
//! [`reference`] holds brute-force ground truth and [`acceptance`] the
//! end-to-end checks.

pub mod acceptance;
pub mod algebra;
pub mod blackbox;
pub mod error;
pub mod hsp_p;
pub mod hsp_zm;
pub mod qsim;
pub mod reference;
pub mod sdp_group;

pub use error::{Error, Result};
