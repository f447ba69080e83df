//! Analytical model and Monte Carlo oracle for an unlicensed wireless link
//! operating in a field of Poisson-distributed interferers, with a
//! retransmit-on-outage protocol truncated at a configurable cap.
//!
//! The crate is organised around one closed-form chain and one simulator that
//! cross-checks it:
//!
//! * [`params`](NetworkParams) — validated domain types and the geometry
//!   constant shared by every formula.
//! * [`analytic`] — outage probability, success probability, expected attempt
//!   count, link throughput, power consumption and energy efficiency for a
//!   fixed operating point.
//! * [`optimizer`] — the SIR threshold maximizing throughput under an outage
//!   budget, the best retransmission cap, and the unlimited-retransmission
//!   limit.
//! * [`sim`] — seed-deterministic Monte Carlo estimation of the same
//!   quantities from sampled interferer fields, used as an independent oracle.
//!
//! All types are immutable after construction and all functions are pure, so
//! everything here can be shared and called across threads freely.

pub mod analytic;
pub mod optimizer;
pub mod sim;

mod error;
mod gamma;
mod params;

pub use error::{Error, Result};
pub use params::{
    geometry_constant, ArqPolicy, EnergyParams, LinkReport, NetworkParams, RetryCap, SimEstimate,
};
