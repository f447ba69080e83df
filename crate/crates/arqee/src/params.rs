//! Validated domain types shared by the analytic model, the optimizer and the
//! simulator, plus the geometry constant that ties them together.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gamma::gamma;

/// Link and interference-field geometry.
///
/// Immutable once constructed; every constructor rejects values outside the
/// model's domain, so downstream formulas never re-validate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkParams {
    alpha: f64,
    r0: f64,
    lambda: f64,
    power_ratio: f64,
}

impl NetworkParams {
    /// Parameters with equal licensed and unlicensed transmit power.
    ///
    /// * `alpha` — path-loss exponent; must exceed 2 or the aggregate
    ///   interference statistics diverge.
    /// * `r0` — reference link distance in meters, strictly positive.
    /// * `lambda` — interferer density in nodes per square meter, nonnegative.
    pub fn new(alpha: f64, r0: f64, lambda: f64) -> Result<Self> {
        Self::with_power_ratio(alpha, r0, lambda, 1.0)
    }

    /// Parameters with an explicit licensed-to-unlicensed power ratio.
    pub fn with_power_ratio(alpha: f64, r0: f64, lambda: f64, power_ratio: f64) -> Result<Self> {
        if !(alpha > 2.0) || !alpha.is_finite() {
            return Err(Error::invalid("alpha", "finite and > 2", alpha));
        }
        if !(r0 > 0.0) || !r0.is_finite() {
            return Err(Error::invalid("r0", "finite and > 0", r0));
        }
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(Error::invalid("lambda", "finite and >= 0", lambda));
        }
        if !(power_ratio > 0.0) || !power_ratio.is_finite() {
            return Err(Error::invalid("power_ratio", "finite and > 0", power_ratio));
        }
        Ok(Self {
            alpha,
            r0,
            lambda,
            power_ratio,
        })
    }

    /// Same geometry at a different interferer density.
    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        Self::with_power_ratio(self.alpha, self.r0, lambda, self.power_ratio)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn power_ratio(&self) -> f64 {
        self.power_ratio
    }
}

/// Geometry constant of the outage law.
///
/// `k' = pi r0^2 Gamma(1 - 2/alpha) Gamma(1 + 2/alpha) (W_p/W_s)^(2/alpha)`.
///
/// The power-ratio factor folds the interferer transmit power into the same
/// constant, so the outage probability stays `1 - exp(-k' lambda beta^(2/alpha))`
/// for any ratio; with equal powers it reduces to the plain geometric form.
pub fn geometry_constant(params: &NetworkParams) -> f64 {
    let two_over_alpha = 2.0 / params.alpha;
    std::f64::consts::PI
        * params.r0
        * params.r0
        * gamma(1.0 - two_over_alpha)
        * gamma(1.0 + two_over_alpha)
        * params.power_ratio.powf(two_over_alpha)
}

/// Retransmission cap: a finite number of retransmissions after the first
/// attempt, or no cap at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RetryCap {
    /// Up to `m` retransmissions (`m + 1` total attempts), then drop.
    Limited(u32),
    /// Retransmit until success.
    Unlimited,
}

impl RetryCap {
    pub fn is_limited(&self) -> bool {
        matches!(self, RetryCap::Limited(_))
    }
}

impl fmt::Display for RetryCap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RetryCap::Limited(m) => write!(f, "{m}"),
            RetryCap::Unlimited => write!(f, "unlimited"),
        }
    }
}

impl FromStr for RetryCap {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("unlimited") {
            Ok(RetryCap::Unlimited)
        } else {
            s.parse::<u32>()
                .map(RetryCap::Limited)
                .map_err(|_| format!("expected a nonnegative integer or \"unlimited\", got {s:?}"))
        }
    }
}

/// Retransmission policy: the cap and the outage budget the link must meet
/// after all attempts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArqPolicy {
    m_cap: RetryCap,
    epsilon: f64,
}

impl ArqPolicy {
    /// `epsilon` is the maximum acceptable end-of-protocol error rate,
    /// strictly inside (0, 1).
    pub fn new(m_cap: RetryCap, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::invalid("epsilon", "strictly inside (0, 1)", epsilon));
        }
        Ok(Self { m_cap, epsilon })
    }

    pub fn m_cap(&self) -> RetryCap {
        self.m_cap
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

/// Circuit powers and amplifier drain efficiency entering the power model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyParams {
    pc_tx: f64,
    pc_rx: f64,
    zeta: f64,
}

impl EnergyParams {
    /// `pc_tx`/`pc_rx` are the transmit/receive circuitry powers in mW
    /// (nonnegative); `zeta` is the amplifier drain efficiency in (0, 1].
    pub fn new(pc_tx: f64, pc_rx: f64, zeta: f64) -> Result<Self> {
        if !(pc_tx >= 0.0) || !pc_tx.is_finite() {
            return Err(Error::invalid("pc_tx", "finite and >= 0", pc_tx));
        }
        if !(pc_rx >= 0.0) || !pc_rx.is_finite() {
            return Err(Error::invalid("pc_rx", "finite and >= 0", pc_rx));
        }
        if !(zeta > 0.0 && zeta <= 1.0) {
            return Err(Error::invalid("zeta", "inside (0, 1]", zeta));
        }
        Ok(Self { pc_tx, pc_rx, zeta })
    }

    pub fn pc_tx(&self) -> f64 {
        self.pc_tx
    }

    pub fn pc_rx(&self) -> f64 {
        self.pc_rx
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }
}

/// Every metric of one evaluated operating point.
///
/// Produced by [`crate::analytic::evaluate_point`]; the fields are mutually
/// consistent (`ee * pc == throughput` up to rounding) by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkReport {
    /// SIR threshold the point was evaluated at.
    pub beta: f64,
    /// Retransmission cap in force.
    pub m_used: RetryCap,
    /// Per-attempt outage probability.
    pub p_out: f64,
    /// Expected number of transmissions per message.
    pub expected_attempts: f64,
    /// Link throughput in bits/s/Hz.
    pub throughput: f64,
    /// Total power consumption, normalized per unit bit rate.
    pub pc: f64,
    /// Energy efficiency, throughput per unit power consumption.
    pub ee: f64,
}

/// A Monte Carlo point estimate with its sampling uncertainty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimEstimate {
    /// Point estimate.
    pub value: f64,
    /// Number of independent trials behind it.
    pub trials: u64,
    /// Three-sigma binomial half-width, `3 sqrt(v(1-v)/trials)`.
    pub ci_half_width: f64,
}
