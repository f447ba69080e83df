//! Monte Carlo oracle for the closed forms: Poisson interferer fields on a
//! disk around the receiver, Rayleigh fading on every path, empirical outage
//! estimation, and the truncated retransmission process run message by
//! message.
//!
//! # Determinism
//!
//! Every trial (or message) draws from its own ChaCha substream, derived from
//! the configured seed and the trial index via the generator's 64-bit stream
//! field. Trials are reduced with integer sums only, so results are
//! bit-identical for a given seed regardless of how many threads rayon uses.
//!
//! Within one trial the draw order is fixed: reference-link fading first,
//! then the field size, then per interferer its squared distance followed by
//! its fading gain. Two calls with the same config replay the same
//! substreams.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, Poisson};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::params::{NetworkParams, SimEstimate};

/// Default disk radius as a multiple of the reference distance.
pub const DEFAULT_RADIUS_FACTOR: f64 = 100.0;

/// Largest tolerated share of the mean interference lost to truncation.
pub const TRUNCATION_TAIL_LIMIT: f64 = 1e-3;

/// Monte Carlo run configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    trials: u64,
    disk_radius: f64,
    rng_seed: u64,
}

impl SimConfig {
    /// Config with the default disk radius of `100 * r0`.
    pub fn new(params: &NetworkParams, trials: u64, rng_seed: u64) -> Result<Self> {
        Self::with_radius(params, trials, DEFAULT_RADIUS_FACTOR * params.r0(), rng_seed)
    }

    /// Config with an explicit disk radius.
    ///
    /// The infinite plane is truncated to a disk; construction fails unless
    /// the neglected far-field mean stays below [`TRUNCATION_TAIL_LIMIT`]
    /// relative to the in-disk mean beyond the reference distance.
    pub fn with_radius(
        params: &NetworkParams,
        trials: u64,
        disk_radius: f64,
        rng_seed: u64,
    ) -> Result<Self> {
        if trials == 0 {
            return Err(Error::invalid("trials", ">= 1", 0.0));
        }
        if !(disk_radius > params.r0()) || !disk_radius.is_finite() {
            return Err(Error::invalid(
                "disk_radius",
                "finite and larger than r0",
                disk_radius,
            ));
        }
        let tail = truncation_tail_fraction(params, disk_radius);
        if tail >= TRUNCATION_TAIL_LIMIT {
            return Err(Error::TruncationTail {
                radius: disk_radius,
                tail,
                limit: TRUNCATION_TAIL_LIMIT,
            });
        }
        Ok(Self {
            trials,
            disk_radius,
            rng_seed,
        })
    }

    /// Same field and seed, different trial count.
    pub fn with_trials(&self, trials: u64) -> Result<Self> {
        if trials == 0 {
            return Err(Error::invalid("trials", ">= 1", 0.0));
        }
        Ok(Self { trials, ..*self })
    }

    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn disk_radius(&self) -> f64 {
        self.disk_radius
    }

    pub fn rng_seed(&self) -> u64 {
        self.rng_seed
    }
}

/// Share of the mean interference contributed by nodes outside the disk,
/// relative to the (finite) in-disk mean beyond the reference distance.
///
/// Radially, mean interference scales as the integral of `r^(1-alpha)`:
/// outside the disk that is `R^(2-alpha)/(alpha-2)`, and between `r0` and `R`
/// it is `(r0^(2-alpha) - R^(2-alpha))/(alpha-2)`.
pub fn truncation_tail_fraction(params: &NetworkParams, disk_radius: f64) -> f64 {
    let t = (disk_radius / params.r0()).powf(2.0 - params.alpha());
    t / (1.0 - t)
}

/// Counts of one truncated-retransmission run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArqTrace {
    /// Messages offered to the protocol.
    pub messages: u64,
    /// Messages delivered within the cap.
    pub successes: u64,
    /// Transmissions spent across all messages.
    pub total_attempts: u64,
}

impl ArqTrace {
    /// Empirical delivery rate.
    pub fn success_rate(&self) -> f64 {
        self.successes as f64 / self.messages as f64
    }

    /// Empirical mean transmissions per message.
    pub fn mean_attempts(&self) -> f64 {
        self.total_attempts as f64 / self.messages as f64
    }
}

/// Independent substream for one trial.
fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn field_size<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> u64 {
    Poisson::new(mean).expect("mean is positive and finite").sample(rng) as u64
}

/// One realization of the aggregate interference power at the receiver:
/// `sum_i g_i r_i^(-alpha)` over a Poisson field of mean `lambda pi R^2`
/// dropped uniformly on the disk, with unit-mean exponential fading.
///
/// The licensed-power ratio is applied at the SIR comparison, not here.
pub fn sample_interference<R: Rng + ?Sized>(
    params: &NetworkParams,
    config: &SimConfig,
    rng: &mut R,
) -> f64 {
    let radius_sq = config.disk_radius * config.disk_radius;
    let mean = params.lambda() * PI * radius_sq;
    if mean == 0.0 {
        return 0.0;
    }
    let count = field_size(mean, rng);

    // A uniform point on the disk has r^2 uniform on [0, R^2], so the
    // per-node gain needs no square root.
    let mut sum = 0.0;
    if params.alpha() == 4.0 {
        // r^(-4) = (r^2)^(-2); skipping powf in this hot loop roughly halves
        // the oracle's runtime at the default exponent.
        for _ in 0..count {
            let r_sq = radius_sq * rng.random::<f64>();
            let gain: f64 = Exp1.sample(rng);
            sum += gain / (r_sq * r_sq);
        }
    } else {
        let exponent = -params.alpha() / 2.0;
        for _ in 0..count {
            let r_sq = radius_sq * rng.random::<f64>();
            let gain: f64 = Exp1.sample(rng);
            sum += gain * r_sq.powf(exponent);
        }
    }
    sum
}

/// Outage comparison rearranged to avoid per-trial divisions:
/// `g0 r0^(-alpha) / (ratio I) <= beta  <=>  g0 <= beta ratio r0^alpha I`.
fn draw_outage<R: Rng + ?Sized>(
    params: &NetworkParams,
    threshold: f64,
    config: &SimConfig,
    rng: &mut R,
) -> bool {
    let fading: f64 = Exp1.sample(rng);
    let interference = sample_interference(params, config, rng);
    // An empty field means infinite SIR: never an outage.
    interference > 0.0 && fading <= threshold * interference
}

fn sir_threshold(params: &NetworkParams, beta: f64) -> f64 {
    assert!(beta > 0.0 && beta.is_finite(), "beta must be positive");
    beta * params.power_ratio() * params.r0().powf(params.alpha())
}

/// Empirical outage probability at threshold `beta`: the fraction of trials
/// whose SIR, under a fresh fading draw and a fresh interferer field, falls
/// at or below it.
pub fn estimate_outage(params: &NetworkParams, beta: f64, config: &SimConfig) -> SimEstimate {
    let threshold = sir_threshold(params, beta);
    let outages: u64 = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = substream(config.rng_seed, trial);
            u64::from(draw_outage(params, threshold, config, &mut rng))
        })
        .sum();
    let value = outages as f64 / config.trials as f64;
    SimEstimate {
        value,
        trials: config.trials,
        ci_half_width: 3.0 * (value * (1.0 - value) / config.trials as f64).sqrt(),
    }
}

/// Run the truncated retransmission process for `messages` messages.
///
/// Every attempt redraws both the reference fading and the interferer field,
/// matching the model in which interferer positions change between
/// transmissions. A message succeeds on its first non-outage attempt and is
/// dropped after `m + 1` failures.
pub fn simulate_arq(
    params: &NetworkParams,
    beta: f64,
    m: u32,
    messages: u64,
    config: &SimConfig,
) -> ArqTrace {
    assert!(messages >= 1, "at least one message required");
    let threshold = sir_threshold(params, beta);
    let (successes, total_attempts) = (0..messages)
        .into_par_iter()
        .map(|message| {
            let mut rng = substream(config.rng_seed, message);
            let mut attempts = 0u64;
            let mut delivered = false;
            for _ in 0..=m {
                attempts += 1;
                if !draw_outage(params, threshold, config, &mut rng) {
                    delivered = true;
                    break;
                }
            }
            (u64::from(delivered), attempts)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    ArqTrace {
        messages,
        successes,
        total_attempts,
    }
}
