//! Throughput maximization under an outage budget.
//!
//! For a fixed cap `m` the feasible thresholds are `beta <= beta_star(m)`,
//! where [`beta_star`] is the closed-form budget boundary. The throughput is
//! unimodal in `beta`, so the per-cap optimum is the boundary while it sits
//! below the unconstrained peak and the peak itself once the budget is loose
//! enough to stop binding. [`m_star`] searches the caps exhaustively;
//! [`unconstrained_beta_opt`] solves the no-cap limit by golden-section
//! search.

use crate::analytic::throughput;
use crate::error::{Error, Result};
use crate::params::{geometry_constant, ArqPolicy, NetworkParams, RetryCap};

/// Default upper bound on the cap search; the optimum is small in practice.
pub const DEFAULT_SEARCH_CAP: u32 = 64;

/// Relative bracket width at which the golden-section search stops. The
/// objective is smooth and unimodal, so this pins the maximizer to roughly
/// the same precision.
const GOLDEN_TOL: f64 = 1e-10;

/// Solution of the constrained throughput maximization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalPoint {
    /// Maximizing SIR threshold.
    pub beta_star: f64,
    /// Maximizing retransmission cap.
    pub m_star: RetryCap,
    /// Throughput at the optimum, bits/s/Hz.
    pub t_star: f64,
    /// True when the outage budget binds at the optimum, i.e. the reported
    /// threshold sits on the budget boundary rather than at the unconstrained
    /// throughput peak.
    pub constraint_active: bool,
}

fn check_density(params: &NetworkParams) -> Result<()> {
    if params.lambda() == 0.0 {
        return Err(Error::ZeroDensity);
    }
    Ok(())
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid("epsilon", "strictly inside (0, 1)", epsilon));
    }
    Ok(())
}

/// Largest SIR threshold meeting the outage budget with cap `m`:
/// `beta* = (-(1/(k lambda)) ln(1 - eps^(1/(m+1))))^(alpha/2)`.
///
/// By construction `P_out(beta*)^(m+1) = eps` exactly.
pub fn beta_star(params: &NetworkParams, epsilon: f64, m: u32) -> Result<f64> {
    check_density(params)?;
    check_epsilon(epsilon)?;
    // eps^(1/(m+1)) = exp(ln(eps)/(m+1)); its complement via expm1 to keep
    // precision when the root crowds 1 at large m.
    let root_complement = -(epsilon.ln() / f64::from(m + 1)).exp_m1();
    let k_lambda = geometry_constant(params) * params.lambda();
    Ok((-root_complement.ln() / k_lambda).powf(params.alpha() / 2.0))
}

/// Golden-section maximization of a unimodal function on `[lo, hi]`.
fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    while hi - lo > GOLDEN_TOL * hi.max(1.0) {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    0.5 * (lo + hi)
}

/// Bracket the peak of the unlimited-cap throughput by doubling the upper
/// edge until the objective turns down, then golden-section inside.
fn unconstrained_peak(params: &NetworkParams) -> f64 {
    let obj = |beta: f64| throughput(params, beta, RetryCap::Unlimited).expect("beta > 0");
    let mut hi = 1.0;
    while obj(2.0 * hi) > obj(hi) {
        hi *= 2.0;
    }
    golden_max(obj, 1e-9, 2.0 * hi)
}

/// Threshold maximizing the unlimited-retransmission throughput
/// `log2(1 + beta) (1 - P_out(beta))`. The outage budget never binds in this
/// limit, so the point is reported with `constraint_active = false`.
pub fn unconstrained_beta_opt(params: &NetworkParams) -> Result<OptimalPoint> {
    check_density(params)?;
    let beta = unconstrained_peak(params);
    Ok(OptimalPoint {
        beta_star: beta,
        m_star: RetryCap::Unlimited,
        t_star: throughput(params, beta, RetryCap::Unlimited)?,
        constraint_active: false,
    })
}

/// Best threshold for one fixed cap: the budget boundary while it is below
/// the unconstrained peak, the peak itself otherwise.
fn best_beta_for_cap(params: &NetworkParams, epsilon: f64, m: u32, peak: f64) -> Result<(f64, bool)> {
    let boundary = beta_star(params, epsilon, m)?;
    if boundary <= peak {
        Ok((boundary, true))
    } else {
        Ok((peak, false))
    }
}

/// Exhaustive search for the throughput-maximizing cap.
///
/// Caps `m in 0..=min(policy cap, search_cap)` are each evaluated at their
/// constrained-optimal threshold; ties break toward the smaller cap (same
/// throughput, lower worst-case latency). `t_star` equals
/// `throughput(beta_star, m_star)` exactly.
pub fn m_star(params: &NetworkParams, policy: &ArqPolicy, search_cap: u32) -> Result<OptimalPoint> {
    check_density(params)?;
    let top = match policy.m_cap() {
        RetryCap::Limited(m) => m.min(search_cap),
        RetryCap::Unlimited => search_cap,
    };

    let peak = unconstrained_peak(params);
    let peak_t = throughput(params, peak, RetryCap::Unlimited)?;

    let mut best: Option<(f64, u32, f64, bool)> = None;
    for m in 0..=top {
        let (beta, active) = best_beta_for_cap(params, policy.epsilon(), m, peak)?;
        // Off the boundary every cap sees the identical peak value; scoring
        // with one shared number keeps the plateau an exact tie so the
        // smallest cap wins it.
        let score = if active {
            throughput(params, beta, RetryCap::Limited(m))?
        } else {
            peak_t
        };
        if best.map_or(true, |(t, ..)| score > t) {
            best = Some((score, m, beta, active));
        }
    }

    let (_, m, beta, active) = best.expect("search range is never empty");
    Ok(OptimalPoint {
        beta_star: beta,
        m_star: RetryCap::Limited(m),
        t_star: throughput(params, beta, RetryCap::Limited(m))?,
        constraint_active: active,
    })
}
