//! Closed-form link metrics for a fixed operating point `(beta, cap)`.
//!
//! The chain is: per-attempt outage probability from the interference
//! geometry, success probability and expected attempt count from the
//! truncated retransmission process, throughput from the three, then power
//! consumption and energy efficiency on top.

use std::f64::consts::LN_2;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::params::{geometry_constant, EnergyParams, LinkReport, NetworkParams, RetryCap};

/// Which attempt count the power model is billed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PcModel {
    /// Bill the full `m + 1` attempts a dropped message would burn. With an
    /// unlimited cap this is unbounded, so the expected count is used there.
    #[default]
    WorstCase,
    /// Bill the expected attempt count `1 + m_bar`.
    Expected,
}

/// How the expected attempt count is computed for a limited cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AttemptsModel {
    /// Exact truncated-geometric expectation, `(1 - p^(m+1)) / (1 - p)`.
    #[default]
    Exact,
    /// Untruncated approximation `1 / (1 - p)` regardless of the cap, for
    /// sensitivity checks. Can exceed `m + 1`.
    Unlimited,
}

impl FromStr for PcModel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "worst-case" => Ok(PcModel::WorstCase),
            "expected" => Ok(PcModel::Expected),
            other => Err(format!(
                "expected \"worst-case\" or \"expected\", got {other:?}"
            )),
        }
    }
}

impl FromStr for AttemptsModel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "exact" => Ok(AttemptsModel::Exact),
            "unlimited" => Ok(AttemptsModel::Unlimited),
            other => Err(format!("expected \"exact\" or \"unlimited\", got {other:?}")),
        }
    }
}

/// Spectral efficiency `log2(1 + beta)` of a decodable transmission.
#[inline]
pub fn spectral_efficiency(beta: f64) -> f64 {
    beta.ln_1p() / LN_2
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::invalid("beta", "finite and > 0", beta));
    }
    Ok(())
}

fn check_p_out(p_out: f64) -> Result<()> {
    if !(p_out >= 0.0 && p_out < 1.0) {
        return Err(Error::invalid("p_out", "inside [0, 1)", p_out));
    }
    Ok(())
}

/// Per-attempt outage probability `1 - exp(-k lambda beta^(2/alpha))`.
///
/// Zero when there are no interferers.
pub fn outage_probability(params: &NetworkParams, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let exponent =
        geometry_constant(params) * params.lambda() * beta.powf(2.0 / params.alpha());
    Ok(-(-exponent).exp_m1())
}

/// Probability that a message gets through within the cap,
/// `1 - p_out^(m+1)`; `1` for an unlimited cap.
pub fn success_probability(p_out: f64, cap: RetryCap) -> f64 {
    debug_assert!((0.0..1.0).contains(&p_out));
    match cap {
        RetryCap::Limited(m) => 1.0 - p_out.powi(m as i32 + 1),
        RetryCap::Unlimited => 1.0,
    }
}

/// Expected number of transmissions per message.
///
/// Attempts are independent, so the count is geometric truncated at `m + 1`:
/// `sum_{j=0..m} p^j = (1 - p^(m+1)) / (1 - p)`, and `1 / (1 - p)` with no cap.
pub fn expected_attempts(p_out: f64, cap: RetryCap) -> Result<f64> {
    check_p_out(p_out)?;
    Ok(match cap {
        RetryCap::Limited(_) if p_out == 0.0 => 1.0,
        RetryCap::Limited(m) => (1.0 - p_out.powi(m as i32 + 1)) / (1.0 - p_out),
        RetryCap::Unlimited => 1.0 / (1.0 - p_out),
    })
}

/// Link throughput in bits/s/Hz:
/// `log2(1 + beta) * (1 - p_out^(m+1)) / (1 + m_bar)`.
pub fn throughput(params: &NetworkParams, beta: f64, cap: RetryCap) -> Result<f64> {
    let p_out = outage_probability(params, beta)?;
    let attempts = expected_attempts(p_out, cap)?;
    Ok(spectral_efficiency(beta) * success_probability(p_out, cap) / attempts)
}

/// Total power consumption normalized by the bit rate:
/// `attempts * (beta/zeta + pc_tx + pc_rx) / log2(1 + beta)`.
///
/// `attempts` is `m + 1` under [`PcModel::WorstCase`] or the expected count
/// under [`PcModel::Expected`]; the caller picks which.
pub fn power_consumption(energy: &EnergyParams, beta: f64, attempts: f64) -> Result<f64> {
    check_beta(beta)?;
    if !(attempts >= 1.0) || !attempts.is_finite() {
        return Err(Error::invalid("attempts", "finite and >= 1", attempts));
    }
    let per_attempt = beta / energy.zeta() + energy.pc_tx() + energy.pc_rx();
    Ok(attempts * per_attempt / spectral_efficiency(beta))
}

/// Energy efficiency: throughput per unit power consumption.
pub fn energy_efficiency(throughput: f64, pc: f64) -> Result<f64> {
    if !(pc > 0.0) || !pc.is_finite() {
        return Err(Error::invalid("pc", "finite and > 0", pc));
    }
    if !(throughput >= 0.0) {
        return Err(Error::invalid("throughput", ">= 0", throughput));
    }
    Ok(throughput / pc)
}

/// Evaluate every metric of one operating point into a [`LinkReport`].
///
/// The report's fields are mutually consistent: re-deriving any one of them
/// from the others reproduces it to rounding error.
pub fn evaluate_point(
    params: &NetworkParams,
    energy: &EnergyParams,
    beta: f64,
    cap: RetryCap,
    pc_model: PcModel,
    attempts_model: AttemptsModel,
) -> Result<LinkReport> {
    let p_out = outage_probability(params, beta)?;
    let attempts = match attempts_model {
        AttemptsModel::Exact => expected_attempts(p_out, cap)?,
        AttemptsModel::Unlimited => expected_attempts(p_out, RetryCap::Unlimited)?,
    };
    let throughput = spectral_efficiency(beta) * success_probability(p_out, cap) / attempts;
    let pc_attempts = match (pc_model, cap) {
        (PcModel::WorstCase, RetryCap::Limited(m)) => f64::from(m) + 1.0,
        _ => attempts,
    };
    let pc = power_consumption(energy, beta, pc_attempts)?;
    let ee = energy_efficiency(throughput, pc)?;
    Ok(LinkReport {
        beta,
        m_used: cap,
        p_out,
        expected_attempts: attempts,
        throughput,
        pc,
        ee,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Frozen reference values, computed independently with mpmath at 30
    // significant digits from the same formulas.
    const P_OUT_L01_B1: f64 = 0.389_501_974_734_202_84;
    const P6: f64 = 0.681_292_069_057_961_3; // 0.1^(1/6)
    const ATTEMPTS_P6_M5: f64 = 2.823_902_114_201_472_4;
    const BETA_STAR_5: f64 = 5.369_301_329_884_525;
    const T_AT_BETA_STAR_5: f64 = 0.851_311_949_619_044_3;
    const PC_WORST: f64 = 506.393_387_568_002_2;
    const PC_EXPECTED: f64 = 238.334_226_295_154_52;

    fn params_l(lambda: f64) -> NetworkParams {
        NetworkParams::new(4.0, 1.0, lambda).unwrap()
    }

    fn energy() -> EnergyParams {
        EnergyParams::new(97.9, 112.2, 0.35).unwrap()
    }

    fn assert_rel(got: f64, expected: f64, tol: f64) {
        let rel = ((got - expected) / expected).abs();
        assert!(rel <= tol, "got {got}, expected {expected}, rel {rel:.2e}");
    }

    #[test]
    fn outage_is_zero_without_interferers() {
        let p = params_l(0.0);
        assert_eq!(outage_probability(&p, 1.0).unwrap(), 0.0);
        assert_eq!(outage_probability(&p, 1e6).unwrap(), 0.0);
    }

    #[test]
    fn outage_reference_point() {
        let p = params_l(0.1);
        assert_rel(outage_probability(&p, 1.0).unwrap(), P_OUT_L01_B1, 1e-14);
    }

    #[test]
    fn outage_vanishes_with_threshold() {
        let p = params_l(0.1);
        let mut last = outage_probability(&p, 1.0).unwrap();
        for exp in 1..=12 {
            let beta = 10f64.powi(-exp);
            let next = outage_probability(&p, beta).unwrap();
            assert!(next < last, "not monotone at beta = {beta}");
            last = next;
        }
        assert!(last < 1e-6);
    }

    #[test]
    fn outage_rejects_nonpositive_beta() {
        let p = params_l(0.1);
        assert!(outage_probability(&p, 0.0).is_err());
        assert!(outage_probability(&p, -1.0).is_err());
        assert!(outage_probability(&p, f64::NAN).is_err());
    }

    #[test]
    fn success_probability_cases() {
        assert_eq!(success_probability(0.0, RetryCap::Limited(0)), 1.0);
        assert_eq!(success_probability(0.5, RetryCap::Limited(1)), 0.75);
        assert_rel(success_probability(P6, RetryCap::Limited(5)), 0.9, 1e-14);
        assert_eq!(success_probability(0.99, RetryCap::Unlimited), 1.0);
    }

    #[test]
    fn expected_attempts_cases() {
        assert_eq!(expected_attempts(0.0, RetryCap::Limited(5)).unwrap(), 1.0);
        assert_eq!(expected_attempts(0.5, RetryCap::Limited(1)).unwrap(), 1.5);
        assert_rel(
            expected_attempts(P6, RetryCap::Limited(5)).unwrap(),
            ATTEMPTS_P6_M5,
            1e-14,
        );
        assert_rel(expected_attempts(0.5, RetryCap::Unlimited).unwrap(), 2.0, 1e-15);
        assert!(expected_attempts(1.0, RetryCap::Limited(5)).is_err());
        assert!(expected_attempts(1.5, RetryCap::Unlimited).is_err());
        assert!(expected_attempts(-0.1, RetryCap::Limited(5)).is_err());
    }

    #[test]
    fn throughput_reference_chain() {
        let p = params_l(0.1);
        assert_rel(
            throughput(&p, BETA_STAR_5, RetryCap::Limited(5)).unwrap(),
            T_AT_BETA_STAR_5,
            1e-13,
        );
    }

    #[test]
    fn throughput_without_interferers_is_spectral_efficiency() {
        let p = params_l(0.0);
        assert_eq!(throughput(&p, 1.0, RetryCap::Limited(0)).unwrap(), 1.0);
    }

    #[test]
    fn single_attempt_throughput_collapses() {
        // m = 0 reduces both the success factor and the attempt count.
        let p = params_l(0.2);
        for &beta in &[0.3, 1.0, 4.0] {
            let t = throughput(&p, beta, RetryCap::Limited(0)).unwrap();
            let p_out = outage_probability(&p, beta).unwrap();
            assert_rel(t, spectral_efficiency(beta) * (1.0 - p_out), 1e-14);
        }
    }

    #[test]
    fn power_consumption_reference_points() {
        let e = energy();
        assert_rel(power_consumption(&e, BETA_STAR_5, 6.0).unwrap(), PC_WORST, 1e-13);
        assert_rel(
            power_consumption(&e, BETA_STAR_5, ATTEMPTS_P6_M5).unwrap(),
            PC_EXPECTED,
            1e-13,
        );
        let unit = EnergyParams::new(0.0, 0.0, 1.0).unwrap();
        assert_eq!(power_consumption(&unit, 1.0, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn power_consumption_rejects_bad_inputs() {
        let e = energy();
        assert!(power_consumption(&e, 0.0, 1.0).is_err());
        assert!(power_consumption(&e, -2.0, 1.0).is_err());
        assert!(power_consumption(&e, 1.0, 0.5).is_err());
        assert!(power_consumption(&e, 1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn energy_efficiency_cases() {
        assert_eq!(energy_efficiency(0.0, 123.4).unwrap(), 0.0);
        assert_eq!(energy_efficiency(1.0, 1.0).unwrap(), 1.0);
        assert_rel(
            energy_efficiency(T_AT_BETA_STAR_5, PC_WORST).unwrap(),
            1.681_127_697_396_569_8e-3,
            1e-13,
        );
        assert!(energy_efficiency(1.0, 0.0).is_err());
        assert!(energy_efficiency(-1.0, 1.0).is_err());
    }

    #[test]
    fn evaluate_point_reference_chain() {
        let report = evaluate_point(
            &params_l(0.1),
            &energy(),
            BETA_STAR_5,
            RetryCap::Limited(5),
            PcModel::WorstCase,
            AttemptsModel::Exact,
        )
        .unwrap();
        assert_rel(report.p_out, P6, 1e-13);
        assert_rel(report.expected_attempts, ATTEMPTS_P6_M5, 1e-13);
        assert_rel(report.throughput, T_AT_BETA_STAR_5, 1e-13);
        assert_rel(report.pc, PC_WORST, 1e-13);
        assert_rel(report.ee, T_AT_BETA_STAR_5 / PC_WORST, 1e-12);
    }

    #[test]
    fn evaluate_point_degenerate_density() {
        let report = evaluate_point(
            &params_l(0.0),
            &energy(),
            1.0,
            RetryCap::Limited(0),
            PcModel::WorstCase,
            AttemptsModel::Exact,
        )
        .unwrap();
        assert_eq!(report.p_out, 0.0);
        assert_eq!(report.expected_attempts, 1.0);
        assert_eq!(report.throughput, 1.0);
    }

    #[test]
    fn evaluate_point_fields_are_consistent() {
        // ee * pc == throughput, and attempts/success re-derive throughput.
        let p = params_l(0.1);
        let e = energy();
        for &beta in &[0.1, 1.0, BETA_STAR_5, 40.0] {
            for cap in [RetryCap::Limited(0), RetryCap::Limited(5), RetryCap::Unlimited] {
                for pc_model in [PcModel::WorstCase, PcModel::Expected] {
                    let r =
                        evaluate_point(&p, &e, beta, cap, pc_model, AttemptsModel::Exact).unwrap();
                    assert_rel(r.ee * r.pc, r.throughput, 1e-12);
                    let t = spectral_efficiency(beta) * success_probability(r.p_out, cap)
                        / r.expected_attempts;
                    assert_rel(t, r.throughput, 1e-12);
                }
            }
        }
    }

    #[test]
    fn untruncated_attempts_model_is_an_upper_bound() {
        let p = params_l(0.1);
        let e = energy();
        let exact = evaluate_point(
            &p,
            &e,
            1.0,
            RetryCap::Limited(2),
            PcModel::Expected,
            AttemptsModel::Exact,
        )
        .unwrap();
        let approx = evaluate_point(
            &p,
            &e,
            1.0,
            RetryCap::Limited(2),
            PcModel::Expected,
            AttemptsModel::Unlimited,
        )
        .unwrap();
        assert!(approx.expected_attempts > exact.expected_attempts);
        assert!(approx.throughput < exact.throughput);
    }
}
