//! Active-versus-passive decision logic.
//!
//! [`exact_compare`] runs both exact placement optimizers and is the
//! authoritative verdict. [`closed_form_compare`] evaluates the dimensionless
//! downlink superiority condition
//!
//! ```text
//! N D^2 beta / (H^2 (D^2 + H^2))  >=  P_F / P_A + sigma^2 / sigma_F^2
//! ```
//!
//! which compares the two closed-form approximations of the optimized SNRs;
//! it is a fast diagnostic, valid when the minimum-distance clamp is
//! inactive and the altitude is small against D.

use crate::config::ScenarioParams;
use crate::error::Result;
use crate::link::{require_active_feasible, Direction};
use crate::placement::{
    approx_active_dl_snr, min_balance_point, optimize_active, optimize_active_sum,
    optimize_passive, optimize_passive_sum, RateWeights,
};

/// Relative rate difference below which the exact comparison declares a tie.
pub const TIE_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Winner {
    Active,
    Passive,
    Tie,
}

/// Outcome of an active-versus-passive comparison.
#[derive(Debug, Clone)]
pub struct ComparisonVerdict {
    pub winner: Winner,
    /// Geometry side of the closed-form condition, N D^2 beta / (H^2 (D^2 + H^2)).
    pub closed_form_lhs: f64,
    /// Power side of the closed-form condition, P_F / P_A + sigma^2 / sigma_F^2.
    pub closed_form_rhs: f64,
    /// True when the closed-form condition's premise holds (the downlink
    /// minimum-distance clamp is inactive).
    pub closed_form_applicable: bool,
    /// Rate achieved by the exactly optimized active IRS, when computed.
    pub exact_active_rate: Option<f64>,
    /// Rate achieved by the exactly optimized passive IRS, when computed.
    pub exact_passive_rate: Option<f64>,
}

fn closed_form_sides(params: &ScenarioParams) -> (f64, f64, bool) {
    let n = params.num_elements as f64;
    let d_sq = params.ap_user_distance_m * params.ap_user_distance_m;
    let h_sq = params.irs_altitude_m * params.irs_altitude_m;
    let lhs = n * d_sq * params.ref_gain / (h_sq * (d_sq + h_sq));
    let rhs =
        params.irs_amp_power_mw / params.ap_power_mw + params.rx_noise_mw / params.amp_noise_mw;
    let applicable = match min_balance_point(params) {
        Ok((x0, balance)) => x0 <= balance,
        Err(_) => false,
    };
    (lhs, rhs, applicable)
}

/// Evaluate the closed-form downlink superiority condition. Passive wins
/// when the geometry side reaches the power side; the two sides' ratio
/// equals the ratio of the approximate optimized SNRs.
pub fn closed_form_compare(params: &ScenarioParams) -> Result<ComparisonVerdict> {
    require_active_feasible(params.ap_power_mw, params)?;
    let (lhs, rhs, applicable) = closed_form_sides(params);
    let winner = if lhs >= rhs {
        Winner::Passive
    } else {
        Winner::Active
    };
    Ok(ComparisonVerdict {
        winner,
        closed_form_lhs: lhs,
        closed_form_rhs: rhs,
        closed_form_applicable: applicable,
        exact_active_rate: None,
        exact_passive_rate: None,
    })
}

fn verdict_from_rates(active: f64, passive: f64, params: &ScenarioParams) -> ComparisonVerdict {
    let winner = if (active - passive).abs() <= TIE_REL_TOL * active.abs().max(passive.abs()) {
        Winner::Tie
    } else if passive > active {
        Winner::Passive
    } else {
        Winner::Active
    };
    let (lhs, rhs, applicable) = closed_form_sides(params);
    ComparisonVerdict {
        winner,
        closed_form_lhs: lhs,
        closed_form_rhs: rhs,
        closed_form_applicable: applicable,
        exact_active_rate: Some(active),
        exact_passive_rate: Some(passive),
    }
}

/// Compare the exactly optimized active and passive rates in one direction.
pub fn exact_compare(params: &ScenarioParams, direction: Direction) -> Result<ComparisonVerdict> {
    let active = optimize_active(params, direction)?.objective_bits;
    let passive = optimize_passive(params, direction)?.objective_bits;
    Ok(verdict_from_rates(active, passive, params))
}

/// Compare the exactly optimized weighted sum-rates.
pub fn exact_compare_weighted(
    params: &ScenarioParams,
    weights: RateWeights,
) -> Result<ComparisonVerdict> {
    let active = optimize_active_sum(params, weights)?.objective_bits;
    let passive = optimize_passive_sum(params, weights)?.objective_bits;
    Ok(verdict_from_rates(active, passive, params))
}

/// Smallest N in `[n_min, n_max]`, scanning upward, at which the exactly
/// optimized passive rate reaches the exactly optimized active rate. `None`
/// when there is no crossover in range. The panel re-factors near-square at
/// each N; the closed forms do not depend on the factorization.
pub fn crossover_n(
    params: &ScenarioParams,
    direction: Direction,
    n_min: usize,
    n_max: usize,
) -> Result<Option<usize>> {
    for n in n_min.max(1)..=n_max {
        let trial = params.clone().with_num_elements(n);
        let active = optimize_active(&trial, direction)?.objective_bits;
        let passive = optimize_passive(&trial, direction)?.objective_bits;
        if passive >= active {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Approximate passive-over-active SNR ratio implied by the closed-form
/// condition; equals `closed_form_lhs / closed_form_rhs`.
pub fn closed_form_snr_ratio(params: &ScenarioParams) -> Result<f64> {
    let passive = endpoint_passive_snr_dl(params);
    let active = approx_active_dl_snr(params)?;
    Ok(passive / active)
}

fn endpoint_passive_snr_dl(params: &ScenarioParams) -> f64 {
    let n = params.num_elements as f64;
    let beta = params.ref_gain;
    let h_sq = params.irs_altitude_m * params.irs_altitude_m;
    let d_sq = params.ap_user_distance_m * params.ap_user_distance_m;
    params.ap_power_mw * beta * beta * n * n / (h_sq * (d_sq + h_sq) * params.rx_noise_mw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::default_scenario;

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(a.abs())
    }

    #[test]
    fn closed_form_reference_values() {
        let p = default_scenario();
        let v = closed_form_compare(&p).unwrap();
        assert!(rel_close(v.closed_form_lhs, 0.17761792164829432, 1e-12));
        assert!(rel_close(v.closed_form_rhs, 0.11, 1e-12));
        assert!(v.closed_form_applicable);
        assert_eq!(v.winner, Winner::Passive);
        assert!(v.exact_active_rate.is_none());

        let small = p.with_num_elements(100);
        let v100 = closed_form_compare(&small).unwrap();
        assert!(rel_close(v100.closed_form_lhs, 0.04440448041207358, 1e-12));
        assert_eq!(v100.winner, Winner::Active);
    }

    #[test]
    fn closed_form_ratio_identity() {
        // lhs / rhs equals the ratio of the approximate optimized SNRs.
        let p = default_scenario();
        let v = closed_form_compare(&p).unwrap();
        let ratio = closed_form_snr_ratio(&p).unwrap();
        assert!(rel_close(
            v.closed_form_lhs / v.closed_form_rhs,
            ratio,
            1e-12
        ));
        assert!(rel_close(ratio, 1.6147083786208574, 1e-12));
    }

    #[test]
    fn exact_verdicts_at_reference_sizes() {
        let p = default_scenario();
        let v = exact_compare(&p, Direction::Downlink).unwrap();
        assert_eq!(v.winner, Winner::Passive);
        let ra = v.exact_active_rate.unwrap();
        let rp = v.exact_passive_rate.unwrap();
        assert!(rp > ra);
        assert!(rel_close(ra, 17.4093, 1e-4));

        let v100 = exact_compare(&p.clone().with_num_elements(100), Direction::Downlink).unwrap();
        assert_eq!(v100.winner, Winner::Active);
    }

    #[test]
    fn weighted_margin_exceeds_single_link_margin() {
        let p = default_scenario();
        let dl = exact_compare(&p, Direction::Downlink).unwrap();
        let dl_margin = dl.exact_passive_rate.unwrap() - dl.exact_active_rate.unwrap();
        let w = exact_compare_weighted(&p, RateWeights::new(0.5, 0.5).unwrap()).unwrap();
        let w_margin = w.exact_passive_rate.unwrap() - w.exact_active_rate.unwrap();
        assert!(w_margin > dl_margin);
    }

    #[test]
    fn crossover_with_dominant_amplification_noise() {
        // Strong amplification noise pulls the crossover far below the
        // reference scenario's.
        let mut p = default_scenario();
        p.amp_noise_mw = 1e-3;
        let n_star = crossover_n(&p, Direction::Downlink, 1, 50).unwrap();
        assert!(n_star.is_some());
        assert!(n_star.unwrap() <= 30);
    }

    #[test]
    fn crossover_none_when_out_of_range() {
        let p = default_scenario();
        let n_star = crossover_n(&p, Direction::Downlink, 1, 20).unwrap();
        assert_eq!(n_star, None);
    }

    #[test]
    fn crossover_monotone_in_budget() {
        let p = default_scenario();
        let mut q = p.clone();
        q.irs_amp_power_mw = 10f64.powf(0.5);
        let low = crossover_n(&p, Direction::Downlink, 200, 350)
            .unwrap()
            .unwrap();
        let high = crossover_n(&q, Direction::Downlink, 200, 350)
            .unwrap()
            .unwrap();
        assert!(
            high >= low,
            "more amplification power keeps active competitive longer"
        );
    }
}
