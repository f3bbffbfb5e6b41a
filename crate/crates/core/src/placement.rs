//! Placement optimizers for the IRS along the AP--user segment.
//!
//! Every optimizer reduces to a one-dimensional maximization of a smooth
//! rate objective over a feasible interval of x_AI. The search is a uniform
//! grid scan (the passive objective has two symmetric maxima, so a pure
//! local method is not enough) followed by golden-section refinement around
//! the best grid point. Ties break toward the lower x so repeated runs agree
//! bit for bit.

use crate::channel::make_geometry;
use crate::config::ScenarioParams;
use crate::error::{Error, Result};
use crate::link::{
    active_snr_value, min_tx_side_distance, passive_snr_value, rate_from_snr,
    require_active_feasible, Direction,
};

/// Grid resolution of the initial scan.
pub const GRID_POINTS: usize = 2048;
/// Width below which golden-section refinement stops \[m\].
pub const REFINE_TOL_M: f64 = 1e-4;

/// How a placement was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMethod {
    /// Grid scan plus golden-section refinement.
    ExactSearch,
    /// Closed-form rule, no search.
    ClosedForm,
    /// Closed-form approximation of the optimized rate.
    Approx,
}

/// Result of one placement optimization.
#[derive(Debug, Clone)]
pub struct PlacementResult {
    /// Optimizing AP--IRS horizontal distance \[m\].
    pub x_ai_star_m: f64,
    /// Achieved objective \[bits/s/Hz\]; a single rate or a weighted sum.
    pub objective_bits: f64,
    pub method: SearchMethod,
    /// Interval the optimizer searched (or the rule was clamped to) \[m\].
    pub feasible_interval_m: (f64, f64),
    /// Grid points scanned; 0 when no search ran.
    pub grid_points: usize,
    /// Refinement tolerance \[m\]; 0 when no search ran.
    pub refinement_tolerance_m: f64,
    /// The symmetric twin optimum D - x* for passive placements.
    pub mirror_x_m: Option<f64>,
    /// Closed-form objective at the endpoint placement, attached for passive
    /// optimizations as a reference value.
    pub endpoint_objective_bits: Option<f64>,
}

/// Uplink/downlink weights summing to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateWeights {
    w_ul: f64,
    w_dl: f64,
}

impl RateWeights {
    pub fn new(w_ul: f64, w_dl: f64) -> Result<RateWeights> {
        let ok = w_ul.is_finite()
            && w_dl.is_finite()
            && (0.0..=1.0).contains(&w_ul)
            && (0.0..=1.0).contains(&w_dl)
            && (w_ul + w_dl - 1.0).abs() <= 1e-9;
        if !ok {
            return Err(Error::InvalidWeights { w_ul, w_dl });
        }
        Ok(RateWeights { w_ul, w_dl })
    }

    /// Weights from the downlink share alone.
    pub fn from_dl(w_dl: f64) -> Result<RateWeights> {
        if !w_dl.is_finite() || !(0.0..=1.0).contains(&w_dl) {
            return Err(Error::InvalidWeights {
                w_ul: 1.0 - w_dl,
                w_dl,
            });
        }
        Ok(RateWeights {
            w_ul: 1.0 - w_dl,
            w_dl,
        })
    }

    pub fn w_ul(&self) -> f64 {
        self.w_ul
    }

    pub fn w_dl(&self) -> f64 {
        self.w_dl
    }
}

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
/// Returns `(x_max, f_max)` once the bracket is narrower than `tol`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    if b <= a {
        return (a, f(a));
    }
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 > f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    let xm = 0.5 * (a + b);
    (xm, f(xm))
}

/// Grid scan over `[lo, hi]` followed by golden-section refinement around
/// the best grid point. Grid evaluations are independent; the reduction is a
/// deterministic argmax with a lowest-x tie-break.
fn maximize_on(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    debug_assert!(hi >= lo);
    if hi - lo <= 0.0 {
        return (lo, f(lo));
    }
    let n = GRID_POINTS;
    let step = (hi - lo) / (n - 1) as f64;
    let mut best_i = 0usize;
    let mut best_f = f64::NEG_INFINITY;
    let mut xs = Vec::with_capacity(n);
    for i in 0..n {
        let x = if i == n - 1 { hi } else { lo + step * i as f64 };
        xs.push(x);
        let v = f(x);
        if v > best_f {
            best_f = v;
            best_i = i;
        }
    }
    let a = xs[best_i.saturating_sub(1)];
    let b = xs[(best_i + 1).min(n - 1)];
    let (xr, fr) = golden_section_max(&f, a, b, REFINE_TOL_M);
    if fr > best_f {
        (xr, fr)
    } else {
        (xs[best_i], best_f)
    }
}

fn active_rate_at(x: f64, direction: Direction, params: &ScenarioParams) -> f64 {
    let geom = make_geometry(x, params).expect("search stays inside [0, D]");
    rate_from_snr(active_snr_value(&geom, direction, params))
}

fn passive_rate_at(x: f64, direction: Direction, params: &ScenarioParams) -> f64 {
    let geom = make_geometry(x, params).expect("search stays inside [0, D]");
    rate_from_snr(passive_snr_value(&geom, direction, params))
}

/// Feasible x_AI interval for a single active direction: the transmitter-side
/// hop must keep eta >= 1.
fn active_interval(direction: Direction, params: &ScenarioParams) -> Result<(f64, f64)> {
    let d = params.ap_user_distance_m;
    let x_min = min_tx_side_distance(direction.tx_power_mw(params), params)?;
    Ok(match direction {
        Direction::Downlink => (x_min.min(d), d),
        Direction::Uplink => (0.0, d - x_min.min(d)),
    })
}

/// Exact one-dimensional search for the active-IRS rate in one direction.
pub fn optimize_active(params: &ScenarioParams, direction: Direction) -> Result<PlacementResult> {
    require_active_feasible(direction.tx_power_mw(params), params)?;
    let (lo, hi) = active_interval(direction, params)?;
    let (x, obj) = maximize_on(|x| active_rate_at(x, direction, params), lo, hi);
    Ok(PlacementResult {
        x_ai_star_m: x,
        objective_bits: obj,
        method: SearchMethod::ExactSearch,
        feasible_interval_m: (lo, hi),
        grid_points: GRID_POINTS,
        refinement_tolerance_m: REFINE_TOL_M,
        mirror_x_m: None,
        endpoint_objective_bits: None,
    })
}

/// Downlink shorthand for [`optimize_active`].
pub fn optimize_active_dl(params: &ScenarioParams) -> Result<PlacementResult> {
    optimize_active(params, Direction::Downlink)
}

/// Closed-form placement rule for the active IRS: put it at the
/// noise-balance point sigma^2 P_tx D / (sigma^2 P_tx + sigma_F^2 P_F)
/// from the transmitter, clamped to the feasible interval.
pub fn suboptimal_active(params: &ScenarioParams, direction: Direction) -> Result<PlacementResult> {
    let tx = direction.tx_power_mw(params);
    require_active_feasible(tx, params)?;
    let (lo, hi) = active_interval(direction, params)?;
    let d = params.ap_user_distance_m;
    let s2 = params.rx_noise_mw;
    let balance = s2 * tx * d / (s2 * tx + params.amp_noise_mw * params.irs_amp_power_mw);
    // `balance` is the distance from the transmitter; x_AI counts from the AP.
    let x = match direction {
        Direction::Downlink => balance.max(lo),
        Direction::Uplink => (d - balance).min(hi),
    };
    Ok(PlacementResult {
        x_ai_star_m: x,
        objective_bits: active_rate_at(x, direction, params),
        method: SearchMethod::ClosedForm,
        feasible_interval_m: (lo, hi),
        grid_points: 0,
        refinement_tolerance_m: 0.0,
        mirror_x_m: None,
        endpoint_objective_bits: None,
    })
}

/// Downlink shorthand for [`suboptimal_active`].
pub fn suboptimal_active_dl(params: &ScenarioParams) -> Result<PlacementResult> {
    suboptimal_active(params, Direction::Downlink)
}

/// Downlink minimum transmitter-side distance x0 paired with the
/// noise-balance point of the closed-form rule; the clamp is inactive when
/// x0 does not exceed the balance point.
pub(crate) fn min_balance_point(params: &ScenarioParams) -> Result<(f64, f64)> {
    let x0 = min_tx_side_distance(params.ap_power_mw, params)?;
    let s2 = params.rx_noise_mw;
    let balance = s2 * params.ap_power_mw * params.ap_user_distance_m
        / (s2 * params.ap_power_mw + params.amp_noise_mw * params.irs_amp_power_mw);
    Ok((x0, balance))
}

/// Closed-form approximation of the optimized active downlink SNR (linear).
///
/// When the minimum-distance clamp is inactive this is
/// (N beta / D^2) (P_A / sigma_F^2 + P_F / sigma^2); otherwise the rate at
/// the clamped placement with the product-distance term dropped.
pub fn approx_active_dl_snr(params: &ScenarioParams) -> Result<f64> {
    require_active_feasible(params.ap_power_mw, params)?;
    let (x0, balance) = min_balance_point(params)?;
    let d = params.ap_user_distance_m;
    let n = params.num_elements as f64;
    let beta = params.ref_gain;
    let p_a = params.ap_power_mw;
    let p_f = params.irs_amp_power_mw;
    let s2 = params.rx_noise_mw;
    let sf2 = params.amp_noise_mw;
    if x0 <= balance {
        Ok(n * beta / (d * d) * (p_a / sf2 + p_f / s2))
    } else {
        let c1 = beta * sf2;
        let c2 = p_a * beta * s2 / p_f;
        Ok(p_a * beta * beta * n / (c1 * x0 * x0 + c2 * (d - x0) * (d - x0)))
    }
}

fn endpoint_passive_rate(direction: Direction, params: &ScenarioParams) -> f64 {
    let tx = direction.tx_power_mw(params);
    let n = params.num_elements as f64;
    let beta = params.ref_gain;
    let h_sq = params.irs_altitude_m * params.irs_altitude_m;
    let d_sq = params.ap_user_distance_m * params.ap_user_distance_m;
    rate_from_snr(tx * beta * beta * n * n / (h_sq * (d_sq + h_sq) * params.rx_noise_mw))
}

/// Exact search for the passive-IRS rate in one direction, over the whole
/// segment. The closed-form rate of the endpoint placement (IRS directly
/// above a terminal) is attached for comparison, along with the mirror
/// optimum D - x*.
pub fn optimize_passive(params: &ScenarioParams, direction: Direction) -> Result<PlacementResult> {
    params.validate()?;
    let d = params.ap_user_distance_m;
    let (x, obj) = maximize_on(|x| passive_rate_at(x, direction, params), 0.0, d);
    Ok(PlacementResult {
        x_ai_star_m: x,
        objective_bits: obj,
        method: SearchMethod::ExactSearch,
        feasible_interval_m: (0.0, d),
        grid_points: GRID_POINTS,
        refinement_tolerance_m: REFINE_TOL_M,
        mirror_x_m: Some(d - x),
        endpoint_objective_bits: Some(endpoint_passive_rate(direction, params)),
    })
}

/// Exact search maximizing the weighted uplink/downlink sum-rate of the
/// active IRS over [x0, D - x1].
pub fn optimize_active_sum(
    params: &ScenarioParams,
    weights: RateWeights,
) -> Result<PlacementResult> {
    let x0 = min_tx_side_distance(params.ap_power_mw, params)?;
    let x1 = min_tx_side_distance(params.user_power_mw, params)?;
    let d = params.ap_user_distance_m;
    if x0 + x1 > d {
        return Err(Error::JointlyInfeasible {
            x0_m: x0,
            x1_m: x1,
            d_m: d,
        });
    }
    let f = |x: f64| {
        weights.w_ul * active_rate_at(x, Direction::Uplink, params)
            + weights.w_dl * active_rate_at(x, Direction::Downlink, params)
    };
    let (x, obj) = maximize_on(f, x0, d - x1);
    Ok(PlacementResult {
        x_ai_star_m: x,
        objective_bits: obj,
        method: SearchMethod::ExactSearch,
        feasible_interval_m: (x0, d - x1),
        grid_points: GRID_POINTS,
        refinement_tolerance_m: REFINE_TOL_M,
        mirror_x_m: None,
        endpoint_objective_bits: None,
    })
}

/// Exact search maximizing the weighted uplink/downlink sum-rate of the
/// passive IRS; the endpoint closed-form value is attached for comparison.
pub fn optimize_passive_sum(
    params: &ScenarioParams,
    weights: RateWeights,
) -> Result<PlacementResult> {
    params.validate()?;
    let d = params.ap_user_distance_m;
    let f = |x: f64| {
        weights.w_ul * passive_rate_at(x, Direction::Uplink, params)
            + weights.w_dl * passive_rate_at(x, Direction::Downlink, params)
    };
    let (x, obj) = maximize_on(f, 0.0, d);
    let endpoint = weights.w_ul * endpoint_passive_rate(Direction::Uplink, params)
        + weights.w_dl * endpoint_passive_rate(Direction::Downlink, params);
    Ok(PlacementResult {
        x_ai_star_m: x,
        objective_bits: obj,
        method: SearchMethod::ExactSearch,
        feasible_interval_m: (0.0, d),
        grid_points: GRID_POINTS,
        refinement_tolerance_m: REFINE_TOL_M,
        mirror_x_m: Some(d - x),
        endpoint_objective_bits: Some(endpoint),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::default_scenario;

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(a.abs())
    }

    #[test]
    fn golden_section_finds_parabola_peak() {
        let (x, fx) = golden_section_max(|x| -(x - 2.0) * (x - 2.0), 0.0, 5.0, 1e-6);
        assert!((x - 2.0).abs() < 1e-5);
        assert!(fx > -1e-9);
        // Degenerate bracket returns the endpoint.
        let (x, _) = golden_section_max(|x| x, 3.0, 3.0, 1e-6);
        assert_eq!(x, 3.0);
    }

    #[test]
    fn active_dl_optimum_near_closed_form_rule() {
        let p = default_scenario();
        let exact = optimize_active_dl(&p).unwrap();
        let rule = suboptimal_active_dl(&p).unwrap();
        assert!(rel_close(rule.x_ai_star_m, 500.0 / 11.0, 1e-12));
        assert!((exact.x_ai_star_m - rule.x_ai_star_m).abs() < 2.0);
        // Optimality dominance of the exact search.
        assert!(exact.objective_bits >= rule.objective_bits);
        assert!(exact.objective_bits >= 17.409300627316203 - 1e-9);
        let (lo, hi) = exact.feasible_interval_m;
        assert!(lo <= exact.x_ai_star_m && exact.x_ai_star_m <= hi);
        assert!(rel_close(lo, 6.1442330737043624, 1e-12));
        assert_eq!(hi, 50.0);
    }

    #[test]
    fn unlimited_budget_pulls_irs_to_ap() {
        let mut p = default_scenario();
        p.irs_amp_power_mw = 1e9;
        let exact = optimize_active_dl(&p).unwrap();
        assert!(exact.x_ai_star_m < 0.05);
    }

    #[test]
    fn optimum_moves_toward_ap_as_budget_grows() {
        let p = default_scenario();
        let mut last = f64::INFINITY;
        for pf_dbm in [0.0, 5.0, 10.0, 15.0, 20.0] {
            let mut q = p.clone();
            q.irs_amp_power_mw = 10f64.powf(pf_dbm / 10.0);
            let x = optimize_active_dl(&q).unwrap().x_ai_star_m;
            assert!(x <= last + 1e-3, "x* must not increase with P_F");
            last = x;
        }
    }

    #[test]
    fn suboptimal_rule_reference_values() {
        let p = default_scenario();
        let r = suboptimal_active_dl(&p).unwrap();
        assert!(rel_close(r.x_ai_star_m, 45.45454545454545, 1e-12));

        let mut q = p.clone();
        q.irs_amp_power_mw = 100.0;
        let r100 = suboptimal_active_dl(&q).unwrap();
        assert!(rel_close(r100.x_ai_star_m, 50.0 / 11.0, 1e-12));

        // Vanishing amplification noise pushes the rule to the far endpoint.
        let mut z = p.clone();
        z.amp_noise_mw = 1e-300;
        let rz = suboptimal_active_dl(&z).unwrap();
        assert!((rz.x_ai_star_m - 50.0).abs() < 1e-9);
    }

    #[test]
    fn infeasible_budget_rejected() {
        let mut p = default_scenario();
        p.irs_amp_power_mw = 0.01; // below the 0.016 mW floor
        assert!(matches!(
            optimize_active_dl(&p),
            Err(Error::BelowFeasibilityFloor { .. })
        ));
        assert!(suboptimal_active_dl(&p).is_err());
        assert!(approx_active_dl_snr(&p).is_err());
    }

    #[test]
    fn approx_rate_reference_and_quality() {
        let p = default_scenario();
        let snr = approx_active_dl_snr(&p).unwrap();
        assert!(rel_close(snr, 176000.0, 1e-12));
        // Within a few percent of the exact search at these parameters.
        let exact = optimize_active_dl(&p).unwrap();
        let exact_snr = 2f64.powf(exact.objective_bits) - 1.0;
        assert!((snr - exact_snr).abs() / exact_snr < 0.05);
    }

    #[test]
    fn approx_rate_clamped_branch() {
        // Push the noise-balance point inside the clamp: large sigma_F^2.
        let mut p = default_scenario();
        p.amp_noise_mw = 1e-4;
        let x0 = min_tx_side_distance(p.ap_power_mw, &p).unwrap();
        let balance = p.rx_noise_mw * p.ap_power_mw * p.ap_user_distance_m
            / (p.rx_noise_mw * p.ap_power_mw + p.amp_noise_mw * p.irs_amp_power_mw);
        assert!(
            x0 > balance,
            "test scenario must exercise the clamped branch"
        );
        let snr = approx_active_dl_snr(&p).unwrap();
        let c1 = p.ref_gain * p.amp_noise_mw;
        let c2 = p.ap_power_mw * p.ref_gain * p.rx_noise_mw / p.irs_amp_power_mw;
        let expect = p.ap_power_mw * p.ref_gain * p.ref_gain * 400.0
            / (c1 * x0 * x0 + c2 * (50.0 - x0) * (50.0 - x0));
        assert!(rel_close(snr, expect, 1e-12));
    }

    #[test]
    fn passive_optimum_sits_at_a_terminal() {
        let p = default_scenario();
        let r = optimize_passive(&p, Direction::Downlink).unwrap();
        // The product-distance minimum sits a fraction of a meter inside the
        // endpoint; the endpoint closed form is attached for reference.
        assert!(r.x_ai_star_m < 0.1);
        let endpoint = r.endpoint_objective_bits.unwrap();
        assert!(rel_close(endpoint, 18.11649461304209, 1e-9));
        assert!(r.objective_bits >= endpoint);
        assert!(r.objective_bits - endpoint < 0.01);
        let mirror = r.mirror_x_m.unwrap();
        assert!(rel_close(mirror, 50.0 - r.x_ai_star_m, 1e-12));
        // Mirror placement achieves the same objective.
        let mirrored = passive_rate_at(mirror, Direction::Downlink, &p);
        assert!(rel_close(mirrored, r.objective_bits, 1e-9));
    }

    #[test]
    fn passive_midpoint_far_below_endpoint() {
        let p = default_scenario();
        let mid_snr = 2f64.powf(passive_rate_at(25.0, Direction::Downlink, &p)) - 1.0;
        assert!(rel_close(mid_snr, 4066.667291493152, 1e-9));
        let end_snr = 284188.67463727086;
        let ratio = end_snr / mid_snr;
        assert!(ratio > 65.0 && ratio < 75.0);
    }

    #[test]
    fn weighted_active_degenerate_weights_recover_single_links() {
        let p = default_scenario();
        let dl_only = optimize_active_sum(&p, RateWeights::from_dl(1.0).unwrap()).unwrap();
        let dl = optimize_active_dl(&p).unwrap();
        assert!((dl_only.x_ai_star_m - dl.x_ai_star_m).abs() < 1e-3);

        let ul_only = optimize_active_sum(&p, RateWeights::from_dl(0.0).unwrap()).unwrap();
        // Mirror problem: the optimum sits toward the AP side.
        assert!(ul_only.x_ai_star_m < 25.0);
    }

    #[test]
    fn weighted_active_balanced_point_is_interior() {
        let p = default_scenario();
        let w = RateWeights::new(0.5, 0.5).unwrap();
        let r = optimize_active_sum(&p, w).unwrap();
        let (lo, hi) = r.feasible_interval_m;
        assert!(rel_close(lo, 6.1442330737043624, 1e-12));
        assert!(rel_close(hi, 46.77515634094635, 1e-12));
        let dl = optimize_active_sum(&p, RateWeights::from_dl(1.0).unwrap()).unwrap();
        let ul = optimize_active_sum(&p, RateWeights::from_dl(0.0).unwrap()).unwrap();
        assert!(r.x_ai_star_m > ul.x_ai_star_m.min(dl.x_ai_star_m) + 0.5);
        assert!(r.x_ai_star_m < ul.x_ai_star_m.max(dl.x_ai_star_m) - 0.5);
    }

    #[test]
    fn weighted_active_empty_interval_rejected() {
        let mut p = default_scenario();
        p.irs_amp_power_mw = 0.0162; // just above the floor: x0 + x1 > D
        assert!(matches!(
            optimize_active_sum(&p, RateWeights::new(0.5, 0.5).unwrap()),
            Err(Error::JointlyInfeasible { .. })
        ));
    }

    #[test]
    fn weighted_passive_matches_endpoint_rule() {
        let p = default_scenario();
        let w = RateWeights::new(0.5, 0.5).unwrap();
        let r = optimize_passive_sum(&p, w).unwrap();
        let endpoint = r.endpoint_objective_bits.unwrap();
        assert!(rel_close(endpoint, 17.286018077724066, 1e-9));
        assert!(r.objective_bits >= endpoint);
        assert!(r.x_ai_star_m < 0.1);

        let dl_only = optimize_passive_sum(&p, RateWeights::from_dl(1.0).unwrap()).unwrap();
        let dl = optimize_passive(&p, Direction::Downlink).unwrap();
        assert!((dl_only.x_ai_star_m - dl.x_ai_star_m).abs() < 1e-3);
        assert!(rel_close(dl_only.objective_bits, dl.objective_bits, 1e-12));
    }

    #[test]
    fn passive_argmax_weight_invariant() {
        let p = default_scenario();
        let reference = optimize_passive_sum(&p, RateWeights::new(0.5, 0.5).unwrap())
            .unwrap()
            .x_ai_star_m;
        for w_dl in [0.0, 0.25, 0.75, 1.0] {
            let r = optimize_passive_sum(&p, RateWeights::from_dl(w_dl).unwrap()).unwrap();
            assert!(
                (r.x_ai_star_m - reference).abs() <= 1e-3,
                "passive argmax must not depend on the weights"
            );
        }
    }

    #[test]
    fn weights_validation() {
        assert!(RateWeights::new(0.3, 0.7).is_ok());
        assert!(RateWeights::new(0.3, 0.6).is_err());
        assert!(RateWeights::new(-0.1, 1.1).is_err());
        assert!(RateWeights::from_dl(1.2).is_err());
        let w = RateWeights::from_dl(0.25).unwrap();
        assert_eq!(w.w_ul(), 0.75);
        assert_eq!(w.w_dl(), 0.25);
    }

    proptest::proptest! {
        // The exact search dominates every placement on its interval.
        #[test]
        fn exact_search_dominates_sampled_placements(frac in 0.0f64..=1.0) {
            let p = default_scenario();
            let exact = optimize_active_dl(&p).unwrap();
            let (lo, hi) = exact.feasible_interval_m;
            let x = lo + frac * (hi - lo);
            proptest::prop_assert!(
                exact.objective_bits + 1e-9 >= active_rate_at(x, Direction::Downlink, &p)
            );

            let passive = optimize_passive(&p, Direction::Downlink).unwrap();
            let xp = frac * p.ap_user_distance_m;
            proptest::prop_assert!(
                passive.objective_bits + 1e-9 >= passive_rate_at(xp, Direction::Downlink, &p)
            );
        }
    }
}
