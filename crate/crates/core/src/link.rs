//! Reflection design and SNR/rate evaluation for a single placement.
//!
//! Two evaluation routes are provided for every case: the closed-form SNR in
//! terms of the two 3-D distances, and [`vector_snr`], which builds the
//! explicit channel vectors, aligns the cascaded phases and evaluates the
//! receive SNR literally with complex arithmetic. The two agree to floating
//! point accuracy under the LoS model; the vector route exists as an
//! independent check on the closed forms.

use num_complex::Complex64;

use crate::channel::{los_channel, make_geometry, Endpoint, Geometry, LosChannel};
use crate::config::ScenarioParams;
use crate::error::{Error, Result};

/// Whether the IRS amplifies (active) or only re-phases (passive).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Active,
    Passive,
}

/// Which terminal transmits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Downlink,
    Uplink,
}

impl Direction {
    /// Transmit power of this direction's source terminal \[mW\].
    pub fn tx_power_mw(self, params: &ScenarioParams) -> f64 {
        match self {
            Direction::Downlink => params.ap_power_mw,
            Direction::Uplink => params.user_power_mw,
        }
    }
}

/// Tolerance below one still accepted for the amplification factor, to keep
/// the exact boundary placement x = x0 feasible under rounding.
const ETA_SLACK: f64 = 1e-9;

/// Per-element phase shifts plus the common amplification factor.
#[derive(Debug, Clone)]
pub struct ReflectionDesign {
    /// Diagonal phases phi_1..phi_N \[rad\].
    pub phase_shifts: Vec<f64>,
    /// Common amplification factor eta; identically 1 in passive mode.
    pub amp_factor: f64,
    pub mode: Mode,
}

impl ReflectionDesign {
    pub fn passive(phase_shifts: Vec<f64>) -> ReflectionDesign {
        ReflectionDesign {
            phase_shifts,
            amp_factor: 1.0,
            mode: Mode::Passive,
        }
    }

    pub fn active(phase_shifts: Vec<f64>, amp_factor: f64) -> Result<ReflectionDesign> {
        if amp_factor < 1.0 - ETA_SLACK {
            return Err(Error::AmpBelowOne {
                x_m: f64::NAN,
                x_min_m: f64::NAN,
            });
        }
        Ok(ReflectionDesign {
            phase_shifts,
            amp_factor,
            mode: Mode::Active,
        })
    }
}

/// SNR, rate, and the evaluated coefficients for one placement.
#[derive(Debug, Clone)]
pub struct LinkEvaluation {
    /// Linear receive SNR.
    pub snr: f64,
    /// log2(1 + snr) \[bits/s/Hz\].
    pub rate_bps_hz: f64,
    pub direction: Direction,
    pub mode: Mode,
    /// Common amplification factor used; 1 for passive.
    pub amp_factor: f64,
    /// Denominator coefficient on the transmitter-side squared distance
    /// (beta * sigma_F^2 for active, 0 for passive).
    pub c1: f64,
    /// Coefficient on the receiver-side squared distance
    /// (P_tx * beta * sigma^2 / P_F for active, 0 for passive).
    pub c2: f64,
    /// Coefficient on the product of squared distances
    /// (sigma^2 * sigma_F^2 / P_F for active, 0 for passive).
    pub c3: f64,
}

impl LinkEvaluation {
    fn new(
        snr: f64,
        direction: Direction,
        mode: Mode,
        amp_factor: f64,
        c: (f64, f64, f64),
    ) -> Self {
        LinkEvaluation {
            snr,
            rate_bps_hz: rate_from_snr(snr),
            direction,
            mode,
            amp_factor,
            c1: c.0,
            c2: c.1,
            c3: c.2,
        }
    }
}

/// Shannon rate of a given linear SNR \[bits/s/Hz\].
pub fn rate_from_snr(snr: f64) -> f64 {
    (1.0 + snr).log2()
}

/// Phase shifts that align the cascaded channel: the n-th phase cancels the
/// sum of the n-th entries' phases of the incoming and outgoing channels, so
/// the cascade magnitude becomes the sum of per-element magnitudes.
pub fn align_phases(h_in: &LosChannel, h_out: &LosChannel) -> Result<Vec<f64>> {
    if h_in.len() != h_out.len() {
        return Err(Error::LengthMismatch {
            left: h_in.len(),
            right: h_out.len(),
        });
    }
    let full_in = h_in.full();
    let full_out = h_out.full();
    Ok(full_in
        .iter()
        .zip(&full_out)
        .map(|(a, b)| -(b.conj().arg() + a.arg()))
        .collect())
}

/// Smallest amplification power that keeps eta >= 1 achievable somewhere on
/// the segment, for a given transmitter: N * P_tx * beta / (D^2 + H^2) +
/// N * sigma_F^2.
pub fn tx_feasibility_floor(tx_power_mw: f64, params: &ScenarioParams) -> f64 {
    let n = params.num_elements as f64;
    let d = params.ap_user_distance_m;
    let h = params.irs_altitude_m;
    n * tx_power_mw * params.ref_gain / (d * d + h * h) + n * params.amp_noise_mw
}

/// Downlink feasibility floor on P_F.
pub fn feasibility_floor(params: &ScenarioParams) -> f64 {
    tx_feasibility_floor(params.ap_power_mw, params)
}

/// Error unless P_F clears the feasibility floor for this transmitter.
pub fn require_active_feasible(tx_power_mw: f64, params: &ScenarioParams) -> Result<()> {
    let floor_mw = tx_feasibility_floor(tx_power_mw, params);
    if params.irs_amp_power_mw < floor_mw {
        return Err(Error::BelowFeasibilityFloor {
            p_f_mw: params.irs_amp_power_mw,
            floor_mw,
        });
    }
    Ok(())
}

/// Minimum horizontal distance from the transmitter at which the power
/// constraint still allows eta >= 1:
/// sqrt(max{0, N * P_tx * beta / (P_F - N * sigma_F^2) - H^2}).
pub fn min_tx_side_distance(tx_power_mw: f64, params: &ScenarioParams) -> Result<f64> {
    let n = params.num_elements as f64;
    let budget = params.irs_amp_power_mw - n * params.amp_noise_mw;
    if budget <= 0.0 {
        return Err(Error::AmplifierBudgetExceeded {
            p_f_mw: params.irs_amp_power_mw,
            noise_mw: n * params.amp_noise_mw,
        });
    }
    let h = params.irs_altitude_m;
    Ok((n * tx_power_mw * params.ref_gain / budget - h * h)
        .max(0.0)
        .sqrt())
}

/// Common amplification factor fixed by the power constraint held with
/// equality: eta = sqrt(P_F / (N * (P_tx * beta / d_tx^2 + sigma_F^2))).
pub fn amp_factor(x_tx_side_m: f64, tx_power_mw: f64, params: &ScenarioParams) -> Result<f64> {
    let n = params.num_elements as f64;
    let h = params.irs_altitude_m;
    let d_sq = x_tx_side_m * x_tx_side_m + h * h;
    let eta_sq = params.irs_amp_power_mw
        / (n * (tx_power_mw * params.ref_gain / d_sq + params.amp_noise_mw));
    if eta_sq < (1.0 - ETA_SLACK) * (1.0 - ETA_SLACK) {
        let x_min_m = min_tx_side_distance(tx_power_mw, params)?;
        return Err(Error::AmpBelowOne {
            x_m: x_tx_side_m,
            x_min_m,
        });
    }
    Ok(eta_sq.sqrt())
}

/// Transmitter- and receiver-side squared distances for a direction.
fn hop_distances_sq(geom: &Geometry, direction: Direction) -> (f64, f64) {
    match direction {
        Direction::Downlink => (geom.d_ai_m * geom.d_ai_m, geom.d_iu_m * geom.d_iu_m),
        Direction::Uplink => (geom.d_iu_m * geom.d_iu_m, geom.d_ai_m * geom.d_ai_m),
    }
}

fn active_coeffs(tx_power_mw: f64, params: &ScenarioParams) -> (f64, f64, f64) {
    let beta = params.ref_gain;
    let p_f = params.irs_amp_power_mw;
    (
        beta * params.amp_noise_mw,
        tx_power_mw * beta * params.rx_noise_mw / p_f,
        params.rx_noise_mw * params.amp_noise_mw / p_f,
    )
}

/// Closed-form active SNR at a placement, with no feasibility check.
/// Callers are responsible for staying on the feasible interval.
pub(crate) fn active_snr_value(
    geom: &Geometry,
    direction: Direction,
    params: &ScenarioParams,
) -> f64 {
    let tx = direction.tx_power_mw(params);
    let (c1, c2, c3) = active_coeffs(tx, params);
    let (d_tx_sq, d_rx_sq) = hop_distances_sq(geom, direction);
    let n = params.num_elements as f64;
    let beta = params.ref_gain;
    tx * beta * beta * n / (c1 * d_tx_sq + c2 * d_rx_sq + c3 * d_tx_sq * d_rx_sq)
}

/// Closed-form passive SNR at a placement:
/// P_tx * beta^2 * N^2 / (d_AI^2 * d_IU^2 * sigma^2).
pub(crate) fn passive_snr_value(
    geom: &Geometry,
    direction: Direction,
    params: &ScenarioParams,
) -> f64 {
    let tx = direction.tx_power_mw(params);
    let n = params.num_elements as f64;
    let beta = params.ref_gain;
    let d_ai_sq = geom.d_ai_m * geom.d_ai_m;
    let d_iu_sq = geom.d_iu_m * geom.d_iu_m;
    tx * beta * beta * n * n / (d_ai_sq * d_iu_sq * params.rx_noise_mw)
}

/// Active-IRS receive SNR and rate at x_AI, via the closed form.
pub fn active_snr(
    x_ai_m: f64,
    direction: Direction,
    params: &ScenarioParams,
) -> Result<LinkEvaluation> {
    let geom = make_geometry(x_ai_m, params)?;
    let tx = direction.tx_power_mw(params);
    require_active_feasible(tx, params)?;
    let x_tx_side = match direction {
        Direction::Downlink => geom.x_ai_m,
        Direction::Uplink => geom.x_iu_m,
    };
    let eta = amp_factor(x_tx_side, tx, params)?;
    let snr = active_snr_value(&geom, direction, params);
    Ok(LinkEvaluation::new(
        snr,
        direction,
        Mode::Active,
        eta,
        active_coeffs(tx, params),
    ))
}

/// Passive-IRS receive SNR and rate at x_AI.
pub fn passive_snr(
    x_ai_m: f64,
    direction: Direction,
    params: &ScenarioParams,
) -> Result<LinkEvaluation> {
    let geom = make_geometry(x_ai_m, params)?;
    let snr = passive_snr_value(&geom, direction, params);
    Ok(LinkEvaluation::new(
        snr,
        direction,
        Mode::Passive,
        1.0,
        (0.0, 0.0, 0.0),
    ))
}

/// Receive SNR evaluated from the explicit channel vectors.
///
/// Builds both LoS channels, aligns the cascaded phases, fixes eta from the
/// literally-evaluated power constraint (active) or 1 (passive), and computes
///
/// ```text
/// P_tx |h_out^H eta Theta h_in|^2 / (||h_out^H eta Theta||^2 sigma_F^2 + sigma^2)
/// ```
///
/// with explicit complex arithmetic (the amplification-noise term is dropped
/// for passive). This is the independent check for [`active_snr`] and
/// [`passive_snr`].
pub fn vector_snr(
    x_ai_m: f64,
    direction: Direction,
    mode: Mode,
    params: &ScenarioParams,
) -> Result<LinkEvaluation> {
    let geom = make_geometry(x_ai_m, params)?;
    let h_ap = los_channel(Endpoint::Ap, &geom, params)?;
    let h_user = los_channel(Endpoint::User, &geom, params)?;
    // Incoming hop is from the transmitter, outgoing hop toward the receiver.
    let (h_in, h_out) = match direction {
        Direction::Downlink => (&h_ap, &h_user),
        Direction::Uplink => (&h_user, &h_ap),
    };
    let tx = direction.tx_power_mw(params);
    let phases = align_phases(h_in, h_out)?;

    let design = match mode {
        Mode::Passive => ReflectionDesign::passive(phases),
        Mode::Active => {
            require_active_feasible(tx, params)?;
            // Power constraint with equality, every norm evaluated literally.
            let theta_h_in_sq: f64 = h_in
                .full()
                .iter()
                .zip(&phases)
                .map(|(hn, &phi)| (Complex64::from_polar(1.0, phi) * hn).norm_sqr())
                .sum();
            let theta_eye_sq: f64 = phases
                .iter()
                .map(|&phi| Complex64::from_polar(1.0, phi).norm_sqr())
                .sum();
            let eta_sq =
                params.irs_amp_power_mw / (tx * theta_h_in_sq + params.amp_noise_mw * theta_eye_sq);
            ReflectionDesign::active(phases, eta_sq.sqrt()).map_err(|_| {
                let x_tx_side = match direction {
                    Direction::Downlink => geom.x_ai_m,
                    Direction::Uplink => geom.x_iu_m,
                };
                match min_tx_side_distance(tx, params) {
                    Ok(x_min_m) => Error::AmpBelowOne {
                        x_m: x_tx_side,
                        x_min_m,
                    },
                    Err(e) => e,
                }
            })?
        }
    };
    let eta = design.amp_factor;

    let full_in = h_in.full();
    let full_out = h_out.full();
    let cascade: Complex64 = full_out
        .iter()
        .zip(&full_in)
        .zip(&design.phase_shifts)
        .map(|((out_n, in_n), &phi)| out_n.conj() * Complex64::from_polar(eta, phi) * in_n)
        .sum();
    let signal = tx * cascade.norm_sqr();

    let snr = match mode {
        Mode::Passive => signal / params.rx_noise_mw,
        Mode::Active => {
            let out_row_sq: f64 = full_out
                .iter()
                .zip(&design.phase_shifts)
                .map(|(out_n, &phi)| (out_n.conj() * Complex64::from_polar(eta, phi)).norm_sqr())
                .sum();
            signal / (out_row_sq * params.amp_noise_mw + params.rx_noise_mw)
        }
    };
    let coeffs = match mode {
        Mode::Active => active_coeffs(tx, params),
        Mode::Passive => (0.0, 0.0, 0.0),
    };
    Ok(LinkEvaluation::new(snr, direction, mode, eta, coeffs))
}
