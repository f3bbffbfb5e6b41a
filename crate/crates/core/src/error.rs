//! Error type shared across the crate.

use thiserror::Error;

/// Errors raised by scenario validation, channel construction, and the
/// feasibility checks of the active-IRS power model.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter `{name}` must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("cannot express non-positive power {value_mw} mW in dBm")]
    NonPositivePower { value_mw: f64 },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("x_AI = {x_ai} m lies outside [0, {d}] m")]
    PlacementOutOfRange { x_ai: f64, d: f64 },

    #[error("steering vector length must be at least 1")]
    EmptySteeringVector,

    #[error("channel length mismatch: {left} vs {right} elements")]
    LengthMismatch { left: usize, right: usize },

    /// The active IRS cannot reach eta >= 1 anywhere on the segment.
    /// The scenario is feasible only if P_F >= N*P_A*beta/(D^2+H^2) + N*sigma_F^2.
    #[error(
        "infeasible scenario: requires P_F >= N*P_A*beta/(D^2+H^2) + N*sigma_F^2 \
         = {floor_mw} mW, got P_F = {p_f_mw} mW"
    )]
    BelowFeasibilityFloor { p_f_mw: f64, floor_mw: f64 },

    /// The amplification budget cannot even cover the amplified noise:
    /// P_F <= N*sigma_F^2.
    #[error(
        "infeasible amplifier: requires P_F > N*sigma_F^2 = {noise_mw} mW, \
         got P_F = {p_f_mw} mW"
    )]
    AmplifierBudgetExceeded { p_f_mw: f64, noise_mw: f64 },

    /// Placement too close to the transmitter: the power constraint would
    /// force the common amplification factor below one.
    #[error(
        "infeasible placement: amplification factor falls below one at \
         transmitter-side distance {x_m} m (minimum is {x_min_m} m)"
    )]
    AmpBelowOne { x_m: f64, x_min_m: f64 },

    /// Joint uplink/downlink placement has an empty feasible interval.
    #[error(
        "joint placement infeasible: minimum distances x0 + x1 = \
         {x0_m} + {x1_m} m exceed D = {d_m} m"
    )]
    JointlyInfeasible { x0_m: f64, x1_m: f64, d_m: f64 },

    #[error(
        "invalid rate weights: w_UL + w_DL must be 1 with both in [0, 1], got {w_ul} + {w_dl}"
    )]
    InvalidWeights { w_ul: f64, w_dl: f64 },

    #[error("scenario file: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors that mean "this scenario/placement cannot operate",
    /// as opposed to malformed input.
    pub fn is_infeasibility(&self) -> bool {
        matches!(
            self,
            Error::BelowFeasibilityFloor { .. }
                | Error::AmplifierBudgetExceeded { .. }
                | Error::AmpBelowOne { .. }
                | Error::JointlyInfeasible { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
