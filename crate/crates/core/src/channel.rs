//! Deployment geometry and explicit LoS channel vectors.
//!
//! The AP sits at the origin, the user at (D, 0, 0), and the IRS panel is
//! centered at (x_AI, 0, H), parallel to the ground with its element axes
//! along x and y. Elevation is measured from the panel's downward normal and
//! azimuth in the ground-parallel plane, so for this in-line deployment the
//! azimuth is 0 toward the user and pi toward the AP.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::config::ScenarioParams;
use crate::error::{Error, Result};

/// Which ground terminal a channel connects to the IRS.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Ap,
    User,
}

/// Horizontal split of the AP--user segment and the induced 3-D distances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    /// AP--IRS horizontal distance x_AI \[m\].
    pub x_ai_m: f64,
    /// IRS--user horizontal distance x_IU = D - x_AI \[m\].
    pub x_iu_m: f64,
    /// AP--IRS distance d_AI = sqrt(x_AI^2 + H^2) \[m\].
    pub d_ai_m: f64,
    /// IRS--user distance d_IU = sqrt(x_IU^2 + H^2) \[m\].
    pub d_iu_m: f64,
}

/// Place the IRS at horizontal distance `x_ai_m` from the AP.
pub fn make_geometry(x_ai_m: f64, params: &ScenarioParams) -> Result<Geometry> {
    let d = params.ap_user_distance_m;
    if !x_ai_m.is_finite() || x_ai_m < 0.0 || x_ai_m > d {
        return Err(Error::PlacementOutOfRange { x_ai: x_ai_m, d });
    }
    let h = params.irs_altitude_m;
    let x_iu_m = d - x_ai_m;
    Ok(Geometry {
        x_ai_m,
        x_iu_m,
        d_ai_m: (x_ai_m * x_ai_m + h * h).sqrt(),
        d_iu_m: (x_iu_m * x_iu_m + h * h).sqrt(),
    })
}

/// Steering vector u(s, M): entry m is exp(-j pi m s), m = 0..M-1.
pub fn steering_vector(phase_arg: f64, len: usize) -> Result<Vec<Complex64>> {
    if len == 0 {
        return Err(Error::EmptySteeringVector);
    }
    Ok((0..len)
        .map(|m| Complex64::from_polar(1.0, -PI * m as f64 * phase_arg))
        .collect())
}

/// One LoS link between the IRS and a ground terminal: complex scalar gain
/// times a unit-modulus array response.
#[derive(Debug, Clone)]
pub struct LosChannel {
    /// sqrt(beta / d^2) * exp(-j 2 pi d / lambda).
    pub gain: Complex64,
    /// Length-N array response, every entry of modulus one.
    pub response: Vec<Complex64>,
    /// Azimuth angle at the IRS \[rad\]; 0 or pi in this in-line deployment.
    pub azimuth_rad: f64,
    /// Elevation angle from the panel's downward normal \[rad\].
    pub elevation_rad: f64,
}

impl LosChannel {
    pub fn len(&self) -> usize {
        self.response.len()
    }

    pub fn is_empty(&self) -> bool {
        self.response.is_empty()
    }

    /// The full channel vector, gain times response.
    pub fn full(&self) -> Vec<Complex64> {
        self.response.iter().map(|r| self.gain * r).collect()
    }

    /// Squared Euclidean norm of the full channel, computed literally.
    pub fn norm_sqr(&self) -> f64 {
        self.full().iter().map(|z| z.norm_sqr()).sum()
    }
}

/// Construct the LoS channel between the IRS and `endpoint` for a placement.
pub fn los_channel(
    endpoint: Endpoint,
    geom: &Geometry,
    params: &ScenarioParams,
) -> Result<LosChannel> {
    let (dist, dx) = match endpoint {
        // Horizontal offset of the terminal relative to the panel center,
        // projected on the panel's x axis.
        Endpoint::Ap => (geom.d_ai_m, -geom.x_ai_m),
        Endpoint::User => (geom.d_iu_m, geom.x_iu_m),
    };
    let h = params.irs_altitude_m;
    let elevation_rad = (dx.abs() / dist).asin();
    let azimuth_rad = if dx >= 0.0 { 0.0 } else { PI };
    debug_assert!((dist * dist - (dx * dx + h * h)).abs() < 1e-6 * dist * dist);

    // sin(elev)*cos(az) = dx/d and sin(elev)*sin(az) = 0 for this geometry.
    let kx = 2.0 * params.element_spacing_m / params.wavelength_m;
    let row = steering_vector(
        kx * elevation_rad.sin() * azimuth_rad.cos(),
        params.panel_rows,
    )?;
    let col = steering_vector(
        kx * elevation_rad.sin() * azimuth_rad.sin(),
        params.panel_cols,
    )?;

    // Kronecker product: index n = i * N_y + j.
    let mut response = Vec::with_capacity(params.num_elements);
    for a in &row {
        for b in &col {
            response.push(a * b);
        }
    }

    let gain = Complex64::from_polar(
        params.ref_gain.sqrt() / dist,
        -2.0 * PI * dist / params.wavelength_m,
    );
    Ok(LosChannel {
        gain,
        response,
        azimuth_rad,
        elevation_rad,
    })
}
