//! Scenario assembly: file values first, then flag overrides.

use std::path::Path;

use irs_core::config::{db_to_linear, dbm_to_linear};
use irs_core::{Result, ScenarioParams};

use crate::opts::Overrides;

/// Load the scenario file (or the defaults) and apply flag overrides on top.
pub fn build_scenario(path: Option<&Path>, o: &Overrides) -> Result<ScenarioParams> {
    let mut p = match path {
        Some(path) => ScenarioParams::from_file(path)?,
        None => ScenarioParams::default(),
    };
    if let Some(v) = o.pa_dbm {
        p.ap_power_mw = dbm_to_linear(v)?;
    }
    if let Some(v) = o.pu_dbm {
        p.user_power_mw = dbm_to_linear(v)?;
    }
    if let Some(v) = o.pf_dbm {
        p.irs_amp_power_mw = dbm_to_linear(v)?;
    }
    if let Some(v) = o.rx_noise_dbm {
        p.rx_noise_mw = dbm_to_linear(v)?;
    }
    if let Some(v) = o.amp_noise_dbm {
        p.amp_noise_mw = dbm_to_linear(v)?;
    }
    if let Some(v) = o.beta_db {
        p.ref_gain = db_to_linear(v)?;
    }
    if let Some(n) = o.n {
        p.set_num_elements(n);
    }
    if let Some(nx) = o.nx {
        p.panel_rows = nx;
    }
    if let Some(ny) = o.ny {
        p.panel_cols = ny;
    }
    if let Some(v) = o.d {
        p.ap_user_distance_m = v;
    }
    if let Some(v) = o.h {
        p.irs_altitude_m = v;
    }
    if let Some(v) = o.lambda {
        p.wavelength_m = v;
        if o.spacing.is_none() {
            p.element_spacing_m = v / 2.0;
        }
    }
    if let Some(v) = o.spacing {
        p.element_spacing_m = v;
    }
    p.validate()?;
    Ok(p)
}
