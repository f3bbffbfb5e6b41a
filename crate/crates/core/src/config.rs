//! Scenario parameters and unit conversions.
//!
//! Every power is carried internally in linear milliwatts and every distance
//! in meters; dBm/dB conversion happens at this boundary only. A scenario can
//! be built from the built-in defaults, parsed from a flat `key = value`
//! file, or assembled field by field and validated.

use crate::error::{Error, Result};

/// Convert a level in dBm to linear milliwatts: `10^(x/10)`.
pub fn dbm_to_linear(x_dbm: f64) -> Result<f64> {
    if !x_dbm.is_finite() {
        return Err(Error::NonFinite {
            name: "dbm",
            value: x_dbm,
        });
    }
    Ok(10f64.powf(x_dbm / 10.0))
}

/// Convert linear milliwatts to dBm: `10 log10(x)`.
pub fn linear_to_dbm(x_mw: f64) -> Result<f64> {
    if !x_mw.is_finite() {
        return Err(Error::NonFinite {
            name: "mw",
            value: x_mw,
        });
    }
    if x_mw <= 0.0 {
        return Err(Error::NonPositivePower { value_mw: x_mw });
    }
    Ok(10.0 * x_mw.log10())
}

/// Convert a gain in dB to a linear power ratio: `10^(x/10)`.
pub fn db_to_linear(x_db: f64) -> Result<f64> {
    if !x_db.is_finite() {
        return Err(Error::NonFinite {
            name: "db",
            value: x_db,
        });
    }
    Ok(10f64.powf(x_db / 10.0))
}

/// Convert a linear power ratio to dB.
pub fn linear_to_db(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite {
            name: "ratio",
            value: x,
        });
    }
    if x <= 0.0 {
        return Err(Error::NonPositivePower { value_mw: x });
    }
    Ok(10.0 * x.log10())
}

/// Physical parameters of one AP--IRS--user deployment.
///
/// All powers are linear milliwatts, all lengths meters, `ref_gain` is the
/// dimensionless channel power gain at 1 m.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioParams {
    /// AP transmit power P_A \[mW\].
    pub ap_power_mw: f64,
    /// User transmit power P_U \[mW\].
    pub user_power_mw: f64,
    /// Active-IRS amplification power budget P_F \[mW\].
    pub irs_amp_power_mw: f64,
    /// Receiver noise power sigma^2 \[mW\].
    pub rx_noise_mw: f64,
    /// Per-element amplification noise power sigma_F^2 \[mW\].
    pub amp_noise_mw: f64,
    /// Reference channel power gain beta at 1 m, in (0, 1].
    pub ref_gain: f64,
    /// Carrier wavelength lambda \[m\].
    pub wavelength_m: f64,
    /// Number of reflecting elements N.
    pub num_elements: usize,
    /// Panel elements along the x axis, N_x.
    pub panel_rows: usize,
    /// Panel elements along the y axis, N_y.
    pub panel_cols: usize,
    /// Spacing between adjacent elements d_I \[m\].
    pub element_spacing_m: f64,
    /// AP--user horizontal distance D \[m\].
    pub ap_user_distance_m: f64,
    /// IRS altitude H \[m\].
    pub irs_altitude_m: f64,
}

impl Default for ScenarioParams {
    fn default() -> Self {
        ScenarioParams {
            ap_power_mw: 100.0,             // 20 dBm
            user_power_mw: 10f64.powf(1.5), // 15 dBm
            irs_amp_power_mw: 1.0,          // 0 dBm
            rx_noise_mw: 1e-8,              // -80 dBm
            amp_noise_mw: 1e-7,             // -70 dBm
            ref_gain: 1e-3,                 // -30 dB
            wavelength_m: 0.4,
            num_elements: 400,
            panel_rows: 20,
            panel_cols: 20,
            element_spacing_m: 0.2, // lambda / 2
            ap_user_distance_m: 50.0,
            irs_altitude_m: 1.5,
        }
    }
}

/// The built-in default deployment: a 20x20 panel at 1.5 m altitude halfway
/// between an AP and a user 50 m apart, 0.75 GHz carrier.
pub fn default_scenario() -> ScenarioParams {
    ScenarioParams::default()
}

impl ScenarioParams {
    /// Check every invariant; returns the first violation found.
    pub fn validate(&self) -> Result<()> {
        let positive: [(&'static str, f64); 9] = [
            ("ap_power_mw", self.ap_power_mw),
            ("user_power_mw", self.user_power_mw),
            ("irs_amp_power_mw", self.irs_amp_power_mw),
            ("rx_noise_mw", self.rx_noise_mw),
            ("amp_noise_mw", self.amp_noise_mw),
            ("wavelength_m", self.wavelength_m),
            ("element_spacing_m", self.element_spacing_m),
            ("ap_user_distance_m", self.ap_user_distance_m),
            ("irs_altitude_m", self.irs_altitude_m),
        ];
        for (name, v) in positive {
            if !v.is_finite() {
                return Err(Error::NonFinite { name, value: v });
            }
            if v <= 0.0 {
                return Err(Error::InvalidScenario(format!(
                    "{name} must be strictly positive, got {v}"
                )));
            }
        }
        if !self.ref_gain.is_finite() || self.ref_gain <= 0.0 || self.ref_gain > 1.0 {
            return Err(Error::InvalidScenario(format!(
                "ref_gain must lie in (0, 1], got {}",
                self.ref_gain
            )));
        }
        if self.num_elements == 0 || self.panel_rows == 0 || self.panel_cols == 0 {
            return Err(Error::InvalidScenario(
                "num_elements, panel_rows, panel_cols must all be at least 1".into(),
            ));
        }
        if self.panel_rows * self.panel_cols != self.num_elements {
            return Err(Error::InvalidScenario(format!(
                "panel_rows * panel_cols = {} * {} does not equal num_elements = {}",
                self.panel_rows, self.panel_cols, self.num_elements
            )));
        }
        Ok(())
    }

    /// Set N and re-factor the panel to the near-square divisor pair
    /// (largest divisor not exceeding sqrt(N) times its cofactor), keeping
    /// `panel_rows * panel_cols == num_elements` for every N.
    pub fn set_num_elements(&mut self, n: usize) {
        let (rows, cols) = near_square_factors(n.max(1));
        self.num_elements = n.max(1);
        self.panel_rows = rows;
        self.panel_cols = cols;
    }

    /// Builder-style variant of [`set_num_elements`](Self::set_num_elements).
    pub fn with_num_elements(mut self, n: usize) -> Self {
        self.set_num_elements(n);
        self
    }

    /// Parse a scenario file: one `key = value` per line, `#` comments and
    /// blank lines ignored. Powers take a `_dbm` or `_mw` suffix, the
    /// reference gain is `ref_gain` (linear) or `ref_gain_db`, everything
    /// else uses the bare field name. Later lines override earlier ones.
    /// Unset values fall back to the defaults; `element_spacing` defaults to
    /// half the (possibly overridden) wavelength and the panel re-factors to
    /// near-square when only `num_elements` is given.
    pub fn parse(text: &str) -> Result<ScenarioParams> {
        let mut p = ScenarioParams::default();
        let mut explicit_spacing = false;
        let mut explicit_panel = false;

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidScenario(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            let fval = || -> Result<f64> {
                value.parse::<f64>().map_err(|_| {
                    Error::InvalidScenario(format!("line {}: bad number `{value}`", lineno + 1))
                })
            };
            let uval = || -> Result<usize> {
                value.parse::<usize>().map_err(|_| {
                    Error::InvalidScenario(format!("line {}: bad integer `{value}`", lineno + 1))
                })
            };
            match key {
                "ap_power_dbm" => p.ap_power_mw = dbm_to_linear(fval()?)?,
                "ap_power_mw" => p.ap_power_mw = fval()?,
                "user_power_dbm" => p.user_power_mw = dbm_to_linear(fval()?)?,
                "user_power_mw" => p.user_power_mw = fval()?,
                "irs_amp_power_dbm" => p.irs_amp_power_mw = dbm_to_linear(fval()?)?,
                "irs_amp_power_mw" => p.irs_amp_power_mw = fval()?,
                "rx_noise_dbm" => p.rx_noise_mw = dbm_to_linear(fval()?)?,
                "rx_noise_mw" => p.rx_noise_mw = fval()?,
                "amp_noise_dbm" => p.amp_noise_mw = dbm_to_linear(fval()?)?,
                "amp_noise_mw" => p.amp_noise_mw = fval()?,
                "ref_gain" => p.ref_gain = fval()?,
                "ref_gain_db" => p.ref_gain = db_to_linear(fval()?)?,
                "wavelength" => p.wavelength_m = fval()?,
                "element_spacing" => {
                    p.element_spacing_m = fval()?;
                    explicit_spacing = true;
                }
                "ap_user_distance" => p.ap_user_distance_m = fval()?,
                "irs_altitude" => p.irs_altitude_m = fval()?,
                "num_elements" => {
                    p.num_elements = uval()?;
                    if !explicit_panel {
                        let (rows, cols) = near_square_factors(p.num_elements.max(1));
                        p.panel_rows = rows;
                        p.panel_cols = cols;
                    }
                }
                "panel_rows" => {
                    p.panel_rows = uval()?;
                    explicit_panel = true;
                }
                "panel_cols" => {
                    p.panel_cols = uval()?;
                    explicit_panel = true;
                }
                other => {
                    return Err(Error::InvalidScenario(format!(
                        "line {}: unknown key `{other}`",
                        lineno + 1
                    )));
                }
            }
        }
        if !explicit_spacing {
            p.element_spacing_m = p.wavelength_m / 2.0;
        }
        p.validate()?;
        Ok(p)
    }

    /// Read and parse a scenario file from disk.
    pub fn from_file(path: &std::path::Path) -> Result<ScenarioParams> {
        let text = std::fs::read_to_string(path)?;
        ScenarioParams::parse(&text)
    }
}

/// Factor n into (rows, cols) with rows the largest divisor <= sqrt(n).
fn near_square_factors(n: usize) -> (usize, usize) {
    let mut rows = (n as f64).sqrt().floor() as usize;
    while rows > 1 && !n.is_multiple_of(rows) {
        rows -= 1;
    }
    (rows.max(1), n / rows.max(1))
}
