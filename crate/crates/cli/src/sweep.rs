//! Parameter sweeps with CSV output.
//!
//! A sweep evaluates one row per value of the swept variable. Figure presets
//! fix variable, range, fixed parameters, and columns; custom sweeps pick a
//! variable, a range, and output columns from a small registry. Rows are
//! evaluated concurrently up to `--jobs` workers and assembled in sweep
//! order, so the written file is byte-identical across runs and thread
//! counts. Infeasible points leave their cells empty instead of dropping the
//! row.

use std::path::Path;

use rayon::prelude::*;

use irs_core::config::dbm_to_linear;
use irs_core::link::{self, Direction};
use irs_core::placement::{self, RateWeights};
use irs_core::ScenarioParams;

use crate::fmt::sig6;
use crate::opts::{PresetArg, VariableArg};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Fig2a,
    Fig2b,
    Fig3a,
    Fig3b,
}

impl From<PresetArg> for Preset {
    fn from(p: PresetArg) -> Preset {
        match p {
            PresetArg::Fig2a => Preset::Fig2a,
            PresetArg::Fig2b => Preset::Fig2b,
            PresetArg::Fig3a => Preset::Fig3a,
            PresetArg::Fig3b => Preset::Fig3b,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    PfDbm,
    N,
    WDl,
    H,
    XAi,
}

impl From<VariableArg> for SweepVariable {
    fn from(v: VariableArg) -> SweepVariable {
        match v {
            VariableArg::PfDbm => SweepVariable::PfDbm,
            VariableArg::N => SweepVariable::N,
            VariableArg::WDl => SweepVariable::WDl,
            VariableArg::H => SweepVariable::H,
            VariableArg::XAi => SweepVariable::XAi,
        }
    }
}

impl SweepVariable {
    fn column_name(self) -> &'static str {
        match self {
            SweepVariable::PfDbm => "pf_dbm",
            SweepVariable::N => "n",
            SweepVariable::WDl => "w_dl",
            SweepVariable::H => "h_m",
            SweepVariable::XAi => "x_ai_m",
        }
    }
}

/// Output columns available to custom sweeps. For an `x_ai` sweep the rate
/// columns evaluate at the swept placement; for every other variable they
/// report the optimized placement's rate.
const CUSTOM_OUTPUTS: &[&str] = &[
    "rate_active_dl",
    "rate_active_ul",
    "rate_passive_dl",
    "rate_passive_ul",
    "sumrate_active",
    "sumrate_passive",
    "x_opt_active_dl_m",
    "x_subopt_active_dl_m",
];

/// One sweep: a variable, an inclusive range, and output columns.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
    pub outputs: Vec<String>,
    pub preset: Option<Preset>,
}

impl SweepSpec {
    /// The fixed sweep behind one reference figure.
    pub fn preset(p: Preset) -> SweepSpec {
        let (variable, start, stop, step, outputs): (_, f64, f64, f64, &[&str]) = match p {
            Preset::Fig2a => (
                SweepVariable::PfDbm,
                -5.0,
                25.0,
                1.0,
                &["x_opt_m", "x_subopt_m"],
            ),
            Preset::Fig2b => (
                SweepVariable::N,
                50.0,
                800.0,
                25.0,
                &["rate_active_pf0", "rate_active_pf5", "rate_passive"],
            ),
            Preset::Fig3a => (
                SweepVariable::WDl,
                0.0,
                1.0,
                0.05,
                &[
                    "sumrate_active_pf0",
                    "sumrate_active_pf5",
                    "sumrate_passive",
                ],
            ),
            Preset::Fig3b => (
                SweepVariable::H,
                1.0,
                15.0,
                0.5,
                &["sumrate_active", "sumrate_passive"],
            ),
        };
        SweepSpec {
            variable,
            start,
            stop,
            step,
            outputs: outputs.iter().map(|s| s.to_string()).collect(),
            preset: Some(p),
        }
    }

    /// A custom sweep; validates the range and the output identifiers.
    pub fn custom(
        variable: SweepVariable,
        start: f64,
        stop: f64,
        step: f64,
        outputs: Vec<String>,
    ) -> Result<SweepSpec, CliError> {
        if step <= 0.0 || step.is_nan() || !start.is_finite() || !stop.is_finite() || start > stop {
            return Err(CliError::BadArgs(format!(
                "invalid sweep range: start {start}, stop {stop}, step {step}"
            )));
        }
        let outputs = if outputs.is_empty() {
            vec!["rate_active_dl".to_string(), "rate_passive_dl".to_string()]
        } else {
            outputs
        };
        for out in &outputs {
            if !CUSTOM_OUTPUTS.contains(&out.as_str()) {
                return Err(CliError::BadArgs(format!(
                    "unknown output column `{out}`; available: {}",
                    CUSTOM_OUTPUTS.join(", ")
                )));
            }
            if variable == SweepVariable::XAi && out.starts_with("x_") {
                return Err(CliError::BadArgs(format!(
                    "output `{out}` is a placement and cannot be swept against x_ai"
                )));
            }
        }
        Ok(SweepSpec {
            variable,
            start,
            stop,
            step,
            outputs,
            preset: None,
        })
    }

    /// Swept values, start to stop inclusive; the last value snaps to `stop`
    /// when accumulation dust would overshoot it.
    pub fn values(&self) -> Vec<f64> {
        let mut vals = Vec::new();
        let mut i = 0u64;
        loop {
            let mut v = self.start + self.step * i as f64;
            if v > self.stop + self.step * 1e-9 {
                break;
            }
            if (v - self.stop).abs() <= self.step * 1e-9 {
                v = self.stop;
            }
            vals.push(v);
            i += 1;
        }
        vals
    }
}

/// Sweep output: a header plus one row of optional cells per swept value.
#[derive(Debug, Clone)]
pub struct SweepTable {
    pub header: Vec<String>,
    /// Each row starts with the swept value; empty cells are None.
    pub rows: Vec<Vec<Option<f64>>>,
}

/// Map infeasibility to an empty cell; propagate anything else.
fn cell(r: Result<f64, irs_core::Error>) -> Result<Option<f64>, irs_core::Error> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_infeasibility() => Ok(None),
        Err(e) => Err(e),
    }
}

fn with_pf_dbm(params: &ScenarioParams, pf_dbm: f64) -> ScenarioParams {
    let mut p = params.clone();
    p.irs_amp_power_mw = dbm_to_linear(pf_dbm).expect("finite literal");
    p
}

fn preset_row(
    preset: Preset,
    value: f64,
    base: &ScenarioParams,
) -> Result<Vec<Option<f64>>, irs_core::Error> {
    let half = RateWeights::new(0.5, 0.5).expect("constant weights");
    match preset {
        Preset::Fig2a => {
            let p = with_pf_dbm(base, value);
            Ok(vec![
                Some(value),
                cell(placement::optimize_active_dl(&p).map(|r| r.x_ai_star_m))?,
                cell(placement::suboptimal_active_dl(&p).map(|r| r.x_ai_star_m))?,
            ])
        }
        Preset::Fig2b => {
            let p = base.clone().with_num_elements(value.round() as usize);
            let p0 = with_pf_dbm(&p, 0.0);
            let p5 = with_pf_dbm(&p, 5.0);
            Ok(vec![
                Some(value),
                cell(placement::optimize_active_dl(&p0).map(|r| r.objective_bits))?,
                cell(placement::optimize_active_dl(&p5).map(|r| r.objective_bits))?,
                cell(
                    placement::optimize_passive(&p, Direction::Downlink).map(|r| r.objective_bits),
                )?,
            ])
        }
        Preset::Fig3a => {
            let w = RateWeights::from_dl(value.clamp(0.0, 1.0))?;
            let p0 = with_pf_dbm(base, 0.0);
            let p5 = with_pf_dbm(base, 5.0);
            Ok(vec![
                Some(value),
                cell(placement::optimize_active_sum(&p0, w).map(|r| r.objective_bits))?,
                cell(placement::optimize_active_sum(&p5, w).map(|r| r.objective_bits))?,
                cell(placement::optimize_passive_sum(base, w).map(|r| r.objective_bits))?,
            ])
        }
        Preset::Fig3b => {
            let mut p = base.clone();
            p.irs_altitude_m = value;
            Ok(vec![
                Some(value),
                cell(placement::optimize_active_sum(&p, half).map(|r| r.objective_bits))?,
                cell(placement::optimize_passive_sum(&p, half).map(|r| r.objective_bits))?,
            ])
        }
    }
}

fn apply_variable(
    variable: SweepVariable,
    value: f64,
    base: &ScenarioParams,
) -> (ScenarioParams, Option<f64>, Option<f64>) {
    let mut p = base.clone();
    let mut w_dl_override = None;
    let mut x_point = None;
    match variable {
        SweepVariable::PfDbm => p.irs_amp_power_mw = dbm_to_linear(value).unwrap_or(f64::NAN),
        SweepVariable::N => p.set_num_elements(value.round().max(1.0) as usize),
        SweepVariable::WDl => w_dl_override = Some(value),
        SweepVariable::H => p.irs_altitude_m = value,
        SweepVariable::XAi => x_point = Some(value),
    }
    (p, w_dl_override, x_point)
}

fn point_rate(
    x: f64,
    mode_active: bool,
    direction: Direction,
    p: &ScenarioParams,
) -> Result<f64, irs_core::Error> {
    if mode_active {
        Ok(link::active_snr(x, direction, p)?.rate_bps_hz)
    } else {
        Ok(link::passive_snr(x, direction, p)?.rate_bps_hz)
    }
}

fn custom_cell(
    output: &str,
    p: &ScenarioParams,
    weights: RateWeights,
    x_point: Option<f64>,
) -> Result<Option<f64>, irs_core::Error> {
    use Direction::{Downlink, Uplink};
    let val = match (output, x_point) {
        ("rate_active_dl", Some(x)) => cell(point_rate(x, true, Downlink, p)),
        ("rate_active_dl", None) => {
            cell(placement::optimize_active(p, Downlink).map(|r| r.objective_bits))
        }
        ("rate_active_ul", Some(x)) => cell(point_rate(x, true, Uplink, p)),
        ("rate_active_ul", None) => {
            cell(placement::optimize_active(p, Uplink).map(|r| r.objective_bits))
        }
        ("rate_passive_dl", Some(x)) => cell(point_rate(x, false, Downlink, p)),
        ("rate_passive_dl", None) => {
            cell(placement::optimize_passive(p, Downlink).map(|r| r.objective_bits))
        }
        ("rate_passive_ul", Some(x)) => cell(point_rate(x, false, Uplink, p)),
        ("rate_passive_ul", None) => {
            cell(placement::optimize_passive(p, Uplink).map(|r| r.objective_bits))
        }
        ("sumrate_active", Some(x)) => cell(point_rate(x, true, Uplink, p).and_then(|ul| {
            point_rate(x, true, Downlink, p).map(|dl| weights.w_ul() * ul + weights.w_dl() * dl)
        })),
        ("sumrate_active", None) => {
            cell(placement::optimize_active_sum(p, weights).map(|r| r.objective_bits))
        }
        ("sumrate_passive", Some(x)) => cell(point_rate(x, false, Uplink, p).and_then(|ul| {
            point_rate(x, false, Downlink, p).map(|dl| weights.w_ul() * ul + weights.w_dl() * dl)
        })),
        ("sumrate_passive", None) => {
            cell(placement::optimize_passive_sum(p, weights).map(|r| r.objective_bits))
        }
        ("x_opt_active_dl_m", _) => cell(placement::optimize_active_dl(p).map(|r| r.x_ai_star_m)),
        ("x_subopt_active_dl_m", _) => {
            cell(placement::suboptimal_active_dl(p).map(|r| r.x_ai_star_m))
        }
        (other, _) => unreachable!("output `{other}` validated at spec construction"),
    };
    val
}

fn custom_row(
    spec: &SweepSpec,
    value: f64,
    base: &ScenarioParams,
    w_dl: f64,
) -> Result<Vec<Option<f64>>, irs_core::Error> {
    let (p, w_override, x_point) = apply_variable(spec.variable, value, base);
    let weights = RateWeights::from_dl(w_override.unwrap_or(w_dl))?;
    let mut row = Vec::with_capacity(spec.outputs.len() + 1);
    row.push(Some(value));
    for out in &spec.outputs {
        row.push(custom_cell(out, &p, weights, x_point)?);
    }
    Ok(row)
}

/// Fixed parameters a preset pins regardless of the loaded scenario.
fn preset_params(preset: Option<Preset>, base: &ScenarioParams) -> ScenarioParams {
    match preset {
        Some(Preset::Fig3b) => base.clone().with_num_elements(600),
        _ => base.clone(),
    }
}

/// Evaluate the sweep. Rows run concurrently on up to `jobs` workers
/// (0 = all cores) and are reduced in sweep order.
pub fn run_sweep(
    params: &ScenarioParams,
    spec: &SweepSpec,
    w_dl: f64,
    jobs: usize,
) -> Result<SweepTable, CliError> {
    let base = preset_params(spec.preset, params);
    base.validate()?;
    let values = spec.values();
    let mut header = vec![spec.variable.column_name().to_string()];
    header.extend(spec.outputs.iter().cloned());

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::BadArgs(format!("cannot build worker pool: {e}")))?;
    let rows: Result<Vec<Vec<Option<f64>>>, irs_core::Error> = pool.install(|| {
        values
            .par_iter()
            .map(|&v| match spec.preset {
                Some(preset) => preset_row(preset, v, &base),
                None => custom_row(spec, v, &base, w_dl),
            })
            .collect()
    });
    Ok(SweepTable {
        header,
        rows: rows?,
    })
}

/// Write the table as RFC-4180 style CSV with `.` decimals; empty cells for
/// infeasible points.
pub fn write_csv(table: &SweepTable, path: &Path) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path).map_err(csv_io)?;
    w.write_record(&table.header).map_err(csv_io)?;
    for row in &table.rows {
        let record: Vec<String> = row
            .iter()
            .map(|c| c.map(sig6).unwrap_or_default())
            .collect();
        w.write_record(&record).map_err(csv_io)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_io(e: csv::Error) -> CliError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::Io(io),
        other => CliError::BadArgs(format!("csv: {other:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use irs_core::default_scenario;

    #[test]
    fn values_are_inclusive_of_stop() {
        let s = SweepSpec::custom(SweepVariable::WDl, 0.0, 1.0, 0.05, vec![]).unwrap();
        let v = s.values();
        assert_eq!(v.len(), 21);
        assert_eq!(v[20], 1.0);

        let p = SweepSpec::preset(Preset::Fig2a).values();
        assert_eq!(p.len(), 31);
        assert_eq!(p[0], -5.0);
        assert_eq!(p[30], 25.0);

        // Accumulation dust must neither drop nor overshoot the endpoint.
        let dusty = SweepSpec::custom(SweepVariable::WDl, 0.1, 1.0, 0.1, vec![]).unwrap();
        let dv = dusty.values();
        assert_eq!(dv.len(), 10);
        assert_eq!(dv[9], 1.0);
    }

    #[test]
    fn custom_spec_validation() {
        assert!(SweepSpec::custom(SweepVariable::N, 100.0, 50.0, 25.0, vec![]).is_err());
        assert!(SweepSpec::custom(SweepVariable::N, 50.0, 100.0, 0.0, vec![]).is_err());
        assert!(SweepSpec::custom(
            SweepVariable::N,
            50.0,
            100.0,
            25.0,
            vec!["no_such_column".into()]
        )
        .is_err());
        assert!(SweepSpec::custom(
            SweepVariable::XAi,
            0.0,
            50.0,
            5.0,
            vec!["x_opt_active_dl_m".into()]
        )
        .is_err());
    }

    #[test]
    fn infeasible_points_leave_empty_cells() {
        // Sweep N high enough that the active IRS becomes infeasible while
        // the passive column keeps producing values.
        let mut p = default_scenario();
        p.irs_amp_power_mw = 0.02; // floor crosses 0.02 mW near N = 499
        let spec = SweepSpec::custom(
            SweepVariable::N,
            400.0,
            600.0,
            100.0,
            vec!["rate_active_dl".into(), "rate_passive_dl".into()],
        )
        .unwrap();
        let table = run_sweep(&p, &spec, 0.5, 1).unwrap();
        assert_eq!(table.rows.len(), 3);
        assert!(table.rows[0][1].is_some());
        assert!(table.rows[2][1].is_none(), "active infeasible at N = 600");
        assert!(
            table.rows.iter().all(|r| r[2].is_some()),
            "passive always feasible"
        );
    }

    #[test]
    fn x_ai_sweep_evaluates_pointwise() {
        let p = default_scenario();
        let spec = SweepSpec::custom(
            SweepVariable::XAi,
            0.0,
            50.0,
            10.0,
            vec!["rate_passive_dl".into(), "rate_active_dl".into()],
        )
        .unwrap();
        let table = run_sweep(&p, &spec, 0.5, 1).unwrap();
        assert_eq!(table.rows.len(), 6);
        // Passive pointwise rate is symmetric around the midpoint.
        let first = table.rows[0][1].unwrap();
        let last = table.rows[5][1].unwrap();
        assert!((first - last).abs() < 1e-9);
        // Active infeasible left of the minimum transmitter-side distance.
        assert!(table.rows[0][2].is_none());
        assert!(table.rows[1][2].is_some());
    }

    #[test]
    fn preset_pins_figure_parameters() {
        // fig3b fixes the element count regardless of the scenario.
        let p = default_scenario();
        let spec = SweepSpec::preset(Preset::Fig3b);
        assert_eq!(preset_params(spec.preset, &p).num_elements, 600);
        assert_eq!(preset_params(None, &p).num_elements, 400);
    }
}
