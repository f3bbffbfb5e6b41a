//! Subcommand implementations; each returns the text to print.

use irs_core::compare::{self, Winner};
use irs_core::config::linear_to_db;
use irs_core::link::{self, Direction, Mode};
use irs_core::placement::{self, PlacementResult, RateWeights, SearchMethod};
use irs_core::ScenarioParams;

use crate::fmt::sig6;
use crate::opts::{Cli, Command, DirectionArg, MethodArg, ModeArg};
use crate::scenario::build_scenario;
use crate::sweep::{self, SweepSpec};
use crate::CliError;

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Active => Mode::Active,
            ModeArg::Passive => Mode::Passive,
        }
    }
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Direction {
        match d {
            DirectionArg::Dl => Direction::Downlink,
            DirectionArg::Ul => Direction::Uplink,
        }
    }
}

fn direction_name(d: Direction) -> &'static str {
    match d {
        Direction::Downlink => "downlink",
        Direction::Uplink => "uplink",
    }
}

pub fn run(cli: Cli) -> Result<String, CliError> {
    let params = build_scenario(cli.scenario.as_deref(), &cli.overrides)?;
    match cli.command {
        Command::Rate {
            mode,
            direction,
            x_ai,
        } => cmd_rate(&params, mode.into(), direction.into(), x_ai),
        Command::Place {
            mode,
            direction,
            w_dl,
            method,
        } => cmd_place(
            &params,
            mode.into(),
            direction.map(Into::into),
            w_dl,
            method,
        ),
        Command::Compare { direction, w_dl } => {
            cmd_compare(&params, direction.map(Into::into), w_dl)
        }
        Command::Crossover {
            direction,
            n_min,
            n_max,
        } => cmd_crossover(&params, direction.into(), n_min, n_max),
        Command::Sweep {
            preset,
            var,
            start,
            stop,
            step,
            outputs,
            w_dl,
            out,
            jobs,
        } => {
            let spec = match preset {
                Some(p) => SweepSpec::preset(p.into()),
                None => {
                    let var = var.ok_or_else(|| {
                        CliError::BadArgs("either --preset or --var is required".into())
                    })?;
                    SweepSpec::custom(
                        var.into(),
                        start.unwrap(),
                        stop.unwrap(),
                        step.unwrap(),
                        outputs,
                    )?
                }
            };
            let table = sweep::run_sweep(&params, &spec, w_dl, jobs)?;
            sweep::write_csv(&table, &out)?;
            Ok(format!(
                "wrote {} rows to {}",
                table.rows.len(),
                out.display()
            ))
        }
    }
}

fn cmd_rate(
    params: &ScenarioParams,
    mode: Mode,
    direction: Direction,
    x_ai: f64,
) -> Result<String, CliError> {
    let ev = match mode {
        Mode::Active => link::active_snr(x_ai, direction, params)?,
        Mode::Passive => link::passive_snr(x_ai, direction, params)?,
    };
    let geom = irs_core::channel::make_geometry(x_ai, params)?;
    let snr_db = linear_to_db(ev.snr)?;
    let mode_name = match mode {
        Mode::Active => "active",
        Mode::Passive => "passive",
    };
    Ok(format!(
        "mode: {mode_name}, direction: {}\n\
         x_AI = {} m (d_AI = {} m, d_IU = {} m)\n\
         amplification factor: {}\n\
         SNR: {} ({} dB)\n\
         rate: {} bits/s/Hz",
        direction_name(direction),
        sig6(x_ai),
        sig6(geom.d_ai_m),
        sig6(geom.d_iu_m),
        sig6(ev.amp_factor),
        sig6(ev.snr),
        sig6(snr_db),
        sig6(ev.rate_bps_hz),
    ))
}

fn weights_from(w_dl: f64) -> Result<RateWeights, CliError> {
    Ok(RateWeights::from_dl(w_dl)?)
}

fn cmd_place(
    params: &ScenarioParams,
    mode: Mode,
    direction: Option<Direction>,
    w_dl: Option<f64>,
    method: MethodArg,
) -> Result<String, CliError> {
    let result: PlacementResult = match (mode, w_dl) {
        (Mode::Active, None) => {
            let dir = direction.unwrap_or(Direction::Downlink);
            match method {
                MethodArg::Exact => placement::optimize_active(params, dir)?,
                MethodArg::ClosedForm => placement::suboptimal_active(params, dir)?,
                MethodArg::Approx => {
                    if dir != Direction::Downlink {
                        return Err(CliError::BadArgs(
                            "--method approx is defined for the downlink only".into(),
                        ));
                    }
                    approx_placement(params)?
                }
            }
        }
        (Mode::Passive, None) => {
            let dir = direction.unwrap_or(Direction::Downlink);
            match method {
                MethodArg::Exact => placement::optimize_passive(params, dir)?,
                MethodArg::ClosedForm => closed_form_passive(params, dir)?,
                MethodArg::Approx => {
                    return Err(CliError::BadArgs(
                        "--method approx applies to the active IRS only".into(),
                    ))
                }
            }
        }
        (Mode::Active, Some(w)) => {
            if method != MethodArg::Exact {
                return Err(CliError::BadArgs(
                    "weighted sum-rate placement supports --method exact only".into(),
                ));
            }
            placement::optimize_active_sum(params, weights_from(w)?)?
        }
        (Mode::Passive, Some(w)) => {
            if method != MethodArg::Exact {
                return Err(CliError::BadArgs(
                    "weighted sum-rate placement supports --method exact only".into(),
                ));
            }
            placement::optimize_passive_sum(params, weights_from(w)?)?
        }
    };

    let method_name = match result.method {
        SearchMethod::ExactSearch => "exact search",
        SearchMethod::ClosedForm => "closed form",
        SearchMethod::Approx => "approximation",
    };
    let mut out = format!(
        "method: {method_name}\n\
         x_AI* = {} m\n\
         objective: {} bits/s/Hz\n\
         feasible interval: [{}, {}] m",
        sig6(result.x_ai_star_m),
        sig6(result.objective_bits),
        sig6(result.feasible_interval_m.0),
        sig6(result.feasible_interval_m.1),
    );
    if result.grid_points > 0 {
        out.push_str(&format!(
            "\ngrid points: {}, refinement tolerance: {} m",
            result.grid_points,
            sig6(result.refinement_tolerance_m)
        ));
    }
    if let Some(mirror) = result.mirror_x_m {
        out.push_str(&format!("\nmirror optimum: {} m", sig6(mirror)));
    }
    if let Some(endpoint) = result.endpoint_objective_bits {
        out.push_str(&format!(
            "\nendpoint closed form: {} bits/s/Hz",
            sig6(endpoint)
        ));
    }
    Ok(out)
}

/// Closed-form approximate placement report for the active downlink.
fn approx_placement(params: &ScenarioParams) -> Result<PlacementResult, CliError> {
    let snr = placement::approx_active_dl_snr(params)?;
    let rule = placement::suboptimal_active_dl(params)?;
    Ok(PlacementResult {
        objective_bits: link::rate_from_snr(snr),
        method: SearchMethod::Approx,
        ..rule
    })
}

/// Endpoint placement rule for the passive IRS.
fn closed_form_passive(
    params: &ScenarioParams,
    direction: Direction,
) -> Result<PlacementResult, CliError> {
    let exact = placement::optimize_passive(params, direction)?;
    let endpoint = exact
        .endpoint_objective_bits
        .expect("passive result carries endpoint value");
    Ok(PlacementResult {
        x_ai_star_m: 0.0,
        objective_bits: endpoint,
        method: SearchMethod::ClosedForm,
        grid_points: 0,
        refinement_tolerance_m: 0.0,
        mirror_x_m: Some(params.ap_user_distance_m),
        ..exact
    })
}

fn winner_name(w: Winner) -> &'static str {
    match w {
        Winner::Active => "active",
        Winner::Passive => "passive",
        Winner::Tie => "tie",
    }
}

fn cmd_compare(
    params: &ScenarioParams,
    direction: Option<Direction>,
    w_dl: Option<f64>,
) -> Result<String, CliError> {
    let verdict = match w_dl {
        Some(w) => compare::exact_compare_weighted(params, weights_from(w)?)?,
        None => compare::exact_compare(params, direction.unwrap_or(Direction::Downlink))?,
    };
    let closed_winner = if verdict.closed_form_lhs >= verdict.closed_form_rhs {
        "passive"
    } else {
        "active"
    };
    Ok(format!(
        "winner: {}\n\
         exact active rate: {} bits/s/Hz\n\
         exact passive rate: {} bits/s/Hz\n\
         closed-form test: lhs = {}, rhs = {} -> {} ({})",
        winner_name(verdict.winner),
        sig6(verdict.exact_active_rate.unwrap_or(f64::NAN)),
        sig6(verdict.exact_passive_rate.unwrap_or(f64::NAN)),
        sig6(verdict.closed_form_lhs),
        sig6(verdict.closed_form_rhs),
        closed_winner,
        if verdict.closed_form_applicable {
            "applicable"
        } else {
            "outside its premise"
        },
    ))
}

fn cmd_crossover(
    params: &ScenarioParams,
    direction: Direction,
    n_min: usize,
    n_max: usize,
) -> Result<String, CliError> {
    if n_min > n_max || n_min == 0 {
        return Err(CliError::BadArgs(format!(
            "crossover range [{n_min}, {n_max}] must satisfy 1 <= n_min <= n_max"
        )));
    }
    let n_star = compare::crossover_n(params, direction, n_min, n_max)?;
    Ok(match n_star {
        Some(n) => format!(
            "crossover N* = {n} (scanned N in [{n_min}, {n_max}], {})",
            direction_name(direction)
        ),
        None => format!(
            "no crossover for N in [{n_min}, {n_max}] ({})",
            direction_name(direction)
        ),
    })
}
