//! Command-line grammar.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "irs",
    about = "Achievable rates, placement optimization, and active-vs-passive \
             comparison for IRS-aided line-of-sight links",
    version
)]
pub struct Cli {
    /// Scenario file (flat `key = value` lines); defaults apply when omitted.
    #[arg(long, global = true, value_name = "FILE")]
    pub scenario: Option<PathBuf>,

    #[command(flatten)]
    pub overrides: Overrides,

    #[command(subcommand)]
    pub command: Command,
}

/// Per-parameter overrides; they win over scenario-file values.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// AP transmit power \[dBm\].
    #[arg(allow_negative_numbers = true, long, global = true, value_name = "DBM")]
    pub pa_dbm: Option<f64>,
    /// User transmit power \[dBm\].
    #[arg(allow_negative_numbers = true, long, global = true, value_name = "DBM")]
    pub pu_dbm: Option<f64>,
    /// IRS amplification power budget \[dBm\].
    #[arg(allow_negative_numbers = true, long, global = true, value_name = "DBM")]
    pub pf_dbm: Option<f64>,
    /// Receiver noise power \[dBm\].
    #[arg(allow_negative_numbers = true, long, global = true, value_name = "DBM")]
    pub rx_noise_dbm: Option<f64>,
    /// Amplification noise power per element \[dBm\].
    #[arg(allow_negative_numbers = true, long, global = true, value_name = "DBM")]
    pub amp_noise_dbm: Option<f64>,
    /// Reference channel gain at 1 m \[dB\].
    #[arg(allow_negative_numbers = true, long, global = true, value_name = "DB")]
    pub beta_db: Option<f64>,
    /// Number of reflecting elements (panel re-factors near-square).
    #[arg(long, global = true, value_name = "N")]
    pub n: Option<usize>,
    /// Panel elements along x.
    #[arg(long, global = true, value_name = "NX")]
    pub nx: Option<usize>,
    /// Panel elements along y.
    #[arg(long, global = true, value_name = "NY")]
    pub ny: Option<usize>,
    /// AP--user horizontal distance \[m\].
    #[arg(allow_negative_numbers = true, long, global = true, value_name = "M")]
    pub d: Option<f64>,
    /// IRS altitude \[m\].
    #[arg(
        allow_negative_numbers = true,
        long = "h",
        global = true,
        value_name = "M"
    )]
    pub h: Option<f64>,
    /// Carrier wavelength \[m\].
    #[arg(allow_negative_numbers = true, long, global = true, value_name = "M")]
    pub lambda: Option<f64>,
    /// Element spacing \[m\] (defaults to half the wavelength).
    #[arg(allow_negative_numbers = true, long, global = true, value_name = "M")]
    pub spacing: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Active,
    Passive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    #[value(alias = "downlink")]
    Dl,
    #[value(alias = "uplink")]
    Ul,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    /// Grid scan plus golden-section refinement.
    Exact,
    /// Closed-form placement rule, no search.
    ClosedForm,
    /// Closed-form approximation of the optimized rate (active downlink).
    Approx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PresetArg {
    Fig2a,
    Fig2b,
    Fig3a,
    Fig3b,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariableArg {
    PfDbm,
    N,
    WDl,
    H,
    XAi,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate SNR and rate for one placement.
    Rate {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "dl")]
        direction: DirectionArg,
        /// AP--IRS horizontal distance \[m\].
        #[arg(allow_negative_numbers = true, long, value_name = "M")]
        x_ai: f64,
    },
    /// Optimize the IRS placement.
    Place {
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Single-link direction; mutually exclusive with --w-dl.
        #[arg(long, value_enum, conflicts_with = "w_dl")]
        direction: Option<DirectionArg>,
        /// Downlink weight of the weighted sum-rate objective.
        #[arg(allow_negative_numbers = true, long, value_name = "W")]
        w_dl: Option<f64>,
        #[arg(long, value_enum, default_value = "exact")]
        method: MethodArg,
    },
    /// Decide which IRS type achieves the higher optimized rate.
    Compare {
        #[arg(long, value_enum, conflicts_with = "w_dl")]
        direction: Option<DirectionArg>,
        #[arg(allow_negative_numbers = true, long, value_name = "W")]
        w_dl: Option<f64>,
    },
    /// Smallest element count at which the passive IRS catches the active one.
    Crossover {
        #[arg(long, value_enum, default_value = "dl")]
        direction: DirectionArg,
        #[arg(long, default_value_t = 50)]
        n_min: usize,
        #[arg(long, default_value_t = 800)]
        n_max: usize,
    },
    /// Sweep one variable and write a CSV table.
    Sweep {
        /// Figure preset; fixes variable, range, and columns.
        #[arg(long, value_enum, conflicts_with_all = ["var", "start", "stop", "step", "outputs"])]
        preset: Option<PresetArg>,
        /// Swept variable for a custom sweep.
        #[arg(long, value_enum, requires_all = ["start", "stop", "step"])]
        var: Option<VariableArg>,
        #[arg(allow_negative_numbers = true, long)]
        start: Option<f64>,
        #[arg(allow_negative_numbers = true, long)]
        stop: Option<f64>,
        #[arg(allow_negative_numbers = true, long)]
        step: Option<f64>,
        /// Comma-separated output columns for a custom sweep.
        #[arg(long, value_delimiter = ',')]
        outputs: Vec<String>,
        /// Fixed downlink weight for weighted-sum columns.
        #[arg(allow_negative_numbers = true, long, default_value_t = 0.5)]
        w_dl: f64,
        /// Output CSV path.
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
        /// Worker threads for sweep evaluation (0 = all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}
