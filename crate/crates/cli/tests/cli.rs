//! End-to-end tests of the `irs` binary and the sweep machinery.

use std::path::PathBuf;
use std::process::{Command, Output};

use irs_cli::sweep::{run_sweep, write_csv, Preset, SweepSpec};
use irs_core::default_scenario;
use irs_core::link::Direction;
use irs_core::placement::{
    optimize_active_dl, optimize_active_sum, optimize_passive, optimize_passive_sum, RateWeights,
};

fn irs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_irs"))
        .args(args)
        .output()
        .expect("binary must run")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("irs-cli-{}-{name}", std::process::id()))
}

#[test]
fn rate_passive_at_ap_endpoint() {
    let out = irs(&[
        "rate",
        "--mode",
        "passive",
        "--direction",
        "dl",
        "--x-ai",
        "0",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("rate: 18.1165 bits/s/Hz"), "{text}");
    assert!(text.contains("SNR: 284189"), "{text}");
}

#[test]
fn rate_active_at_rule_placement() {
    let out = irs(&[
        "rate", "--mode", "active", "--x-ai", "45.4545", "--pf-dbm", "0",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("rate: 17.4093 bits/s/Hz"), "{text}");
    assert!(text.contains("amplification factor: 7.18"), "{text}");
}

#[test]
fn infeasible_budget_exits_2_and_names_the_condition() {
    let out = irs(&[
        "rate", "--mode", "active", "--x-ai", "45", "--pf-dbm", "-20",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(
        err.contains("P_F >= N*P_A*beta/(D^2+H^2) + N*sigma_F^2")
            || err.contains("P_F > N*sigma_F^2"),
        "stderr must name the violated condition: {err}"
    );
}

#[test]
fn placement_too_close_exits_2() {
    let out = irs(&["rate", "--mode", "active", "--x-ai", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("amplification factor"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn bad_arguments_exit_3() {
    assert_eq!(irs(&["rate", "--mode", "active"]).status.code(), Some(3)); // missing --x-ai
    assert_eq!(
        irs(&["rate", "--mode", "sideways", "--x-ai", "1"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(irs(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(
        irs(&["rate", "--mode", "passive", "--x-ai", "60"])
            .status
            .code(),
        Some(3),
        "x_AI beyond D is a bad argument"
    );
    assert_eq!(
        irs(&[
            "place",
            "--mode",
            "passive",
            "--w-dl",
            "0.5",
            "--method",
            "closed-form"
        ])
        .status
        .code(),
        Some(3)
    );
}

#[test]
fn unwritable_output_exits_4() {
    let out = irs(&[
        "sweep",
        "--preset",
        "fig2a",
        "--out",
        "/nonexistent-dir/sweep.csv",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn help_exits_0() {
    assert_eq!(irs(&["--help"]).status.code(), Some(0));
    assert_eq!(irs(&["sweep", "--help"]).status.code(), Some(0));
}

#[test]
fn scenario_file_and_override_precedence() {
    let path = temp_path("scenario.txt");
    std::fs::write(
        &path,
        "# test deployment\nap_power_dbm = 15\nirs_amp_power_dbm = 5\nnum_elements = 100\n",
    )
    .unwrap();
    let scenario = path.to_str().unwrap();

    // File value applies.
    let out = irs(&[
        "--scenario",
        scenario,
        "place",
        "--mode",
        "active",
        "--method",
        "closed-form",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));

    // Flag overrides the file's P_F and N: with the defaults restored the
    // rule lands at 45.4545 m.
    let out2 = irs(&[
        "--scenario",
        scenario,
        "--pf-dbm",
        "0",
        "--pa-dbm",
        "20",
        "--n",
        "400",
        "place",
        "--mode",
        "active",
        "--method",
        "closed-form",
    ]);
    assert!(out2.status.success());
    assert!(
        stdout(&out2).contains("x_AI* = 45.4545 m"),
        "{}",
        stdout(&out2)
    );

    let missing = irs(&["--scenario", "/no/such/file", "compare"]);
    assert_eq!(missing.status.code(), Some(4));

    let bad = temp_path("bad-scenario.txt");
    std::fs::write(&bad, "carrier = 2.4GHz\n").unwrap();
    let out3 = irs(&["--scenario", bad.to_str().unwrap(), "compare"]);
    assert_eq!(out3.status.code(), Some(3));

    let _ = std::fs::remove_file(&path);
    let _ = std::fs::remove_file(&bad);
}

#[test]
fn weighted_placement_reports_interior_optimum() {
    let out = irs(&["place", "--mode", "active", "--w-dl", "0.5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("feasible interval: [6.14423, 46.7752] m"), "{text}");
    assert!(text.contains("x_AI* = 40.1"), "{text}");
}

#[test]
fn compare_and_crossover_outputs() {
    let out = irs(&["compare"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("winner: passive"), "{text}");
    assert!(text.contains("closed-form test"), "{text}");

    let out_n100 = irs(&["compare", "--n", "100"]);
    assert!(
        stdout(&out_n100).contains("winner: active"),
        "{}",
        stdout(&out_n100)
    );

    let cross = irs(&["crossover", "--n-min", "230", "--n-max", "260"]);
    assert!(
        stdout(&cross).contains("crossover N* = 245"),
        "{}",
        stdout(&cross)
    );

    let none = irs(&["crossover", "--n-min", "50", "--n-max", "60"]);
    assert!(stdout(&none).contains("no crossover"), "{}", stdout(&none));
}

#[test]
fn csv_identical_across_thread_counts() {
    let p = default_scenario();
    let spec = SweepSpec::preset(Preset::Fig2a);
    let path_a = temp_path("det-a.csv");
    let path_b = temp_path("det-b.csv");
    write_csv(&run_sweep(&p, &spec, 0.5, 1).unwrap(), &path_a).unwrap();
    write_csv(&run_sweep(&p, &spec, 0.5, 4).unwrap(), &path_b).unwrap();
    let a = std::fs::read(&path_a).unwrap();
    let b = std::fs::read(&path_b).unwrap();
    assert_eq!(
        a, b,
        "sweep output must be byte-identical across thread counts"
    );
    let _ = std::fs::remove_file(&path_a);
    let _ = std::fs::remove_file(&path_b);
}

#[test]
fn preset_columns_pin_their_parameters() {
    // Each preset column must reproduce the core optimizer at the
    // parameters the preset pins.
    let p = default_scenario();

    // fig2b at N = 400: the pf0/pf5 columns equal the optimizers at 1 mW
    // and 10^0.5 mW.
    let fig2b = run_sweep(&p, &SweepSpec::preset(Preset::Fig2b), 0.5, 1).unwrap();
    let row400 = fig2b.rows.iter().find(|r| r[0] == Some(400.0)).unwrap();
    let q0 = default_scenario(); // P_F defaults to 1 mW
    assert!((row400[1].unwrap() - optimize_active_dl(&q0).unwrap().objective_bits).abs() < 1e-9);
    let mut q5 = default_scenario();
    q5.irs_amp_power_mw = 10f64.powf(0.5);
    assert!((row400[2].unwrap() - optimize_active_dl(&q5).unwrap().objective_bits).abs() < 1e-9);
    assert!(
        (row400[3].unwrap()
            - optimize_passive(&q0, Direction::Downlink)
                .unwrap()
                .objective_bits)
            .abs()
            < 1e-9
    );
    // Below the crossover the active columns win; above, the passive one.
    let row100 = fig2b.rows.iter().find(|r| r[0] == Some(100.0)).unwrap();
    assert!(row100[1].unwrap() > row100[3].unwrap());
    assert!(row400[3].unwrap() > row400[1].unwrap());

    // fig3a at w_dl = 0.5 equals the weighted optimizers.
    let fig3a = run_sweep(&p, &SweepSpec::preset(Preset::Fig3a), 0.5, 1).unwrap();
    let half = RateWeights::new(0.5, 0.5).unwrap();
    let row_half = fig3a
        .rows
        .iter()
        .find(|r| (r[0].unwrap() - 0.5).abs() < 1e-9)
        .unwrap();
    assert!(
        (row_half[1].unwrap() - optimize_active_sum(&q0, half).unwrap().objective_bits).abs()
            < 1e-9
    );
    assert!(
        (row_half[3].unwrap() - optimize_passive_sum(&q0, half).unwrap().objective_bits).abs()
            < 1e-9
    );

    // fig3b pins N = 600 and half weights.
    let fig3b = run_sweep(&p, &SweepSpec::preset(Preset::Fig3b), 0.5, 1).unwrap();
    let mut q600 = default_scenario().with_num_elements(600);
    q600.irs_altitude_m = 1.0;
    assert!(
        (fig3b.rows[0][1].unwrap() - optimize_active_sum(&q600, half).unwrap().objective_bits)
            .abs()
            < 1e-9
    );
}

#[test]
fn custom_sweep_via_binary() {
    let path = temp_path("custom.csv");
    let out = irs(&[
        "sweep",
        "--var",
        "pf-dbm",
        "--start",
        "-5",
        "--stop",
        "5",
        "--step",
        "5",
        "--outputs",
        "rate_active_dl,x_opt_active_dl_m",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "pf_dbm,rate_active_dl,x_opt_active_dl_m"
    );
    assert_eq!(text.lines().count(), 4);
    let _ = std::fs::remove_file(&path);
}
