//! End-to-end tests of the `spinsym` binary: output text, the exit-code
//! contract (0 ok, 1 usage, 2 numerical/verification failure, 3 no bound
//! state), CSV determinism, and configuration-file merging.

use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinsym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

#[test]
fn spectrum_prints_the_coulomb_ground_state() {
    let out = run(&["spectrum", "--potential", "coulomb:v=1"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "E = 0.600000000\n");
}

#[test]
fn spectrum_accepts_parameters_as_flags() {
    let out = run(&["spectrum", "--potential", "coulomb", "--v", "1"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "E = 0.600000000\n");
}

#[test]
fn spectrum_verbose_reports_the_channel_and_residual() {
    let out = run(&["spectrum", "--potential", "coulomb:v=1", "--verbose"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("E = 0.600000000"), "got: {text}");
    assert!(text.contains("(d=3 j2=1 tau=+1 spin nu=0 m=1)"), "got: {text}");
    assert!(text.contains("residual"), "got: {text}");
}

#[test]
fn repulsive_coulomb_exits_with_no_bound_state_code() {
    // In pseudo mode the effective mass is negative, so a positive Coulomb
    // coupling binds nothing.
    let out = run(&["spectrum", "--potential", "coulomb:v=1", "--mode", "pseudo"]);
    assert_eq!(code(&out), 3, "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("no discrete spectrum"), "stderr: {}", stderr(&out));
}

#[test]
fn pure_inverse_square_core_exits_with_no_bound_state_code() {
    let out = run(&["spectrum", "--potential", "kratzer:a=0.1,v=0,c=0"]);
    assert_eq!(code(&out), 3, "stderr: {}", stderr(&out));
}

#[test]
fn near_critical_log_coupling_sits_at_the_edge_of_binding() {
    let out = run(&[
        "spectrum",
        "--potential",
        "log:v=14.28389",
        "--use-published-constants",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let e: f64 = stdout(&out).trim().trim_start_matches("E = ").parse().unwrap();
    assert!(e.abs() < 1e-5, "E = {e} should be at the zero crossing");
}

#[test]
fn mixing_spec_and_flag_parameters_is_a_usage_error() {
    let out = run(&["spectrum", "--potential", "coulomb:v=1", "--v", "2"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("not both"), "stderr: {}", stderr(&out));
}

#[test]
fn bare_family_names_need_a_coupling() {
    let out = run(&["spectrum", "--potential", "linear"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains('v'), "stderr: {}", stderr(&out));
}

#[test]
fn unknown_families_list_the_known_ones() {
    let out = run(&["spectrum", "--potential", "yukawa:v=1"]);
    assert_eq!(code(&out), 1);
    let err = stderr(&out);
    assert!(err.contains("oscillator") && err.contains("log"), "stderr: {err}");
}

#[test]
fn invalid_channel_flags_are_usage_errors() {
    let out = run(&["spectrum", "--potential", "coulomb:v=1", "--j2", "2"]);
    assert_eq!(code(&out), 1);
    let out = run(&["spectrum", "--potential", "coulomb:v=1", "--tau", "2"]);
    assert_eq!(code(&out), 1);
    let out = run(&["spectrum", "--potential", "coulomb:v=1", "--rmax", "30"]);
    assert_eq!(code(&out), 1, "rmax without npoints must be rejected");
}

// ---------------------------------------------------------------------------
// configuration files
// ---------------------------------------------------------------------------

#[test]
fn config_values_apply_and_flags_override_them() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    fs::write(&path, "potential = coulomb\nv = 2\n").unwrap();
    let cfg = path.to_str().unwrap();

    // v = 2 gives q = 1 and a level exactly at zero.
    let out = run(&["spectrum", "--config", cfg]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "E = 0.000000000\n");

    // The flag wins over the file.
    let out = run(&["spectrum", "--config", cfg, "--v", "1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "E = 0.600000000\n");
}

#[test]
fn config_parameters_for_other_families_are_ignored() {
    // A shared config may carry kratzer parameters; a log run must not trip
    // over them.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    fs::write(&path, "a = 0.1\nc = 0.5\nv = 1\n").unwrap();
    let out = run(&["spectrum", "--potential", "log", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
}

#[test]
fn malformed_config_lines_are_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.conf");
    fs::write(&path, "potential = coulomb\nthis line has no equals\n").unwrap();
    let out = run(&["spectrum", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("line 2"), "stderr: {}", stderr(&out));
}

#[test]
fn missing_config_files_are_usage_errors() {
    let out = run(&["spectrum", "--potential", "coulomb:v=1", "--config", "/no/such/file"]);
    assert_eq!(code(&out), 1);
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

#[test]
fn sweep_csv_is_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = run(&[
            "sweep",
            "--potential",
            "log",
            "--points",
            "12",
            "--csv",
            path.to_str().unwrap(),
        ]);
        assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    }
    let bytes_a = fs::read(&a).unwrap();
    let bytes_b = fs::read(&b).unwrap();
    assert!(!bytes_a.is_empty());
    assert_eq!(bytes_a, bytes_b, "two identical runs wrote different CSV bytes");

    let text = String::from_utf8(bytes_a).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("v,E_exact,E_oracle,E_envelope,region_lo,region_hi,status")
    );
    assert_eq!(lines.count(), 12);
    assert!(!text.contains('\r'), "CSV must use LF endings");
}

#[test]
fn sweep_without_csv_writes_to_stdout() {
    let out = run(&["sweep", "--potential", "coulomb", "--vmin", "0.5", "--vmax", "2", "--points", "4"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.starts_with("v,E_exact,"), "got: {text}");
    assert_eq!(text.lines().count(), 5);
    for line in text.lines() {
        assert_eq!(line.split(',').count(), 7, "line: {line}");
    }
}

#[test]
fn sweep_oracle_column_matches_the_closed_form() {
    let out = run(&[
        "sweep", "--potential", "coulomb", "--vmin", "0.5", "--vmax", "1.5", "--points", "3",
        "--outputs", "exact,oracle",
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    for line in stdout(&out).lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        let exact: f64 = fields[1].parse().unwrap();
        let oracle: f64 = fields[2].parse().unwrap();
        assert!((exact - oracle).abs() <= 1e-6, "line: {line}");
        assert_eq!(fields[6], "ok");
    }
}

#[test]
fn sweep_rejects_an_empty_coupling_range() {
    let out = run(&["sweep", "--potential", "log", "--vmin", "5", "--vmax", "2"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn sweep_rejects_full_potential_specs() {
    let out = run(&["sweep", "--potential", "log:v=3"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("varies the coupling"), "stderr: {}", stderr(&out));
}

#[test]
fn gnuplot_script_needs_a_csv_target() {
    let dir = tempfile::tempdir().unwrap();
    let gp = dir.path().join("plot.gp");
    let out = run(&["sweep", "--potential", "log", "--gnuplot", gp.to_str().unwrap()]);
    assert_eq!(code(&out), 1);

    let csv = dir.path().join("data.csv");
    let out = run(&[
        "sweep", "--potential", "log", "--points", "8",
        "--csv", csv.to_str().unwrap(),
        "--gnuplot", gp.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let script = fs::read_to_string(&gp).unwrap();
    assert!(script.contains("data.csv"), "script should reference the CSV: {script}");
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[test]
fn verify_passes_on_the_built_in_corpus() {
    let out = run(&["verify"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("total:"), "got: {text}");
    assert!(text.contains("confirmed"), "got: {text}");
}

#[test]
fn verify_detects_injected_ordering_violations() {
    let out = run(&["verify", "--inject-offset", "5"]);
    assert_eq!(code(&out), 2, "stderr: {}", stderr(&out));
    assert!(stderr(&out).contains("violation"), "stderr: {}", stderr(&out));
}

#[test]
fn verify_reads_an_external_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cases.txt");
    fs::write(
        &path,
        "# one ordered pair\npair coulomb:v=2 :: coulomb:v=1 :: nu=0 m=1\n",
    )
    .unwrap();
    let out = run(&["verify", "--corpus", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("coulomb-vs-coulomb"), "got: {}", stdout(&out));
}

#[test]
fn malformed_corpus_lines_are_usage_errors_with_a_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cases.txt");
    fs::write(&path, "pair broken :: coulomb:v=2\n").unwrap();
    let out = run(&["verify", "--corpus", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("line 1"), "stderr: {}", stderr(&out));
}

// ---------------------------------------------------------------------------
// regions
// ---------------------------------------------------------------------------

#[test]
fn regions_prints_all_four_sign_cells() {
    let out = run(&["regions"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("e(1)"), "got: {text}");
    assert!(text.contains("u1"), "got: {text}");
    for cell in ["v > 0, mu = +m", "v > 0, mu = -m", "v < 0, mu = +m", "v < 0, mu = -m"] {
        assert!(text.contains(cell), "missing cell {cell} in: {text}");
    }
}

#[test]
fn regions_reports_the_constant_source() {
    let computed = run(&["regions"]);
    assert!(stdout(&computed).contains("[computed]"), "got: {}", stdout(&computed));
    let published = run(&["regions", "--use-published-constants"]);
    assert!(stdout(&published).contains("[published]"), "got: {}", stdout(&published));
}

// ---------------------------------------------------------------------------
// global flags
// ---------------------------------------------------------------------------

#[test]
fn help_and_version_exit_cleanly() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
    assert_eq!(code(&run(&["spectrum", "--help"])), 0);
}

#[test]
fn unknown_flags_and_missing_subcommands_are_usage_errors() {
    assert_eq!(code(&run(&[])), 1);
    assert_eq!(code(&run(&["--definitely-not-a-flag"])), 1);
    assert_eq!(code(&run(&["spectrum", "--potential", "coulomb:v=1", "--bogus"])), 1);
}
