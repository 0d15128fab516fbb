//! CLI contract tests: exit codes, output files, and byte-level determinism.

use std::fs;
use std::path::Path;

use isac_sched::experiments::cli;

fn run(args: &[&str]) -> i32 {
    cli::run(std::iter::once("isac-sched").chain(args.iter().copied()))
}

fn dir_snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut entries: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    entries
}

#[test]
fn cdf_runs_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let out_a = tmp.path().join("a");
    let out_b = tmp.path().join("b");
    for out in [&out_a, &out_b] {
        let code = run(&[
            "cdf",
            "--seed",
            "7",
            "--realizations",
            "100",
            "--set",
            "beam_counts=12",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
    }
    let a = dir_snapshot(&out_a);
    let b = dir_snapshot(&out_b);
    assert_eq!(a.len(), 6); // 2 metrics x 3 patterns
    assert_eq!(a, b, "outputs must be byte-identical across runs");
}

#[test]
fn output_files_carry_metadata_headers() {
    let tmp = tempfile::tempdir().unwrap();
    let code = run(&[
        "dwell",
        "--seed",
        "3",
        "--realizations",
        "50",
        "--set",
        "dwell_beam_counts=24",
        "--set",
        "max_tracked=4",
        "--out",
        tmp.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let mean = fs::read_to_string(tmp.path().join("tracking_dwells_mean_nl24.dat")).unwrap();
    let header = mean.lines().next().unwrap();
    assert!(header.starts_with("# tracking_dwells_mean_nl24"));
    assert!(header.contains("seed 3"));
    assert!(header.contains("config "));
    assert!(header.contains("git "));
    // two columns per data row
    for line in mean.lines().skip(1) {
        assert_eq!(line.split_whitespace().count(), 2, "row: {line}");
    }
    // orthogonal reference line D_t = 2 N_t
    let orth = fs::read_to_string(tmp.path().join("tracking_dwells_orthogonal.dat")).unwrap();
    let row: Vec<f64> = orth
        .lines()
        .nth(2)
        .unwrap()
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect();
    assert_eq!(row[1], 2.0 * row[0]);
}

#[test]
fn tradeoff_writes_duration_and_throughput_curves() {
    let tmp = tempfile::tempdir().unwrap();
    let code = run(&[
        "tradeoff",
        "--realizations",
        "50",
        "--set",
        "tradeoff_tracked=1,4",
        "--set",
        "tradeoff_tracking_beams=24",
        "--out",
        tmp.path().to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    for name in [
        "tracking_duration_proposed_nt1.dat",
        "tracking_duration_orthogonal_nt1.dat",
        "tracking_duration_proposed_nt4.dat",
        "tracking_duration_orthogonal_nt4.dat",
        "throughput_vs_search_rate_nt1.dat",
        "throughput_vs_search_rate_nt4.dat",
    ] {
        assert!(tmp.path().join(name).exists(), "missing {name}");
    }
}

#[test]
fn missing_config_file_fails_with_code_one() {
    assert_eq!(run(&["cdf", "--config", "/nonexistent/isac.cfg"]), 1);
}

#[test]
fn unknown_override_key_fails_with_code_one() {
    assert_eq!(run(&["calibrate", "--set", "bogus_key=1"]), 1);
}

#[test]
fn malformed_override_fails_with_code_one() {
    assert_eq!(run(&["calibrate", "--set", "n_pulses=twenty"]), 1);
}

#[test]
fn config_file_is_honored() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg_path = tmp.path().join("run.cfg");
    fs::write(&cfg_path, "# narrow run\nn_beams = 12\nn_tracked = 2\n").unwrap();
    let code = run(&[
        "schedule",
        "--config",
        cfg_path.to_str().unwrap(),
        "--seed",
        "11",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn calibrate_succeeds_on_defaults() {
    assert_eq!(run(&["calibrate", "--set", "n_beams=12"]), 0);
}

#[test]
fn infeasible_schedule_exits_with_code_two() {
    // 8 targets revisited 50x: the tracking subframe alone needs > 5 s
    let code = run(&[
        "schedule",
        "--set",
        "n_beams=12",
        "--set",
        "tracking_update_rate_hz=50",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn help_exits_cleanly() {
    assert_eq!(run(&["--help"]), 0);
    assert_eq!(run(&["not-a-command"]), 1);
}
