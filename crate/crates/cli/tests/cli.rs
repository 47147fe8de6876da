//! End-to-end checks of the installed binary: flag parsing, file IO, CSV
//! output, and exit codes, driven through std::process.

use std::path::Path;
use std::process::{Command, Output};

use matcomp_core::{demo_matrix, numeric_rank, parse_matrix, write_matrix, RANK_REL_TOL};

fn matcomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matcomp"))
        .args(args)
        .env("RUST_BACKTRACE", "0")
        .output()
        .expect("binary must spawn")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout must be UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr must be UTF-8")
}

/// The CSV with the wall-clock column blanked, for reproducibility diffs.
fn csv_without_wall_time(csv: &str) -> String {
    csv.lines()
        .map(|line| {
            let mut fields: Vec<&str> = line.split(',').collect();
            if fields.len() == 10 && fields[9] != "wall_time_s" {
                fields[9] = "";
            }
            fields.join(",")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn fixture_file(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("fixture.txt");
    write_matrix(&path, &demo_matrix()).unwrap();
    path
}

#[test]
fn gen_writes_a_matrix_of_the_requested_rank() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("inst.txt");
    let result = matcomp(&[
        "gen", "--m", "9", "--n", "7", "--rank", "3", "--seed", "11", "--out",
        out.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "{}", stderr(&result));

    let text = std::fs::read_to_string(&out).unwrap();
    let mat = parse_matrix(&text).unwrap();
    assert_eq!((mat.nrows(), mat.ncols()), (9, 7));
    assert_eq!(numeric_rank(&mat, RANK_REL_TOL), 3);
}

#[test]
fn gen_without_out_prints_the_matrix() {
    let result = matcomp(&["gen", "--m", "4", "--n", "3", "--rank", "1", "--seed", "2"]);
    assert!(result.status.success());
    let mat = parse_matrix(&stdout(&result)).unwrap();
    assert_eq!((mat.nrows(), mat.ncols()), (4, 3));
}

#[test]
fn psi_reports_both_spaces_with_labels() {
    let dir = tempfile::tempdir().unwrap();
    let path = fixture_file(dir.path());
    let result = matcomp(&["psi", "--matrix-file", path.to_str().unwrap()]);
    assert!(result.status.success(), "{}", stderr(&result));

    let text = stdout(&result);
    assert!(text.contains("column space: ambient 6, dim 1, nonsparsity 2, sparsity 4"));
    assert!(text.contains("row space: ambient 4, dim 1, nonsparsity 4, sparsity 0"));
    let coherences: Vec<f64> = text
        .lines()
        .map(|line| {
            line.rsplit("coherence ")
                .next()
                .and_then(|v| v.parse().ok())
                .expect("each line ends in a coherence value")
        })
        .collect();
    assert!((coherences[0] - 4.8).abs() < 1e-12);
    assert!((coherences[1] - 36.0 / 23.0).abs() < 1e-12);
}

#[test]
fn run_emits_schema_csv_and_reruns_identically() {
    let args = [
        "run", "--algo", "erei", "--m", "12", "--n", "10", "--rank", "2", "--trials", "4",
        "--seed", "77",
    ];
    let first = matcomp(&args);
    assert!(first.status.success(), "{}", stderr(&first));

    let csv = stdout(&first);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "trial,seed,success,estimated_rank,total_obs,det_obs,rand_obs,bound,within_bound,wall_time_s"
    );
    assert_eq!(lines.clone().count(), 4);
    for line in lines {
        assert_eq!(line.split(',').count(), 10);
    }
    assert!(stderr(&first).contains("empirical failure rate"));

    let second = matcomp(&args);
    assert_eq!(
        csv_without_wall_time(&csv),
        csv_without_wall_time(&stdout(&second)),
        "identical configs must reproduce every column but wall_time_s"
    );
}

#[test]
fn run_writes_csv_to_the_out_path() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("records.csv");
    let fixture = fixture_file(dir.path());
    let result = matcomp(&[
        "run", "--algo", "erre", "--matrix-file", fixture.to_str().unwrap(), "--T", "2",
        "--trials", "3", "--seed", "5", "--out", out.to_str().unwrap(),
    ]);
    assert!(result.status.success(), "{}", stderr(&result));
    assert!(stdout(&result).is_empty(), "CSV must go to the file, not stdout");

    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("trial,seed,"));
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn compare_tabulates_all_three_algorithms_by_default() {
    let result = matcomp(&[
        "compare", "--m", "14", "--n", "12", "--rank", "2", "--trials", "3", "--seed", "21",
    ]);
    assert!(result.status.success(), "{}", stderr(&result));
    let text = stdout(&result);
    assert!(text.contains("algo"));
    for name in ["hn2016", "erre", "erei"] {
        assert!(text.contains(name), "missing {name} row:\n{text}");
    }
}

#[test]
fn replay_prints_the_observation_mask() {
    let result = matcomp(&["replay-paper"]);
    assert!(result.status.success(), "{}", stderr(&result));
    let text = stdout(&result);
    assert!(text.contains("R = random probe, D = deterministic, . = recovered"));
    assert!(text.contains("D D D D"));
    assert!(text.contains("observed 15 of 24 entries: 6 random, 9 deterministic"));
    assert!(text.contains("exact recovery: yes"));
}

#[test]
fn config_and_io_errors_exit_nonzero() {
    let bad_epsilon = matcomp(&[
        "run", "--algo", "erei", "--m", "8", "--n", "8", "--rank", "2", "--epsilon", "1.5",
    ]);
    assert!(!bad_epsilon.status.success());
    assert!(stderr(&bad_epsilon).contains("epsilon"));

    let missing_shape = matcomp(&["run", "--algo", "erei", "--trials", "2"]);
    assert!(!missing_shape.status.success());
    assert!(stderr(&missing_shape).contains("--m is required"));

    let unknown_algo = matcomp(&["run", "--algo", "sgd", "--m", "8", "--n", "8", "--rank", "2"]);
    assert!(!unknown_algo.status.success());

    let missing_file = matcomp(&["psi", "--matrix-file", "/nonexistent/matrix.txt"]);
    assert!(!missing_file.status.success());

    let infeasible = matcomp(&["gen", "--m", "6", "--n", "6", "--rank", "3", "--psi-u", "6"]);
    assert!(!infeasible.status.success());
    assert!(stderr(&infeasible).contains("infeasible"));
}
