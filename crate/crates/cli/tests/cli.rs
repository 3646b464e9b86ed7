use std::io::Write;
use std::process::{Command, Output, Stdio};

fn idemnorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idemnorm")).args(args).output().expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_idemnorm"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = idemnorm(&full);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

#[test]
fn every_subcommand_reports_json() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("trials.csv");
    let csv = csv.to_str().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["norm", "--graph", "trie"],
        vec!["classify", "--graph", "E4"],
        vec!["catalog"],
        vec!["catalog", "gee7"],
        vec!["verify-certs"],
        vec!["table"],
        vec!["paths", "--max-n", "4"],
        vec!["enumerate", "--max-m", "3", "--max-n", "3", "--check"],
        vec!["random", "--m", "3", "--n", "3", "--trials", "10", "--csv", csv],
        vec!["random", "--m", "2", "--n", "2", "--exhaustive"],
        vec!["remark56"],
        vec!["witness", "--path-n", "4"],
    ];
    for args in runs {
        let v = json(&args);
        assert_eq!(v["subcommand"], args[0]);
        assert_eq!(v["passed"], true, "{args:?}");
        for key in ["command", "inputs", "results", "versions", "seeds", "wall_clock_ms"] {
            assert!(v.get(key).is_some(), "{args:?} lacks {key}");
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(idemnorm(&["verify-certs"]).status.code(), Some(0));
    assert_eq!(idemnorm(&["verify-certs", "--tol", "1e-30"]).status.code(), Some(1));
    assert_eq!(idemnorm(&["norm", "/nonexistent/matrix.txt"]).status.code(), Some(2));
    assert_eq!(idemnorm(&["norm", "--graph", "nope"]).status.code(), Some(2));
    assert_eq!(idemnorm(&["random", "--p", "1.5"]).status.code(), Some(2));
    assert_eq!(with_stdin(&["norm", "-"], "10\n2x\n").status.code(), Some(2));
}

#[test]
fn reads_matrix_from_stdin_and_file() {
    let out = with_stdin(&["--json", "classify", "-"], "110\n011\n101\n");
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"]["label"], "at-least-eta6");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sigma.txt");
    std::fs::write(&path, "110\n011\n").unwrap();
    let out = idemnorm(&["norm", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("1.15470"), "{}", stdout(&out));
}

#[test]
fn random_csv_has_one_row_per_trial() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trials.csv");
    let out = idemnorm(&["random", "--m", "3", "--n", "4", "--trials", "7", "--seed", "5", "--csv", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_path(&path).unwrap();
    assert_eq!(reader.headers().unwrap(), vec!["trial", "lower", "upper", "converged"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 7);
    for row in rows {
        let lower: f64 = row[1].parse().unwrap();
        let upper: f64 = row[2].parse().unwrap();
        assert!(lower <= upper + 1e-12);
    }
}

#[test]
fn table_lists_the_known_values() {
    let text = stdout(&idemnorm(&["table"]));
    for value in ["1.154701", "1.207107", "1.219541", "1.224745", "1.231073", "1.285714", "1.333333"] {
        assert!(text.contains(value), "{value} missing from\n{text}");
    }
    assert!(!text.contains("FAIL"));
}

#[test]
fn paths_csv() {
    let text = stdout(&idemnorm(&["paths", "--max-n", "10"]));
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(&headers[0], "n");
    assert_eq!(&headers[1], "path_norm");
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 10);
    assert_eq!(&rows[1][1], "1.154701");
    assert_eq!(&rows[3][1], "1.231073");
    // numeric columns only up to n = 8
    assert!(!rows[7][4].is_empty());
    assert!(rows[9][4].is_empty());
}

#[test]
fn remark56_passes() {
    let out = idemnorm(&["remark56"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    for value in ["1.24131", "1.25048", "1.25655", "1.25906"] {
        assert!(text.contains(value), "{value} missing from\n{text}");
    }
}
