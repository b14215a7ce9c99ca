use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rroc::dataset::Dataset;
use rroc::report::EvaluationReport;

fn rroc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rroc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn example_csv() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/example_models.csv")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_writes_report_and_charts() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("report.json");
    let svg = dir.path().join("plot.svg");
    let out = rroc(&[
        "analyze",
        "--input",
        s(&example_csv()),
        "--alpha",
        "0.8",
        "--json",
        s(&json),
        "--svg",
        s(&svg),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: EvaluationReport =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report.schema_version, "1.0");
    assert!(report.generated_at_unix.is_some());
    let q = &report.queries[0];
    assert!((q.losses[0].loss - 10.1092).abs() < 5e-4);
    assert!((q.losses[2].loss - 6.1164).abs() < 5e-4);
    for m in &report.models {
        let n = report.n as f64;
        assert!((m.aoc - m.metrics.variance * n * n / 2.0).abs() < 1e-9 * m.aoc);
    }
    for f in ["plot.svg", "plot-density.svg", "plot-cost.svg"] {
        let text = std::fs::read_to_string(dir.path().join(f)).unwrap();
        assert!(text.starts_with("<svg"), "{f}");
    }
}

#[test]
fn reproducible_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let out = rroc(&[
            "analyze",
            "--input",
            s(&example_csv()),
            "--reproducible",
            "--json",
            s(&path),
        ]);
        assert!(out.status.success());
        std::fs::read(path).unwrap()
    };
    let a = run("a.json");
    assert_eq!(a, run("b.json"));
    assert!(!String::from_utf8(a).unwrap().contains("generated_at_unix"));
}

#[test]
fn report_goes_to_stdout_without_json_path() {
    let out = rroc(&[
        "analyze",
        "--input",
        s(&example_csv()),
        "--outputs",
        "points,hull",
        "--normalize",
    ]);
    assert!(out.status.success());
    let report: EvaluationReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.config.normalize);
    assert!(report.cost_curves.is_none() && report.densities.is_none());
    let m1 = report.model("m1").unwrap().point.unwrap();
    assert!((m1.over - 0.2569).abs() < 1e-4);
    let hull_ids: Vec<_> = report
        .hull
        .unwrap()
        .points
        .finite()
        .iter()
        .map(|p| p.source.model_id().unwrap().to_string())
        .collect();
    assert!(!hull_ids.contains(&"m2".to_string()));
}

#[test]
fn synth_round_trips_through_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("synth.csv");
    let out = rroc(&[
        "synth",
        "--dist",
        "normal:0,0.01",
        "--n",
        "1000",
        "--model",
        "constant-mean",
        "--seed",
        "5",
        "--out",
        s(&csv),
    ]);
    assert!(out.status.success());
    let first = Dataset::from_csv_path(&csv).unwrap();
    let again = dir.path().join("again.csv");
    std::fs::write(&again, first.to_csv_string().unwrap()).unwrap();
    assert_eq!(first, Dataset::from_csv_path(&again).unwrap());
    assert_eq!(std::fs::read(&csv).unwrap(), std::fs::read(&again).unwrap());

    let out = rroc(&[
        "analyze",
        "--input",
        s(&csv),
        "--outputs",
        "points",
        "--reproducible",
    ]);
    assert!(out.status.success());
    let report: EvaluationReport = serde_json::from_slice(&out.stdout).unwrap();
    let aoc = report.model("constant-mean").unwrap().aoc;
    assert!((40.0..60.0).contains(&aoc));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("never.json");

    let bad_alpha = rroc(&[
        "analyze",
        "--input",
        s(&example_csv()),
        "--alpha",
        "1.5",
        "--json",
        s(&json),
    ]);
    assert_eq!(bad_alpha.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_alpha.stderr).contains("alpha"));

    let no_actual = dir.path().join("no_actual.csv");
    std::fs::write(&no_actual, "y,predicted\n1,2\n").unwrap();
    let out = rroc(&["analyze", "--input", s(&no_actual), "--json", s(&json)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("actual"));

    let garbage = dir.path().join("garbage.csv");
    std::fs::write(&garbage, "actual,predicted\n1,2\n3,abc\n").unwrap();
    let out = rroc(&["analyze", "--input", s(&garbage), "--json", s(&json)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("row 2"));

    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "").unwrap();
    let out = rroc(&["analyze", "--input", s(&empty), "--json", s(&json)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no rows"));

    let out = rroc(&[
        "synth",
        "--dist",
        "uniform:0,1",
        "--out",
        s(&dir.path().join("u.csv")),
    ]);
    assert_eq!(out.status.code(), Some(2));

    assert!(!json.exists(), "failed runs leave no report behind");
    let leftovers: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.file_name().to_string_lossy().contains("partial"))
        .collect();
    assert!(leftovers.is_empty());
}

#[test]
fn trained_cost_curves_from_a_train_file() {
    let out = rroc(&[
        "analyze",
        "--input",
        s(&example_csv()),
        "--train",
        s(&example_csv()),
        "--outputs",
        "cost",
        "--alpha-points",
        "11",
    ]);
    assert!(out.status.success());
    let report: EvaluationReport = serde_json::from_slice(&out.stdout).unwrap();
    let curves = report.cost_curves.unwrap();
    assert_eq!(curves.len(), 12);
    assert!(curves.iter().all(|c| c.alphas.len() == 11));
}
