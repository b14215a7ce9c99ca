//! The full pipeline on a CSV: load, analyse, and summarise the JSON report.
//! This is what `rroc analyze` does.
//!
//! Run with `cargo run --example csv_report [input.csv]`.

use rroc::dataset::Dataset;
use rroc::report::{analyze, AnalysisOptions};

fn main() -> rroc::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/data/example_models.csv").to_string()
    });
    let data = Dataset::from_csv_path(&path)?;
    let options = AnalysisOptions {
        alphas: vec![0.2, 0.5, 0.8],
        ..AnalysisOptions::default()
    };
    let report = analyze(&data, None, &options)?;

    println!(
        "{path}: {} examples, {} models",
        report.n,
        report.models.len()
    );
    for m in &report.models {
        println!(
            "  {:<6} MAE {:.4}  MSE {:.4}  AOC {:.4}",
            m.model_id, m.metrics.mae, m.metrics.mse, m.aoc
        );
    }
    for q in &report.queries {
        println!(
            "alpha {:.1}: best unshifted model {} (loss {:.4})",
            q.alpha, q.best_model, q.best_loss
        );
        for l in &q.losses {
            println!(
                "    {:<6} loss {:.4}, with shift {:+.3}: {:.4}",
                l.model_id, l.loss, l.optimal_shift, l.optimal_loss
            );
        }
    }
    if let Some(d) = &report.dominance {
        let owners: Vec<_> = d.curves.regions.iter().map(|r| r.model_id()).collect();
        println!("dominance over curves: {owners:?}");
    }
    let json = report.to_json()?;
    println!(
        "report: {} bytes of JSON, schema {}",
        json.len(),
        report.schema_version
    );
    Ok(())
}
