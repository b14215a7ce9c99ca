//! Models as points in RROC space: metrics, total losses and isometrics.
//!
//! Run with `cargo run --example rroc_space`.

use rroc::analysis::{best_point_for_alpha, isometric_through};
use rroc::metrics::{total_loss, OperatingCondition, RrocPoint};
use rroc::sample_data;

fn main() -> rroc::Result<()> {
    let ids = ["m1", "m2", "m3"];
    println!(
        "{:<4} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}",
        "id", "OVER", "UNDER", "MAE", "MSE", "bias", "MMSE"
    );
    let mut points: Vec<RrocPoint> = Vec::new();
    for id in ids {
        let e = sample_data::errors(id);
        let p = e.over_under();
        let m = e.metrics();
        println!(
            "{id:<4} {:>8.3} {:>8.3} {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
            p.over, p.under, m.mae, m.mse, m.bias, m.mmse
        );
        points.push(p);
    }

    let oc = OperatingCondition::new(0.8)?;
    println!(
        "\nalpha = 0.8 (under-estimation four times as costly), isometric slope {}",
        oc.slope()
    );
    for (id, p) in ids.iter().zip(&points) {
        println!("  loss({id}) = {:.4}", total_loss(*p, oc));
    }
    let best = best_point_for_alpha(&points, oc)?;
    println!("  best: {} with loss {:.4}", ids[best.index], best.loss);

    let iso = isometric_through(points[best.index], oc);
    println!(
        "  its isometric: UNDER = {:.5} + {:.2} * OVER (level {:.4})",
        iso.intercept().unwrap_or(f64::NAN),
        iso.slope(),
        iso.level
    );

    println!("\nbest model across operating conditions:");
    for alpha in [0.0, 0.2, 0.4, 0.5, 0.6, 0.7, 0.8, 1.0] {
        let b = best_point_for_alpha(&points, OperatingCondition::new(alpha)?)?;
        println!("  alpha {alpha:.1}: {} ({:.4})", ids[b.index], b.loss);
    }
    Ok(())
}
