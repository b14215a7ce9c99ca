//! Hybrid models between two points, the point-level convex hull and the
//! operating conditions each surviving model dominates.
//!
//! Run with `cargo run --example hybrids_and_hull`.

use rroc::analysis::{convex_hull, hybrid_segment, DominanceMap, HullInput};
use rroc::metrics::total_loss;
use rroc::sample_data;

fn main() -> rroc::Result<()> {
    let m1 = sample_data::errors("m1").over_under();
    let m3 = sample_data::errors("m3").over_under();

    let seg = hybrid_segment(m1, m3)?;
    println!(
        "segment m1-m3: slope {:.4}, crossover alpha {:.4}",
        seg.slope, seg.crossover_alpha
    );
    if let Some(oc) = seg.crossover() {
        println!(
            "  at the crossover both cost {:.4} (m1) and {:.4} (m3)",
            total_loss(m1, oc),
            total_loss(m3, oc)
        );
    }
    for w in [0.25, 0.5, 0.75] {
        let h = seg.mix(w);
        println!(
            "  {:.0}% m3 hybrid sits at ({:.3}, {:.3})",
            w * 100.0,
            h.over,
            h.under
        );
    }

    let ids = ["m1", "m2", "m3"];
    let inputs: Vec<HullInput> = ids
        .iter()
        .map(|id| HullInput::Point {
            model_id: id,
            point: sample_data::errors(id).over_under(),
        })
        .collect();
    let hull = convex_hull(&inputs)?;
    let kept: Vec<_> = hull
        .finite()
        .iter()
        .filter_map(|p| p.source.model_id())
        .collect();
    println!("\nhull of the three points plus the extremes keeps {kept:?}");

    let map = DominanceMap::from_hull(&hull)?;
    for r in &map.regions {
        println!(
            "  {}{:.4}, {:.4}]: {}",
            if r.low_closed { "[" } else { "(" },
            r.alpha_low,
            r.alpha_high,
            r.model_id()
        );
    }
    Ok(())
}
