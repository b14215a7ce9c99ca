//! The convex hull of several curves: every shifted version of every model
//! competes, and the hull says which model and shift to deploy at each alpha.
//!
//! Run with `cargo run --example curve_hull`.

use rroc::analysis::{convex_hull, DominanceMap, HullInput, HullSource};
use rroc::curve::RrocCurve;
use rroc::sample_data;

fn main() -> rroc::Result<()> {
    let curves: Vec<RrocCurve> = ["m1", "m2", "m3"]
        .iter()
        .map(|id| RrocCurve::from_errors(*id, &sample_data::errors(id)))
        .collect();
    let inputs: Vec<HullInput> = curves.iter().map(HullInput::Curve).collect();
    let hull = convex_hull(&inputs)?;

    println!("{} finite hull points:", hull.finite().len());
    for p in hull.finite() {
        if let HullSource::Model {
            model_id, shift, ..
        } = &p.source
        {
            println!(
                "  ({:>6.3}, {:>7.3})  {model_id} shifted by {shift:+.3}",
                p.point.over, p.point.under
            );
        }
    }
    println!("per model: {:?}", hull.provenance_counts());

    println!("\ndominance regions:");
    for r in DominanceMap::from_hull(&hull)?.regions {
        let shift = match &r.hull_point.source {
            HullSource::Model { shift, .. } => *shift,
            _ => f64::NAN,
        };
        println!(
            "  alpha {}{:.3}, {:.3}]  {} with shift {shift:+.3}",
            if r.low_closed { "[" } else { "(" },
            r.alpha_low,
            r.alpha_high,
            r.model_id()
        );
    }
    Ok(())
}
