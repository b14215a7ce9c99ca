//! RROC curves from a constant-shift sweep: vertices, shifts, segment slopes
//! and what ties do to the vertex count.
//!
//! Run with `cargo run --example shift_curves`.

use rroc::curve::{segment_alpha, segment_slopes, RrocCurve};
use rroc::sample_data;

fn main() -> rroc::Result<()> {
    let curve = RrocCurve::from_errors("m1", &sample_data::errors("m1"));
    println!(
        "m1: {} vertices, {} visible",
        curve.vertices().len(),
        curve.visible_vertices().len()
    );
    println!(
        "{:>9} {:>9} {:>9} {:>6} {:>7}",
        "shift", "OVER", "UNDER", "#over", "#under"
    );
    for v in curve.vertices() {
        println!(
            "{:>9.3} {:>9.3} {:>9.3} {:>6} {:>7}",
            v.shift,
            v.over(),
            v.under(),
            v.n_over,
            v.n_under
        );
    }
    println!(
        "unshifted model (s = 0) at ({:.3}, {:.3}), inside a segment",
        curve.origin.over, curve.origin.under
    );

    println!("\nsegment slopes depend only on n; each segment is optimal at one alpha:");
    for s in segment_slopes(curve.n)? {
        println!(
            "  segment {:>2}: slope {:>6.3}, alpha {:.1}",
            s.index,
            s.slope,
            segment_alpha(curve.n, s.index)?
        );
    }

    let tied = RrocCurve::from_errors("m4", &sample_data::errors("m4"));
    println!(
        "\nm4 has tied errors: {} vertices but only {} visible",
        tied.vertices().len(),
        tied.visible_vertices().len()
    );
    for v in tied.visible_vertices() {
        println!(
            "  ({:.3}, {:.3}) at shift {:.3}",
            v.over(),
            v.under(),
            v.shift
        );
    }
    println!("convex: m1 {}, m4 {}", curve.is_convex(), tied.is_convex());
    Ok(())
}
