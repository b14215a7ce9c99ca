//! Generators and independent oracles shared by the property and acceptance
//! suites. Nothing here calls the curve or shift code under test.
#![allow(dead_code)]

use proptest::prelude::*;
use rroc::curve::RrocCurve;
use rroc::metrics::{asymmetric_loss, ErrorVector, OperatingCondition, RrocPoint};

/// Uniform errors in `[-10, 10]`, `n` in `2..=64`.
pub fn errors() -> impl Strategy<Value = ErrorVector> {
    errors_sized(2..=64)
}

pub fn errors_sized(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = ErrorVector> {
    prop::collection::vec(-10.0f64..10.0, n).prop_map(|v| ErrorVector::new(v).unwrap())
}

/// Like [`errors`], but every pair of errors is at least `1e-6` of the range
/// apart, so each segment of the curve is well conditioned.
pub fn distinct_errors() -> impl Strategy<Value = ErrorVector> {
    errors().prop_filter("near-tied errors", |e| min_gap(e) > 1e-6 * range(e))
}

pub fn range(e: &ErrorVector) -> f64 {
    let (lo, hi) = e
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| {
            (a.min(x), b.max(x))
        });
    hi - lo
}

pub fn min_gap(e: &ErrorVector) -> f64 {
    let mut v = e.as_slice().to_vec();
    v.sort_by(f64::total_cmp);
    v.windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min)
}

/// Total loss of the shifted model, summed example by example.
pub fn direct_loss(e: &ErrorVector, shift: f64, oc: OperatingCondition) -> f64 {
    e.iter()
        .map(|err| asymmetric_loss(err + shift, 0.0, oc))
        .sum()
}

/// Least direct loss over every candidate shift `-e_i`, the midpoints between
/// them and one step beyond each end.
pub fn exhaustive_min(e: &ErrorVector, oc: OperatingCondition) -> f64 {
    let mut c: Vec<f64> = e.iter().map(|x| -x).collect();
    c.sort_by(f64::total_cmp);
    let mut shifts = c.clone();
    shifts.extend(c.windows(2).map(|w| (w[0] + w[1]) / 2.0));
    shifts.push(c[0] - 1.0);
    shifts.push(c[c.len() - 1] + 1.0);
    shifts
        .into_iter()
        .map(|s| direct_loss(e, s, oc))
        .fold(f64::INFINITY, f64::min)
}

/// Distance from `p` to the curve's polyline, treating the first and last
/// segments as the vertical and horizontal rays they are.
pub fn polyline_distance(curve: &RrocCurve, p: RrocPoint) -> f64 {
    let v: Vec<RrocPoint> = curve.interior().iter().map(|v| v.point).collect();
    let first = v[0];
    let last = v[v.len() - 1];
    let mut best = f64::INFINITY;
    // vertical ray below the first finite vertex
    if p.under <= first.under {
        best = best.min((p.over - first.over).abs());
    }
    // horizontal ray right of the last finite vertex
    if p.over >= last.over {
        best = best.min((p.under - last.under).abs());
    }
    for w in v.windows(2) {
        best = best.min(segment_distance(w[0], w[1], p));
    }
    best
}

fn segment_distance(a: RrocPoint, b: RrocPoint, p: RrocPoint) -> f64 {
    let (dx, dy) = (b.over - a.over, b.under - a.under);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p.over - a.over) * dx + (p.under - a.under) * dy) / len2).clamp(0.0, 1.0)
    };
    let (x, y) = (a.over + t * dx, a.under + t * dy);
    ((p.over - x).powi(2) + (p.under - y).powi(2)).sqrt()
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
