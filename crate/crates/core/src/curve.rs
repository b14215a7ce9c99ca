//! RROC curves: the path of `(OVER, UNDER)` traced by a model as a constant
//! shift `s` is added to every prediction and swept over `[-inf, inf]`.
//!
//! The path is piecewise linear. Its vertices sit at the shifts where one
//! example (or a tied group) crosses from under- to over-estimation, so a
//! dataset with `n` examples yields `n + 2` vertices, two of them the extreme
//! models `(0, -inf)` and `(inf, 0)`. Vertices are computed from the gaps
//! between consecutive sorted errors, so every partial sum is a sum of
//! non-negative terms and tied errors produce bit-identical vertices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{ErrorVector, RrocPoint};

/// Errors closer than this fraction of the largest absolute error are treated
/// as tied when building a curve.
pub const TIE_RELATIVE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VertexPoint {
    #[serde(flatten)]
    pub point: RrocPoint,
    /// Shift added to the predictions to reach this vertex.
    #[serde(with = "crate::serde_ext")]
    pub shift: f64,
    /// Examples strictly over-estimated at this shift.
    pub n_over: usize,
    /// Examples strictly under-estimated at this shift. Examples whose shifted
    /// error is exactly zero count in neither.
    pub n_under: usize,
}

impl VertexPoint {
    pub fn over(&self) -> f64 {
        self.point.over
    }

    pub fn under(&self) -> f64 {
        self.point.under
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RrocCurve {
    pub model_id: String,
    pub n: usize,
    /// Whether coordinates have been divided by `n`.
    pub normalized: bool,
    /// The unshifted model (`s = 0`). It lies on the curve, usually inside a
    /// segment, so it is annotation rather than a vertex.
    pub origin: RrocPoint,
    vertices: Vec<VertexPoint>,
}

/// Builds the RROC curve of an error vector.
pub fn rroc_curve(errors: &ErrorVector) -> RrocCurve {
    RrocCurve::from_errors("", errors)
}

impl RrocCurve {
    pub fn from_errors(model_id: impl Into<String>, errors: &ErrorVector) -> Self {
        let n = errors.len();
        let mut sorted = errors.as_slice().to_vec();
        // stable, descending
        sorted.sort_by(|a, b| b.total_cmp(a));

        // Errors computed as `pred - actual` can differ in the last bits even
        // when the data ties exactly, so grouping uses a scale-relative tolerance.
        let scale = sorted.iter().fold(0.0_f64, |m, e| m.max(e.abs()));
        let tie_tol = TIE_RELATIVE_TOLERANCE * scale;
        let mut group_of = vec![0usize; n];
        for k in 1..n {
            let head = group_of[k - 1];
            group_of[k] = if sorted[head] - sorted[k] <= tie_tol {
                head
            } else {
                k
            };
        }
        let gaps: Vec<f64> = (1..n)
            .map(|k| {
                if group_of[k] == group_of[k - 1] {
                    0.0
                } else {
                    sorted[k - 1] - sorted[k]
                }
            })
            .collect();

        let mut over = vec![0.0; n];
        for k in 1..n {
            over[k] = over[k - 1] + k as f64 * gaps[k - 1];
        }
        let mut under = vec![0.0; n];
        for k in (0..n.saturating_sub(1)).rev() {
            under[k] = under[k + 1] - (n - 1 - k) as f64 * gaps[k];
        }

        let mut vertices = Vec::with_capacity(n + 2);
        vertices.push(VertexPoint {
            point: RrocPoint::LOWER_EXTREME,
            shift: f64::NEG_INFINITY,
            n_over: 0,
            n_under: n,
        });
        let mut group_start = 0;
        while group_start < n {
            let value = sorted[group_start];
            let mut group_end = group_start + 1;
            while group_end < n && group_of[group_end] == group_start {
                group_end += 1;
            }
            for k in group_start..group_end {
                vertices.push(VertexPoint {
                    point: RrocPoint {
                        over: over[k],
                        under: under[k],
                    },
                    shift: -value,
                    n_over: group_start,
                    n_under: n - group_end,
                });
            }
            group_start = group_end;
        }
        vertices.push(VertexPoint {
            point: RrocPoint::UPPER_EXTREME,
            shift: f64::INFINITY,
            n_over: n,
            n_under: 0,
        });

        Self {
            model_id: model_id.into(),
            n,
            normalized: false,
            origin: errors.over_under(),
            vertices,
        }
    }

    /// Assembles a curve from an explicit vertex list, e.g. one read back from
    /// a report. Only the structural invariants are checked: the extremes at
    /// both ends and finite interior vertices. Use [`is_convex`] for shape.
    pub fn from_vertices(
        model_id: impl Into<String>,
        n: usize,
        vertices: Vec<VertexPoint>,
        origin: RrocPoint,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty("curve with n = 0"));
        }
        let (first, last) = match (vertices.first(), vertices.last()) {
            (Some(f), Some(l)) if vertices.len() >= 2 => (f.point, l.point),
            _ => return Err(Error::Degenerate("fewer than two vertices")),
        };
        if first.over != 0.0 || first.under != f64::NEG_INFINITY {
            return Err(Error::Degenerate("first vertex must be (0, -inf)"));
        }
        if last.over != f64::INFINITY || last.under != 0.0 {
            return Err(Error::Degenerate("last vertex must be (inf, 0)"));
        }
        if !vertices[1..vertices.len() - 1]
            .iter()
            .all(|v| v.point.is_finite())
        {
            return Err(Error::Degenerate("interior vertices must be finite"));
        }
        Ok(Self {
            model_id: model_id.into(),
            n,
            normalized: false,
            origin,
            vertices,
        })
    }

    /// All vertices, extremes included, ordered by increasing shift.
    pub fn vertices(&self) -> &[VertexPoint] {
        &self.vertices
    }

    /// Finite vertices.
    pub fn interior(&self) -> &[VertexPoint] {
        let len = self.vertices.len();
        if len < 2 {
            &[]
        } else {
            &self.vertices[1..len - 1]
        }
    }

    /// Vertices with coincident neighbours (from tied errors) collapsed.
    pub fn distinct_vertices(&self) -> Vec<&VertexPoint> {
        let mut out: Vec<&VertexPoint> = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            if !matches!(out.last(), Some(prev) if prev.point == v.point) {
                out.push(v);
            }
        }
        out
    }

    /// Distinct finite vertices: what a plot of the curve shows as markers.
    pub fn visible_vertices(&self) -> Vec<&VertexPoint> {
        self.distinct_vertices()
            .into_iter()
            .filter(|v| v.point.is_finite())
            .collect()
    }

    /// Slope of every segment between consecutive vertices. The first
    /// segment is vertical (`inf`) and the last horizontal (`0`); a segment
    /// between coincident vertices has no slope and reports `NaN`.
    pub fn measured_slopes(&self) -> Vec<SegmentSlope> {
        let last = self.vertices.len().saturating_sub(2);
        self.vertices
            .windows(2)
            .enumerate()
            .map(|(i, w)| {
                let slope = if i == 0 {
                    f64::INFINITY
                } else if i == last {
                    0.0
                } else {
                    let d_over = w[1].point.over - w[0].point.over;
                    let d_under = w[1].point.under - w[0].point.under;
                    if d_over == 0.0 && d_under == 0.0 {
                        f64::NAN
                    } else if d_over == 0.0 {
                        f64::INFINITY
                    } else {
                        d_under / d_over
                    }
                };
                SegmentSlope {
                    index: i + 1,
                    slope,
                }
            })
            .collect()
    }

    /// Area over the curve by the trapezoid rule over the interior vertices;
    /// the two extreme trapezoids have zero area for finite models.
    pub fn aoc(&self) -> Result<f64> {
        let interior = self.interior();
        if interior.is_empty() {
            return Err(Error::Degenerate("no interior vertices"));
        }
        Ok(interior
            .windows(2)
            .map(|w| {
                let (a, b) = (w[0].point, w[1].point);
                -(a.under + b.under) / 2.0 * (b.over - a.over)
            })
            .fold(0.0, |acc, t| acc + t))
    }

    /// The curve with both axes divided by `n`. Its area is `variance / 2`.
    pub fn normalized(&self) -> Self {
        if self.normalized {
            return self.clone();
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| VertexPoint {
                point: v.point.normalized(self.n),
                ..*v
            })
            .collect();
        Self {
            model_id: self.model_id.clone(),
            n: self.n,
            normalized: true,
            origin: self.origin.normalized(self.n),
            vertices,
        }
    }

    pub fn is_convex(&self) -> bool {
        is_convex(self)
    }
}

/// Free-function form of [`RrocCurve::aoc`].
pub fn aoc(curve: &RrocCurve) -> Result<f64> {
    curve.aoc()
}

/// Free-function form of [`RrocCurve::normalized`].
pub fn normalized_curve(curve: &RrocCurve) -> RrocCurve {
    curve.normalized()
}

/// True when the finite vertices move up-and-right with non-increasing
/// slope. Collinearity is judged with a relative tolerance of `1e-12`.
pub fn is_convex(curve: &RrocCurve) -> bool {
    let pts: Vec<RrocPoint> = curve
        .distinct_vertices()
        .into_iter()
        .filter(|v| v.point.is_finite())
        .map(|v| v.point)
        .collect();
    if pts
        .windows(2)
        .any(|w| w[1].over < w[0].over || w[1].under < w[0].under)
    {
        return false;
    }
    let scale = pts
        .iter()
        .map(|p| p.over.abs().max(p.under.abs()))
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let eps = 1e-12 * scale * scale;
    pts.windows(3).all(|w| cross(w[0], w[1], w[2]) <= eps)
}

/// z-component of `(b - a) x (c - b)`; positive for a left turn.
pub(crate) fn cross(a: RrocPoint, b: RrocPoint, c: RrocPoint) -> f64 {
    (b.over - a.over) * (c.under - b.under) - (b.under - a.under) * (c.over - b.over)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SegmentSlope {
    /// 1-based segment index, `1..=n+1`.
    pub index: usize,
    #[serde(with = "crate::serde_ext")]
    pub slope: f64,
}

/// Slopes of the `n + 1` segments of any curve over `n` examples with
/// distinct errors: `(n + 1 - i) / (i - 1)`. They depend on `n` only.
pub fn segment_slopes(n: usize) -> Result<Vec<SegmentSlope>> {
    if n < 1 {
        return Err(Error::Empty("segment slopes need n >= 1"));
    }
    Ok((1..=n + 1)
        .map(|i| SegmentSlope {
            index: i,
            slope: if i == 1 {
                f64::INFINITY
            } else {
                (n + 1 - i) as f64 / (i - 1) as f64
            },
        })
        .collect())
}

/// The asymmetry `(i - 1) / n` whose isometrics run parallel to segment `i`.
pub fn segment_alpha(n: usize, i: usize) -> Result<f64> {
    if n < 1 {
        return Err(Error::Empty("segment alpha needs n >= 1"));
    }
    if i < 1 || i > n + 1 {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: n + 1,
        });
    }
    Ok((i - 1) as f64 / n as f64)
}

/// Area over the curve by sampling `(OVER, UNDER)` at every shift of `grid`
/// and integrating `-UNDER d(OVER)` with the trapezoid rule. Independent of
/// the vertex construction; converges to [`RrocCurve::aoc`] as the grid
/// refines, provided it spans every error crossing.
pub fn aoc_brute_force(errors: &ErrorVector, grid: &[f64]) -> Result<f64> {
    if grid.len() < 2 {
        return Err(Error::Empty("shift grid needs at least two points"));
    }
    if let Some(i) = grid.iter().position(|s| !s.is_finite()) {
        return Err(Error::NonFinite {
            index: i,
            value: grid[i],
        });
    }
    if let Some(i) = grid.windows(2).position(|w| w[1] <= w[0]) {
        return Err(Error::NonMonotoneGrid(i + 1));
    }

    let mut sorted = errors.as_slice().to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let n = sorted.len();
    let total: f64 = sorted.iter().sum();

    // `above` errors satisfy e + s > 0; the count only grows with s.
    let mut above = 0usize;
    let mut above_sum = 0.0;
    let mut sample = |s: f64| -> (f64, f64) {
        while above < n && sorted[above] + s > 0.0 {
            above_sum += sorted[above];
            above += 1;
        }
        let over = above_sum + above as f64 * s;
        let under = (total - above_sum) + (n - above) as f64 * s;
        (over.max(0.0), under.min(0.0))
    };

    let mut prev = sample(grid[0]);
    let mut area = 0.0;
    for &s in &grid[1..] {
        let cur = sample(s);
        area -= (prev.1 + cur.1) / 2.0 * (cur.0 - prev.0);
        prev = cur;
    }
    Ok(area)
}

/// Shift grid spanning the error range padded by one range-width on each
/// side, with step `range / (10 n^2)`.
pub fn default_shift_grid(errors: &ErrorVector) -> Vec<f64> {
    let (min, max) = errors
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), e| {
            (lo.min(e), hi.max(e))
        });
    let n = errors.len() as f64;
    let range = max - min;
    let (pad, step) = if range > 0.0 {
        (range, range / (10.0 * n * n))
    } else {
        (1.0, 0.1)
    };
    let lo = -max - pad;
    let hi = -min + pad;
    let steps = ((hi - lo) / step).ceil() as usize;
    (0..=steps).map(|i| lo + i as f64 * step).collect()
}
