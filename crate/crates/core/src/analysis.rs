//! Isometrics, operating-point selection, hybrid models, the convex hull of a
//! set of models or curves, and the dominance regions it induces over `alpha`.

use serde::{Deserialize, Serialize};

use crate::curve::{cross, RrocCurve, VertexPoint};
use crate::error::{Error, Result};
use crate::metrics::{total_loss, OperatingCondition, RrocPoint};

/// Relative tolerance for exact-loss ties and hull collinearity.
pub const RELATIVE_EPSILON: f64 = 1e-12;

fn ties(a: f64, b: f64) -> bool {
    (a - b).abs() <= RELATIVE_EPSILON * a.abs().max(b.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IsometricLine {
    /// `UNDER = slope * OVER + intercept`.
    Sloped { slope: f64, intercept: f64 },
    /// `OVER = over`, the isometric family at `alpha = 0`.
    Vertical { over: f64 },
}

/// A line of constant total loss `level` at one operating condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Isometric {
    pub alpha: f64,
    pub level: f64,
    pub line: IsometricLine,
}

impl Isometric {
    pub fn slope(&self) -> f64 {
        match self.line {
            IsometricLine::Sloped { slope, .. } => slope,
            IsometricLine::Vertical { .. } => f64::INFINITY,
        }
    }

    /// UNDER-axis intercept; `None` for a vertical isometric.
    pub fn intercept(&self) -> Option<f64> {
        match self.line {
            IsometricLine::Sloped { intercept, .. } => Some(intercept),
            IsometricLine::Vertical { .. } => None,
        }
    }

    pub fn under_at(&self, over: f64) -> Option<f64> {
        match self.line {
            IsometricLine::Sloped { slope, intercept } => Some(slope * over + intercept),
            IsometricLine::Vertical { .. } => None,
        }
    }
}

/// The isometric of `oc` that passes through `point`.
pub fn isometric_through(point: RrocPoint, oc: OperatingCondition) -> Isometric {
    let level = total_loss(point, oc);
    let line = if oc.alpha() == 0.0 {
        IsometricLine::Vertical { over: point.over }
    } else {
        let slope = oc.slope();
        IsometricLine::Sloped {
            slope,
            intercept: point.under - slope * point.over,
        }
    };
    Isometric {
        alpha: oc.alpha(),
        level,
        line,
    }
}

/// Whether `(over_a, |under_a|)` wins the tie-break against `b`.
fn preferred(a: RrocPoint, b: RrocPoint) -> bool {
    (a.over, -a.under) < (b.over, -b.under)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BestPoint {
    /// Position in the input slice.
    pub index: usize,
    pub point: RrocPoint,
    pub loss: f64,
}

/// The point of least total loss at `oc`. Losses equal within
/// [`RELATIVE_EPSILON`] are broken by lower OVER, then lower |UNDER|.
pub fn best_point_for_alpha(points: &[RrocPoint], oc: OperatingCondition) -> Result<BestPoint> {
    let mut best: Option<BestPoint> = None;
    for (index, &point) in points.iter().enumerate() {
        let loss = total_loss(point, oc);
        let replace = match &best {
            None => true,
            Some(b) if ties(loss, b.loss) => preferred(point, b.point),
            Some(b) => loss < b.loss,
        };
        if replace {
            best = Some(BestPoint { index, point, loss });
        }
    }
    best.ok_or(Error::Empty("no points to choose from"))
}

/// The finite curve vertex of least total loss at `oc` (same tie-break as
/// [`best_point_for_alpha`]).
pub fn best_vertex_for_alpha(
    curve: &RrocCurve,
    oc: OperatingCondition,
) -> Result<(VertexPoint, f64)> {
    let interior = curve.interior();
    let points: Vec<RrocPoint> = interior.iter().map(|v| v.point).collect();
    let best =
        best_point_for_alpha(&points, oc).map_err(|_| Error::Degenerate("no interior vertices"))?;
    Ok((interior[best.index], best.loss))
}

/// The segment of hybrid models obtained by mixing the predictions of two
/// models example-by-example with a biased coin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HybridSegment {
    pub a: RrocPoint,
    pub b: RrocPoint,
    #[serde(with = "crate::serde_ext")]
    pub slope: f64,
    /// `1 / (1 + slope)`: the asymmetry at which both endpoints cost the same.
    /// Lies outside `[0, 1]` when one endpoint dominates the other.
    pub crossover_alpha: f64,
    /// Total loss of either endpoint at the crossover, when it is a valid
    /// operating condition.
    pub crossover_loss: Option<f64>,
    /// Both endpoints share the same OVER; by convention `crossover_alpha = 0`.
    pub vertical: bool,
}

impl HybridSegment {
    pub fn crossover(&self) -> Option<OperatingCondition> {
        OperatingCondition::new(self.crossover_alpha).ok()
    }

    /// Expected point of the hybrid that takes `b`'s prediction with
    /// probability `weight`.
    pub fn mix(&self, weight: f64) -> RrocPoint {
        RrocPoint {
            over: self.a.over + weight * (self.b.over - self.a.over),
            under: self.a.under + weight * (self.b.under - self.a.under),
        }
    }
}

pub fn hybrid_segment(a: RrocPoint, b: RrocPoint) -> Result<HybridSegment> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::Degenerate("hybrid endpoints must be finite"));
    }
    if a == b {
        return Err(Error::Degenerate("hybrid endpoints coincide"));
    }
    let d_over = b.over - a.over;
    let vertical = d_over == 0.0;
    let (slope, crossover_alpha) = if vertical {
        (f64::INFINITY, 0.0)
    } else {
        let slope = (b.under - a.under) / d_over;
        (slope, 1.0 / (1.0 + slope))
    };
    let crossover_loss = OperatingCondition::new(crossover_alpha)
        .ok()
        .map(|oc| total_loss(a, oc));
    Ok(HybridSegment {
        a,
        b,
        slope,
        crossover_alpha,
        crossover_loss,
        vertical,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HullSource {
    /// The model always predicting `-inf`, at `(0, -inf)`.
    LowerExtreme,
    /// The model always predicting `+inf`, at `(inf, 0)`.
    UpperExtreme,
    Model {
        model_id: String,
        /// Index into the curve's vertex list, for curve inputs.
        vertex: Option<usize>,
        #[serde(with = "crate::serde_ext", default)]
        shift: f64,
    },
}

impl HullSource {
    pub fn model_id(&self) -> Option<&str> {
        match self {
            HullSource::Model { model_id, .. } => Some(model_id),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullPoint {
    pub point: RrocPoint,
    pub source: HullSource,
}

/// Something that contributes candidate points to a hull.
#[derive(Debug, Clone, Copy)]
pub enum HullInput<'a> {
    Point { model_id: &'a str, point: RrocPoint },
    Curve(&'a RrocCurve),
}

/// The lower-left frontier of everything reachable by mixing the inputs and
/// the two extreme models, ordered by increasing OVER. The extremes are the
/// first and last entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexHull {
    pub points: Vec<HullPoint>,
}

impl ConvexHull {
    /// Hull points contributed by models (extremes excluded).
    pub fn finite(&self) -> &[HullPoint] {
        let len = self.points.len();
        &self.points[1..len - 1]
    }

    /// Count of finite hull points per model id, in first-appearance order.
    pub fn provenance_counts(&self) -> Vec<(String, usize)> {
        let mut counts: Vec<(String, usize)> = Vec::new();
        for p in self.finite() {
            let id = p.source.model_id().unwrap_or_default();
            match counts.iter_mut().find(|(k, _)| k == id) {
                Some((_, c)) => *c += 1,
                None => counts.push((id.to_string(), 1)),
            }
        }
        counts
    }

    pub fn is_convex(&self) -> bool {
        let pts: Vec<RrocPoint> = self.finite().iter().map(|p| p.point).collect();
        if pts
            .windows(2)
            .any(|w| w[1].over <= w[0].over || w[1].under <= w[0].under)
        {
            return false;
        }
        let eps = collinear_eps(&pts);
        pts.windows(3).all(|w| cross(w[0], w[1], w[2]) <= eps)
    }
}

fn collinear_eps(pts: &[RrocPoint]) -> f64 {
    let scale = pts
        .iter()
        .map(|p| p.over.abs().max(p.under.abs()))
        .fold(0.0, f64::max);
    RELATIVE_EPSILON * scale * scale
}

/// Monotone-chain hull over the finite candidate points.
///
/// Points sharing the smallest OVER below the highest one lie on the vertical
/// ray from `(0, -inf)`, and points sharing the largest UNDER to the right of
/// the leftmost one lie on the horizontal ray to `(inf, 0)`; neither kind is
/// a hull vertex. Collinear points between hull vertices are kept.
pub fn convex_hull(inputs: &[HullInput<'_>]) -> Result<ConvexHull> {
    let mut cands: Vec<HullPoint> = Vec::new();
    for input in inputs {
        match *input {
            HullInput::Point { model_id, point } => {
                if point.is_finite() {
                    cands.push(HullPoint {
                        point,
                        source: HullSource::Model {
                            model_id: model_id.to_string(),
                            vertex: None,
                            shift: 0.0,
                        },
                    });
                }
            }
            HullInput::Curve(curve) => {
                let mut last: Option<RrocPoint> = None;
                for (i, v) in curve.vertices().iter().enumerate() {
                    if v.point.is_finite() && last != Some(v.point) {
                        cands.push(HullPoint {
                            point: v.point,
                            source: HullSource::Model {
                                model_id: curve.model_id.clone(),
                                vertex: Some(i),
                                shift: v.shift,
                            },
                        });
                    }
                    last = Some(v.point);
                }
            }
        }
    }
    if cands.is_empty() {
        return Err(Error::Empty("no finite points for the hull"));
    }

    // OVER ascending, UNDER descending; stable so the first input wins exact duplicates
    cands.sort_by(|a, b| {
        a.point
            .over
            .total_cmp(&b.point.over)
            .then(b.point.under.total_cmp(&a.point.under))
    });
    cands.dedup_by(|later, earlier| later.point.over == earlier.point.over);

    let top = cands
        .iter()
        .map(|c| c.point.under)
        .fold(f64::NEG_INFINITY, f64::max);
    let end = cands
        .iter()
        .position(|c| c.point.under == top)
        .expect("non-empty");
    cands.truncate(end + 1);

    let eps = collinear_eps(&cands.iter().map(|c| c.point).collect::<Vec<_>>());
    let mut chain: Vec<HullPoint> = Vec::with_capacity(cands.len());
    for c in cands {
        while chain.len() >= 2
            && cross(
                chain[chain.len() - 2].point,
                chain[chain.len() - 1].point,
                c.point,
            ) > eps
        {
            chain.pop();
        }
        chain.push(c);
    }

    let mut points = Vec::with_capacity(chain.len() + 2);
    points.push(HullPoint {
        point: RrocPoint::LOWER_EXTREME,
        source: HullSource::LowerExtreme,
    });
    points.extend(chain);
    points.push(HullPoint {
        point: RrocPoint::UPPER_EXTREME,
        source: HullSource::UpperExtreme,
    });
    Ok(ConvexHull { points })
}

/// One interval of operating conditions and the hull point optimal on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominanceRegion {
    pub alpha_low: f64,
    pub alpha_high: f64,
    /// Only the first region includes its lower bound; every region includes
    /// its upper bound, so a crossover belongs to the lower-alpha model.
    pub low_closed: bool,
    pub hull_point: HullPoint,
}

impl DominanceRegion {
    pub fn contains(&self, alpha: f64) -> bool {
        let above_low = if self.low_closed {
            alpha >= self.alpha_low
        } else {
            alpha > self.alpha_low
        };
        above_low && alpha <= self.alpha_high
    }

    pub fn model_id(&self) -> &str {
        self.hull_point.source.model_id().unwrap_or_default()
    }
}

/// A partition of `[0, 1]` into intervals labelled with the optimal model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominanceMap {
    pub regions: Vec<DominanceRegion>,
}

impl DominanceMap {
    pub fn from_hull(hull: &ConvexHull) -> Result<Self> {
        let finite = hull.finite();
        let mut regions: Vec<DominanceRegion> = Vec::with_capacity(finite.len());
        let mut low = 0.0;
        for (i, hp) in finite.iter().enumerate() {
            let high = match finite.get(i + 1) {
                Some(next) => hybrid_segment(hp.point, next.point)?
                    .crossover_alpha
                    .clamp(0.0, 1.0),
                None => 1.0,
            };
            let first = regions.is_empty();
            // collinear hull points share a crossover and own an empty interval
            if high > low || (first && high >= low) {
                regions.push(DominanceRegion {
                    alpha_low: low,
                    alpha_high: high,
                    low_closed: first,
                    hull_point: hp.clone(),
                });
                low = high;
            }
        }
        Ok(Self { regions })
    }

    pub fn region_at(&self, oc: OperatingCondition) -> &DominanceRegion {
        let alpha = oc.alpha();
        self.regions
            .iter()
            .find(|r| r.contains(alpha))
            .unwrap_or_else(|| self.regions.last().expect("map covers [0, 1]"))
    }

    /// Interior boundaries between regions.
    pub fn boundaries(&self) -> Vec<f64> {
        self.regions
            .iter()
            .take(self.regions.len().saturating_sub(1))
            .map(|r| r.alpha_high)
            .collect()
    }
}

pub fn dominance_map(inputs: &[HullInput<'_>]) -> Result<DominanceMap> {
    DominanceMap::from_hull(&convex_hull(inputs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::rroc_curve;
    use crate::sample_data;

    fn point(id: &str) -> RrocPoint {
        sample_data::errors(id).over_under()
    }

    fn oc(alpha: f64) -> OperatingCondition {
        OperatingCondition::new(alpha).unwrap()
    }

    #[test]
    fn isometric_through_m3() {
        let iso = isometric_through(point("m3"), oc(0.8));
        assert!((iso.slope() - 0.25).abs() < 1e-12);
        assert!((iso.intercept().unwrap() + 3.82275).abs() < 5e-4);
        assert!((iso.level - 6.1164).abs() < 5e-4);

        let diag = isometric_through(point("m1"), OperatingCondition::SYMMETRIC);
        assert_eq!(diag.slope(), 1.0);

        let heaven = isometric_through(RrocPoint::HEAVEN, oc(0.3));
        assert_eq!(heaven.intercept(), Some(0.0));
        assert_eq!(heaven.level, 0.0);

        let vertical = isometric_through(point("m2"), oc(0.0));
        assert!(matches!(vertical.line, IsometricLine::Vertical { .. }));
        assert_eq!(vertical.intercept(), None);
    }

    #[test]
    fn best_point_examples() {
        let pts = [point("m1"), point("m2"), point("m3")];
        let best = best_point_for_alpha(&pts, oc(0.8)).unwrap();
        assert_eq!(best.index, 2);
        assert!((best.loss - 6.1164).abs() < 5e-4);

        let single = best_point_for_alpha(&pts[1..2], oc(0.4)).unwrap();
        assert_eq!(single.index, 0);
        assert!(best_point_for_alpha(&[], oc(0.5)).is_err());
    }

    #[test]
    fn exact_crossover_tie_goes_to_lower_over() {
        let seg = hybrid_segment(point("m1"), point("m3")).unwrap();
        let at = seg.crossover().unwrap();
        let best = best_point_for_alpha(&[point("m3"), point("m1")], at).unwrap();
        assert_eq!(best.point, point("m1"));
    }

    #[test]
    fn best_vertex_extremes() {
        let c = rroc_curve(&sample_data::errors("m1"));
        let (v, loss) = best_vertex_for_alpha(&c, oc(0.0)).unwrap();
        assert_eq!(v.over(), 0.0);
        assert_eq!(loss, 0.0);
        let (v, loss) = best_vertex_for_alpha(&c, oc(1.0)).unwrap();
        assert_eq!(v.under(), 0.0);
        assert_eq!(loss, 0.0);
    }

    #[test]
    fn hybrid_m1_m3() {
        let seg = hybrid_segment(point("m1"), point("m3")).unwrap();
        assert!((seg.slope - 0.567).abs() < 5e-4);
        assert!((seg.crossover_alpha - 0.638).abs() < 5e-4);
        let at = seg.crossover().unwrap();
        let (la, lb) = (total_loss(seg.a, at), total_loss(seg.b, at));
        assert!((la - lb).abs() < 1e-9);

        let rev = hybrid_segment(point("m3"), point("m1")).unwrap();
        assert_eq!(rev.slope, seg.slope);
        assert_eq!(rev.crossover_alpha, seg.crossover_alpha);

        let a = RrocPoint::new(1.0, -3.0).unwrap();
        let b = RrocPoint::new(2.5, -1.5).unwrap();
        let diag = hybrid_segment(a, b).unwrap();
        assert_eq!(diag.slope, 1.0);
        assert_eq!(diag.crossover_alpha, 0.5);

        let mid = seg.mix(0.5);
        assert!((mid.over - (seg.a.over + seg.b.over) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn hybrid_degenerate_cases() {
        let a = RrocPoint::new(1.0, -3.0).unwrap();
        assert!(hybrid_segment(a, a).is_err());
        let v = hybrid_segment(a, RrocPoint::new(1.0, -1.0).unwrap()).unwrap();
        assert!(v.vertical);
        assert_eq!(v.crossover_alpha, 0.0);
        // one point dominates: no operating condition where they tie
        let d = hybrid_segment(a, RrocPoint::new(0.5, -2.0).unwrap()).unwrap();
        assert!(d.crossover().is_none());
        assert!(d.crossover_loss.is_none());
    }

    #[test]
    fn point_hull_discards_m2() {
        let inputs = ["m1", "m2", "m3"].map(|id| HullInput::Point {
            model_id: id,
            point: point(id),
        });
        let hull = convex_hull(&inputs).unwrap();
        let ids: Vec<_> = hull
            .finite()
            .iter()
            .filter_map(|p| p.source.model_id())
            .collect();
        assert_eq!(ids, ["m1", "m3"]);
        assert_eq!(hull.points[0].source, HullSource::LowerExtreme);
        assert_eq!(hull.points.last().unwrap().source, HullSource::UpperExtreme);
        assert!(hull.is_convex());
    }

    #[test]
    fn single_point_hull() {
        let hull = convex_hull(&[HullInput::Point {
            model_id: "only",
            point: point("m2"),
        }])
        .unwrap();
        assert_eq!(hull.points.len(), 3);
        let map = DominanceMap::from_hull(&hull).unwrap();
        assert_eq!(map.regions.len(), 1);
        assert!(map.regions[0].contains(0.0) && map.regions[0].contains(1.0));
    }

    #[test]
    fn curve_hull_of_three_models() {
        let curves: Vec<_> = ["m1", "m2", "m3"]
            .iter()
            .map(|id| RrocCurve::from_errors(*id, &sample_data::errors(id)))
            .collect();
        let inputs: Vec<_> = curves.iter().map(HullInput::Curve).collect();
        let hull = convex_hull(&inputs).unwrap();
        assert_eq!(hull.finite().len(), 12);
        assert_eq!(
            hull.provenance_counts(),
            vec![("m1".into(), 6), ("m3".into(), 3), ("m2".into(), 3)]
        );
        assert!(hull.is_convex());
    }

    #[test]
    fn dominance_of_m1_m3() {
        let inputs = ["m1", "m3"].map(|id| HullInput::Point {
            model_id: id,
            point: point(id),
        });
        let map = dominance_map(&inputs).unwrap();
        assert_eq!(map.regions.len(), 2);
        assert_eq!(map.regions[0].model_id(), "m1");
        assert_eq!(map.regions[1].model_id(), "m3");
        let b = map.boundaries()[0];
        assert!((b - 0.638).abs() < 5e-4);
        assert_eq!(map.region_at(oc(b)).model_id(), "m1");
        assert_eq!(map.region_at(oc(0.0)).model_id(), "m1");
        assert_eq!(map.region_at(oc(0.9)).model_id(), "m3");
        assert_eq!(map.region_at(oc(1.0)).model_id(), "m3");
    }
}
