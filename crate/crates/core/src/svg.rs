//! Standalone SVG charts: RROC space, error densities and cost curves.
//!
//! RROC charts put OVER to the right and UNDER downwards, so heaven `(0, 0)`
//! is the top-left corner. Both axes share one scale, clipped at 1.15 times
//! the largest finite coordinate; the extreme rays are drawn up to the edge
//! of the viewport.

use std::fmt::Write as _;

use crate::analysis::{ConvexHull, Isometric, IsometricLine};
use crate::curve::RrocCurve;
use crate::density::ErrorDensity;
use crate::error::{Error, Result};
use crate::metrics::RrocPoint;
use crate::report::EvaluationReport;
use crate::shift::CostCurve;

/// Viewport padding factor over the largest finite coordinate.
pub const CLIP_FACTOR: f64 = 1.15;

const PALETTE: [&str; 8] = [
    "#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SvgStyle {
    pub width: f64,
    pub height: f64,
    pub margin: f64,
    pub title: Option<String>,
}

impl Default for SvgStyle {
    fn default() -> Self {
        Self {
            width: 640.0,
            height: 640.0,
            margin: 60.0,
            title: None,
        }
    }
}

pub fn color(index: usize) -> &'static str {
    PALETTE[index % PALETTE.len()]
}

/// Everything that can appear in one RROC-space chart.
#[derive(Debug, Clone, Default)]
pub struct RrocChart<'a> {
    pub curves: Vec<&'a RrocCurve>,
    /// Standalone model points, drawn as filled circles.
    pub points: Vec<(&'a str, RrocPoint)>,
    pub hull: Option<&'a ConvexHull>,
    pub isometrics: Vec<Isometric>,
}

impl RrocChart<'_> {
    fn is_empty(&self) -> bool {
        self.curves.is_empty() && self.points.is_empty() && self.hull.is_none()
    }

    fn extent(&self) -> f64 {
        let mut m = 0.0_f64;
        let mut take = |p: RrocPoint| {
            if p.is_finite() {
                m = m.max(p.over).max(-p.under);
            }
        };
        for c in &self.curves {
            c.vertices().iter().for_each(|v| take(v.point));
            take(c.origin);
        }
        self.points.iter().for_each(|(_, p)| take(*p));
        if let Some(h) = self.hull {
            h.points.iter().for_each(|p| take(p.point));
        }
        if m > 0.0 {
            m * CLIP_FACTOR
        } else {
            1.0
        }
    }
}

struct Frame {
    left: f64,
    top: f64,
    w: f64,
    h: f64,
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn new(style: &SvgStyle, x: (f64, f64), y: (f64, f64)) -> Self {
        Self {
            left: style.margin,
            top: style.margin * if style.title.is_some() { 1.0 } else { 0.6 },
            w: style.width - 1.6 * style.margin,
            h: style.height
                - 1.6 * style.margin
                - if style.title.is_some() {
                    0.4 * style.margin
                } else {
                    0.0
                },
            x0: x.0,
            x1: x.1,
            y0: y.0,
            y1: y.1,
        }
    }

    fn px(&self, x: f64) -> f64 {
        self.left + (x - self.x0) / (self.x1 - self.x0) * self.w
    }

    /// `y1` is drawn at the top of the frame.
    fn py(&self, y: f64) -> f64 {
        self.top + (self.y1 - y) / (self.y1 - self.y0) * self.h
    }
}

fn open(out: &mut String, style: &SvgStyle) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#,
        w = style.width,
        h = style.height
    );
    let _ = writeln!(
        out,
        r#"<rect class="background" width="100%" height="100%" fill="white"/>"#
    );
    if let Some(t) = &style.title {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle" font-size="15">{}</text>"#,
            style.width / 2.0,
            style.margin * 0.5,
            escape(t)
        );
    }
}

fn clip(out: &mut String, f: &Frame) {
    let _ = writeln!(
        out,
        r#"<defs><clipPath id="plot"><rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/></clipPath></defs>"#,
        f.left, f.top, f.w, f.h
    );
}

fn axes(out: &mut String, f: &Frame, x_label: &str, y_label: &str) {
    let _ = writeln!(
        out,
        r#"<g class="axes" stroke="black" fill="none"><rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}"/></g>"#,
        f.left, f.top, f.w, f.h
    );
    let mut ticks = String::new();
    for i in 0..=5 {
        let t = i as f64 / 5.0;
        let x = f.x0 + t * (f.x1 - f.x0);
        let y = f.y0 + t * (f.y1 - f.y0);
        let _ = writeln!(
            ticks,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            f.px(x),
            f.top + f.h + 16.0,
            tick(x)
        );
        let _ = writeln!(
            ticks,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            f.left - 6.0,
            f.py(y) + 4.0,
            tick(y)
        );
    }
    out.push_str(&ticks);
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        f.left + f.w / 2.0,
        f.top + f.h + 36.0,
        x_label
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" transform="rotate(-90 {:.2} {:.2})">{}</text>"#,
        f.left - 44.0,
        f.top + f.h / 2.0,
        f.left - 44.0,
        f.top + f.h / 2.0,
        y_label
    );
}

fn legend(out: &mut String, f: &Frame, entries: &[(String, &str)]) {
    let _ = writeln!(out, r#"<g class="legend">"#);
    for (i, (label, c)) in entries.iter().enumerate() {
        let y = f.top + 14.0 + 16.0 * i as f64;
        let x = f.left + f.w - 110.0;
        let _ = writeln!(
            out,
            r#"<line x1="{x:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{c}" stroke-width="3"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            x + 18.0,
            x + 24.0,
            y + 4.0,
            escape(label)
        );
    }
    let _ = writeln!(out, "</g>");
}

fn polyline(f: &Frame, pts: impl IntoIterator<Item = (f64, f64)>) -> String {
    pts.into_iter()
        .map(|(x, y)| format!("{:.2},{:.2}", f.px(x), f.py(y)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn tick(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    let a = v.abs();
    if a >= 100.0 {
        format!("{v:.0}")
    } else if a >= 1.0 {
        format!("{v:.2}")
    } else if a >= 0.01 || a == 0.0 {
        format!("{v:.3}")
    } else {
        format!("{v:.1e}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Replaces the infinite coordinate of an extreme vertex with the edge of the
/// viewport.
fn clamp(p: RrocPoint, limit: f64) -> (f64, f64) {
    (p.over.min(limit), p.under.max(-limit))
}

pub fn render_rroc(chart: &RrocChart<'_>, style: &SvgStyle) -> Result<String> {
    if chart.is_empty() {
        return Err(Error::Empty("nothing to plot"));
    }
    let lim = chart.extent();
    let f = Frame::new(style, (0.0, lim), (-lim, 0.0));
    let mut out = String::new();
    open(&mut out, style);
    clip(&mut out, &f);
    axes(&mut out, &f, "OVER", "UNDER");

    let _ = writeln!(out, r#"<g clip-path="url(#plot)">"#);
    let _ = writeln!(
        out,
        r##"<line class="diagonal" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#888" stroke-dasharray="6,4"/>"##,
        f.px(0.0),
        f.py(0.0),
        f.px(lim),
        f.py(-lim)
    );

    for iso in &chart.isometrics {
        let (a, b) = match iso.line {
            IsometricLine::Vertical { over } => ((over, 0.0), (over, -lim)),
            IsometricLine::Sloped { slope, intercept } => {
                ((0.0, intercept), (lim, intercept + slope * lim))
            }
        };
        let _ = writeln!(
            out,
            r##"<line class="isometric" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#bbb"/>"##,
            f.px(a.0),
            f.py(a.1),
            f.px(b.0),
            f.py(b.1)
        );
    }

    let mut entries: Vec<(String, &str)> = Vec::new();
    for (i, c) in chart.curves.iter().enumerate() {
        let col = color(i);
        let pts: Vec<(f64, f64)> = c
            .distinct_vertices()
            .iter()
            .map(|v| clamp(v.point, lim))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline class="curve" fill="none" stroke="{col}" stroke-width="1.5" points="{}"/>"#,
            polyline(&f, pts)
        );
        for v in c.visible_vertices() {
            let _ = writeln!(
                out,
                r#"<circle class="vertex" cx="{:.2}" cy="{:.2}" r="3" fill="{col}"/>"#,
                f.px(v.over()),
                f.py(v.under())
            );
        }
        let _ = writeln!(
            out,
            r#"<rect class="origin" x="{:.2}" y="{:.2}" width="8" height="8" fill="none" stroke="{col}" stroke-width="1.5"/>"#,
            f.px(c.origin.over) - 4.0,
            f.py(c.origin.under) - 4.0
        );
        entries.push((c.model_id.clone(), col));
    }
    for (j, (id, p)) in chart.points.iter().enumerate() {
        let col = color(chart.curves.len() + j);
        let _ = writeln!(
            out,
            r#"<circle class="point" cx="{:.2}" cy="{:.2}" r="5" fill="{col}"/>"#,
            f.px(p.over),
            f.py(p.under)
        );
        entries.push((id.to_string(), col));
    }
    if let Some(h) = chart.hull {
        let pts: Vec<(f64, f64)> = h.points.iter().map(|p| clamp(p.point, lim)).collect();
        let _ = writeln!(
            out,
            r#"<polyline class="hull" fill="none" stroke="black" stroke-width="1" points="{}"/>"#,
            polyline(&f, pts)
        );
    }
    let _ = writeln!(out, "</g>");
    legend(&mut out, &f, &entries);
    out.push_str("</svg>\n");
    Ok(out)
}

/// The RROC chart of a report: curves when present, otherwise the model
/// points, plus the matching hull and an isometric through the best point at
/// each queried alpha.
pub fn render_report(report: &EvaluationReport, style: &SvgStyle) -> Result<String> {
    let curves: Vec<&RrocCurve> = report
        .models
        .iter()
        .filter_map(|m| m.curve.as_ref())
        .collect();
    let points: Vec<(&str, RrocPoint)> = if curves.is_empty() {
        report
            .models
            .iter()
            .filter_map(|m| m.point.map(|p| (m.model_id.as_str(), p)))
            .collect()
    } else {
        Vec::new()
    };
    let hull = report.hull.as_ref().and_then(|h| {
        if curves.is_empty() {
            Some(&h.points)
        } else {
            h.curves.as_ref()
        }
    });
    let isometrics = report
        .queries
        .iter()
        .filter_map(|q| {
            let m = report.model(&q.best_model)?;
            let p = m.point?;
            let oc = crate::metrics::OperatingCondition::new(q.alpha).ok()?;
            Some(crate::analysis::isometric_through(p, oc))
        })
        .collect();
    let chart = RrocChart {
        curves,
        points,
        hull,
        isometrics,
    };
    render_rroc(&chart, style)
}

/// Overlay of error densities on a shared axis.
pub fn render_densities(densities: &[ErrorDensity], style: &SvgStyle) -> Result<String> {
    if densities.is_empty() {
        return Err(Error::Empty("nothing to plot"));
    }
    let (x0, x1) = densities
        .iter()
        .flat_map(|d| d.grid.iter())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| {
            (a.min(x), b.max(x))
        });
    let ymax = densities
        .iter()
        .flat_map(|d| d.density.iter())
        .fold(0.0_f64, |m, &y| m.max(y));
    let ymax = if ymax > 0.0 { ymax * 1.05 } else { 1.0 };
    let f = Frame::new(
        style,
        (x0, if x1 > x0 { x1 } else { x0 + 1.0 }),
        (0.0, ymax),
    );
    let mut out = String::new();
    open(&mut out, style);
    clip(&mut out, &f);
    axes(&mut out, &f, "error", "density");
    let _ = writeln!(out, r#"<g clip-path="url(#plot)">"#);
    let mut entries = Vec::new();
    for (i, d) in densities.iter().enumerate() {
        let col = color(i);
        let _ = writeln!(
            out,
            r#"<polyline class="density" fill="none" stroke="{col}" stroke-width="1.5" points="{}"/>"#,
            polyline(&f, d.grid.iter().copied().zip(d.density.iter().copied()))
        );
        entries.push((d.model_id.clone(), col));
    }
    let _ = writeln!(out, "</g>");
    legend(&mut out, &f, &entries);
    out.push_str("</svg>\n");
    Ok(out)
}

/// Mean loss against alpha, one line per model and shift method.
pub fn render_cost_curves(curves: &[CostCurve], style: &SvgStyle) -> Result<String> {
    if curves.is_empty() {
        return Err(Error::Empty("nothing to plot"));
    }
    let ymax = curves
        .iter()
        .flat_map(|c| c.losses.iter())
        .fold(0.0_f64, |m, &y| m.max(y));
    let ymax = if ymax > 0.0 { ymax * 1.05 } else { 1.0 };
    let f = Frame::new(style, (0.0, 1.0), (0.0, ymax));
    let mut out = String::new();
    open(&mut out, style);
    clip(&mut out, &f);
    axes(&mut out, &f, "alpha", "mean loss");
    let _ = writeln!(out, r#"<g clip-path="url(#plot)">"#);

    let mut models: Vec<&str> = Vec::new();
    let mut entries = Vec::new();
    for c in curves {
        let idx = match models.iter().position(|m| *m == c.model_id) {
            Some(i) => i,
            None => {
                models.push(&c.model_id);
                models.len() - 1
            }
        };
        let col = color(idx);
        let dash = match c.method.as_str() {
            "none" => "",
            "optimal_constant" => r#" stroke-dasharray="6,3""#,
            _ => r#" stroke-dasharray="2,3""#,
        };
        let _ = writeln!(
            out,
            r#"<polyline class="cost" fill="none" stroke="{col}" stroke-width="1.5"{dash} points="{}"/>"#,
            polyline(&f, c.alphas.iter().copied().zip(c.losses.iter().copied()))
        );
        entries.push((format!("{} {}", c.model_id, c.method), col));
    }
    let _ = writeln!(out, "</g>");
    legend(&mut out, &f, &entries);
    out.push_str("</svg>\n");
    Ok(out)
}
