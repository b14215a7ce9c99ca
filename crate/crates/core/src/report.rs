//! The end-to-end analysis pipeline behind `rroc analyze`, and the JSON
//! report it produces.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{best_point_for_alpha, convex_hull, ConvexHull, DominanceMap, HullInput};
use crate::curve::RrocCurve;
use crate::dataset::Dataset;
use crate::density::{error_densities, ErrorDensity, DEFAULT_DENSITY_POINTS};
use crate::error::{Error, Result};
use crate::metrics::{total_loss, ErrorVector, OperatingCondition, RrocPoint, SummaryMetrics};
use crate::shift::{
    alpha_grid, cost_curve, optimal_constant_shift, CostCurve, ShiftMethod, DEFAULT_ALPHA_POINTS,
};
use crate::svg;

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    Points,
    Curves,
    Hull,
    Dominance,
    Cost,
    Density,
}

impl OutputKind {
    pub const ALL: [OutputKind; 6] = [
        OutputKind::Points,
        OutputKind::Curves,
        OutputKind::Hull,
        OutputKind::Dominance,
        OutputKind::Cost,
        OutputKind::Density,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            OutputKind::Points => "points",
            OutputKind::Curves => "curves",
            OutputKind::Hull => "hull",
            OutputKind::Dominance => "dominance",
            OutputKind::Cost => "cost",
            OutputKind::Density => "density",
        }
    }
}

impl fmt::Display for OutputKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OutputKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OutputKind::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown output `{s}`")))
    }
}

/// Parses a comma-separated output list such as `points,hull`.
pub fn parse_outputs(s: &str) -> Result<BTreeSet<OutputKind>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// Parses a comma-separated list of asymmetries, each in `[0, 1]`.
pub fn parse_alphas(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let a: f64 = p
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("cannot parse alpha `{p}`")))?;
            OperatingCondition::new(a).map(|oc| oc.alpha())
        })
        .collect()
}

/// What to compute and which files to write.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub input: PathBuf,
    /// Optional training predictions for the trained-constant shift method.
    /// Model ids must match the input's.
    pub train: Option<PathBuf>,
    /// Operating conditions to query individually.
    pub alphas: Vec<f64>,
    pub normalize: bool,
    pub outputs: BTreeSet<OutputKind>,
    /// Resolution of cost curves.
    pub alpha_points: usize,
    pub svg: Option<PathBuf>,
    pub json: Option<PathBuf>,
    /// Omit the timestamp so identical inputs give byte-identical reports.
    pub reproducible: bool,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>) -> Self {
        Self {
            input: input.into(),
            train: None,
            alphas: vec![0.5],
            normalize: false,
            outputs: OutputKind::ALL.into_iter().collect(),
            alpha_points: DEFAULT_ALPHA_POINTS,
            svg: None,
            json: None,
            reproducible: false,
        }
    }

    fn options(&self) -> AnalysisOptions {
        AnalysisOptions {
            alphas: self.alphas.clone(),
            normalize: self.normalize,
            outputs: self.outputs.clone(),
            alpha_points: self.alpha_points,
        }
    }
}

/// The in-memory part of [`RunConfig`]: everything except file locations.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisOptions {
    pub alphas: Vec<f64>,
    pub normalize: bool,
    pub outputs: BTreeSet<OutputKind>,
    pub alpha_points: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        RunConfig::new("").options()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub train: Option<String>,
    pub alphas: Vec<f64>,
    pub normalize: bool,
    pub outputs: Vec<OutputKind>,
    pub alpha_points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelReport {
    pub model_id: String,
    pub metrics: SummaryMetrics,
    /// Present when `points` is requested. Divided by `n` under normalization.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<RrocPoint>,
    /// Area over the curve in raw units.
    pub aoc: f64,
    /// `aoc / n^2`, the area of the normalized curve.
    pub normalized_aoc: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<RrocCurve>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelLoss {
    pub model_id: String,
    /// Total loss of the unshifted model.
    pub loss: f64,
    pub mean_loss: f64,
    /// Best constant shift at this alpha and the total loss it reaches.
    pub optimal_shift: f64,
    pub optimal_loss: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaQuery {
    pub alpha: f64,
    #[serde(with = "crate::serde_ext")]
    pub slope: f64,
    pub losses: Vec<ModelLoss>,
    /// Best unshifted model (ties: lower OVER, then lower |UNDER|).
    pub best_model: String,
    pub best_loss: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullReport {
    /// Hull of the unshifted model points.
    pub points: ConvexHull,
    /// Hull of the full curves.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curves: Option<ConvexHull>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DominanceReport {
    pub points: DominanceMap,
    pub curves: DominanceMap,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub schema_version: String,
    pub tool: ToolInfo,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at_unix: Option<u64>,
    pub config: ConfigEcho,
    pub n: usize,
    pub models: Vec<ModelReport>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub queries: Vec<AlphaQuery>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hull: Option<HullReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dominance: Option<DominanceReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cost_curves: Option<Vec<CostCurve>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub densities: Option<Vec<ErrorDensity>>,
}

impl EvaluationReport {
    pub fn model(&self, id: &str) -> Option<&ModelReport> {
        self.models.iter().find(|m| m.model_id == id)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

struct ModelWork {
    report: ModelReport,
    curve: RrocCurve,
    cost: Vec<CostCurve>,
}

/// Analyses every model of `data`. `train`, when given, enables the
/// trained-constant cost curves.
pub fn analyze(
    data: &Dataset,
    train: Option<&Dataset>,
    options: &AnalysisOptions,
) -> Result<EvaluationReport> {
    let wants = |k: OutputKind| options.outputs.contains(&k);
    let queries_oc: Vec<OperatingCondition> = options
        .alphas
        .iter()
        .map(|&a| OperatingCondition::new(a))
        .collect::<Result<_>>()?;
    let grid = if wants(OutputKind::Cost) {
        alpha_grid(options.alpha_points)?
    } else {
        Vec::new()
    };

    let errors = data.error_vectors();
    let train_errors: Option<Vec<ErrorVector>> = match train {
        None => None,
        Some(t) => Some(
            errors
                .iter()
                .map(|(id, _)| {
                    t.errors(id).ok_or_else(|| {
                        Error::Config(format!("training data has no predictions for model `{id}`"))
                    })
                })
                .collect::<Result<_>>()?,
        ),
    };

    let n = data.n();
    let work: Vec<ModelWork> = errors
        .par_iter()
        .enumerate()
        .map(|(i, (id, e))| {
            let raw = RrocCurve::from_errors(id.clone(), e);
            let aoc = raw.aoc()?;
            check_area_identity(id, e, aoc)?;
            let curve = if options.normalize {
                raw.normalized()
            } else {
                raw
            };
            let point = if options.normalize {
                e.over_under().normalized(n)
            } else {
                e.over_under()
            };

            let mut cost = Vec::new();
            if wants(OutputKind::Cost) {
                cost.push(cost_curve(id, e, &ShiftMethod::None, &grid)?);
                cost.push(cost_curve(id, e, &ShiftMethod::OptimalConstant, &grid)?);
                if let Some(train) = &train_errors {
                    let method = ShiftMethod::trained(train[i].clone());
                    cost.push(cost_curve(id, e, &method, &grid)?);
                }
            }

            Ok(ModelWork {
                report: ModelReport {
                    model_id: id.clone(),
                    metrics: e.metrics(),
                    point: wants(OutputKind::Points).then_some(point),
                    aoc,
                    normalized_aoc: aoc / (n as f64 * n as f64),
                    curve: wants(OutputKind::Curves).then(|| curve.clone()),
                },
                curve,
                cost,
            })
        })
        .collect::<Result<_>>()?;

    let queries = if wants(OutputKind::Points) {
        queries_oc
            .iter()
            .map(|&oc| alpha_query(&errors, oc))
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };

    let point_inputs: Vec<(String, RrocPoint)> = work
        .iter()
        .map(|w| (w.report.model_id.clone(), w.curve.origin))
        .collect();
    let point_refs: Vec<HullInput<'_>> = point_inputs
        .iter()
        .map(|(id, p)| HullInput::Point {
            model_id: id,
            point: *p,
        })
        .collect();
    let curve_refs: Vec<HullInput<'_>> = work.iter().map(|w| HullInput::Curve(&w.curve)).collect();

    let need_hulls = wants(OutputKind::Hull) || wants(OutputKind::Dominance);
    let (point_hull, curve_hull) = if need_hulls {
        (
            Some(convex_hull(&point_refs)?),
            Some(convex_hull(&curve_refs)?),
        )
    } else {
        (None, None)
    };

    let dominance = match (&point_hull, &curve_hull) {
        (Some(p), Some(c)) if wants(OutputKind::Dominance) => Some(DominanceReport {
            points: DominanceMap::from_hull(p)?,
            curves: DominanceMap::from_hull(c)?,
        }),
        _ => None,
    };
    let hull = if wants(OutputKind::Hull) {
        point_hull.map(|points| HullReport {
            points,
            curves: curve_hull,
        })
    } else {
        None
    };

    let densities = if wants(OutputKind::Density) {
        Some(error_densities(&errors, DEFAULT_DENSITY_POINTS)?)
    } else {
        None
    };

    let mut models = Vec::with_capacity(work.len());
    let mut cost_curves = Vec::new();
    for w in work {
        models.push(w.report);
        cost_curves.extend(w.cost);
    }

    Ok(EvaluationReport {
        schema_version: SCHEMA_VERSION.to_string(),
        tool: ToolInfo {
            name: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
        generated_at_unix: None,
        config: ConfigEcho {
            input: None,
            train: None,
            alphas: options.alphas.clone(),
            normalize: options.normalize,
            outputs: options.outputs.iter().copied().collect(),
            alpha_points: options.alpha_points,
        },
        n,
        models,
        queries,
        hull,
        dominance,
        cost_curves: wants(OutputKind::Cost).then_some(cost_curves),
        densities,
    })
}

fn alpha_query(errors: &[(String, ErrorVector)], oc: OperatingCondition) -> Result<AlphaQuery> {
    let n = errors.first().map_or(1, |(_, e)| e.len()) as f64;
    let points: Vec<RrocPoint> = errors.iter().map(|(_, e)| e.over_under()).collect();
    let losses = errors
        .iter()
        .zip(&points)
        .map(|((id, e), &p)| {
            let loss = total_loss(p, oc);
            let opt = optimal_constant_shift(e, oc);
            ModelLoss {
                model_id: id.clone(),
                loss,
                mean_loss: loss / n,
                optimal_shift: opt.shift,
                optimal_loss: opt.loss,
            }
        })
        .collect();
    let best = best_point_for_alpha(&points, oc)?;
    Ok(AlphaQuery {
        alpha: oc.alpha(),
        slope: oc.slope(),
        losses,
        best_model: errors[best.index].0.clone(),
        best_loss: best.loss,
    })
}

/// The area over a curve must equal `variance * n^2 / 2`; a mismatch means
/// the curve construction is wrong, not the data.
fn check_area_identity(model_id: &str, errors: &ErrorVector, aoc: f64) -> Result<()> {
    let n = errors.len() as f64;
    let expected = errors.variance() * n * n / 2.0;
    let scale = errors.iter().fold(0.0_f64, |m, e| m.max(e.abs())) * n;
    let tol = 1e-9 * expected.abs() + 1e-12 * scale * scale;
    if (aoc - expected).abs() > tol {
        return Err(Error::Invariant(format!(
            "model `{model_id}`: area over curve {aoc} differs from variance * n^2 / 2 = {expected}"
        )));
    }
    Ok(())
}

/// Loads the inputs, analyses them and writes the requested files. Nothing is
/// written unless every stage succeeds.
pub fn run(config: &RunConfig) -> Result<EvaluationReport> {
    let data = Dataset::from_csv_path(&config.input)?;
    let train = config
        .train
        .as_ref()
        .map(Dataset::from_csv_path)
        .transpose()?;
    let mut report = analyze(&data, train.as_ref(), &config.options())?;
    report.config.input = Some(config.input.display().to_string());
    report.config.train = config.train.as_ref().map(|p| p.display().to_string());
    if !config.reproducible {
        report.generated_at_unix = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs());
    }

    let mut files: Vec<(PathBuf, String)> = Vec::new();
    if let Some(path) = &config.json {
        files.push((path.clone(), report.to_json()?));
    }
    if let Some(path) = &config.svg {
        files.push((
            path.clone(),
            svg::render_report(&report, &svg::SvgStyle::default())?,
        ));
        if let Some(d) = &report.densities {
            files.push((
                sibling(path, "density"),
                svg::render_densities(d, &svg::SvgStyle::default())?,
            ));
        }
        if let Some(c) = &report.cost_curves {
            files.push((
                sibling(path, "cost"),
                svg::render_cost_curves(c, &svg::SvgStyle::default())?,
            ));
        }
    }
    write_all_or_nothing(&files)?;
    Ok(report)
}

/// `out/plot.svg` with tag `cost` becomes `out/plot-cost.svg`.
pub fn sibling(path: &Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("plot");
    let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("svg");
    path.with_file_name(format!("{stem}-{tag}.{ext}"))
}

fn write_all_or_nothing(files: &[(PathBuf, String)]) -> Result<()> {
    let temp = |p: &Path| {
        let mut name = p.file_name().map(|s| s.to_os_string()).unwrap_or_default();
        name.push(format!(".{}.partial", std::process::id()));
        p.with_file_name(name)
    };
    let mut written: Vec<PathBuf> = Vec::new();
    for (path, contents) in files {
        let t = temp(path);
        if let Err(e) = fs::write(&t, contents) {
            for w in &written {
                let _ = fs::remove_file(w);
            }
            return Err(e.into());
        }
        written.push(t);
    }
    for (path, _) in files {
        fs::rename(temp(path), path)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample_data;

    fn options(outputs: &str) -> AnalysisOptions {
        AnalysisOptions {
            outputs: parse_outputs(outputs).unwrap(),
            ..AnalysisOptions::default()
        }
    }

    #[test]
    fn parses_lists() {
        assert_eq!(parse_alphas("0.5, 0.8").unwrap(), vec![0.5, 0.8]);
        assert!(matches!(
            parse_alphas("1.5"),
            Err(Error::AlphaOutOfRange(_))
        ));
        assert!(parse_alphas("x").is_err());
        assert_eq!(parse_outputs("hull,points").unwrap().len(), 2);
        assert!(parse_outputs("pie").is_err());
    }

    #[test]
    fn point_hull_drops_m2() {
        let data = sample_data::subset(&["m1", "m2", "m3"]);
        let r = analyze(&data, None, &options("hull")).unwrap();
        let hull = r.hull.unwrap();
        let ids: Vec<_> = hull
            .points
            .finite()
            .iter()
            .map(|p| p.source.model_id().unwrap())
            .collect();
        assert_eq!(ids, vec!["m1", "m3"]);
        assert_eq!(hull.curves.unwrap().finite().len(), 12);
    }

    #[test]
    fn query_losses() {
        let data = sample_data::subset(&["m1", "m2", "m3"]);
        let opts = AnalysisOptions {
            alphas: vec![0.8],
            ..options("points")
        };
        let r = analyze(&data, None, &opts).unwrap();
        let q = &r.queries[0];
        assert!((q.losses[0].loss - 10.1092).abs() < 5e-4);
        assert!((q.losses[2].loss - 6.1164).abs() < 5e-4);
        assert_eq!(q.best_model, "m3");
        assert!(r.cost_curves.is_none() && r.hull.is_none());
    }

    #[test]
    fn normalization_scales_points_and_curves() {
        let data = sample_data::subset(&["m1"]);
        let opts = AnalysisOptions {
            normalize: true,
            ..options("points,curves")
        };
        let r = analyze(&data, None, &opts).unwrap();
        let m = &r.models[0];
        let p = m.point.unwrap();
        assert!((p.over - 0.2569).abs() < 5e-5 && (p.under + 0.5676).abs() < 5e-5);
        assert!((m.curve.as_ref().unwrap().aoc().unwrap() - 0.561387).abs() < 5e-6);
        assert!((m.normalized_aoc - 0.561387).abs() < 5e-6);
    }

    #[test]
    fn trained_cost_curves_need_matching_ids() {
        let data = sample_data::subset(&["m1", "m3"]);
        let r = analyze(&data, Some(&data), &options("cost")).unwrap();
        assert_eq!(r.cost_curves.as_ref().unwrap().len(), 6);
        let other = sample_data::subset(&["m1"]);
        assert!(matches!(
            analyze(&data, Some(&other), &options("cost")),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn json_round_trips() {
        let r = analyze(&sample_data::dataset(), None, &AnalysisOptions::default()).unwrap();
        let json = r.to_json().unwrap();
        assert!(json.contains("\"-inf\""));
        let back: EvaluationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_json().unwrap(), json);
    }

    #[test]
    fn sibling_names() {
        assert_eq!(
            sibling(Path::new("out/plot.svg"), "cost"),
            PathBuf::from("out/plot-cost.svg")
        );
    }
}
