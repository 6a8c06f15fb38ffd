//! End-to-end run: evaluate every DMU, rank, and render reports.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::{DmuDataset, Mode, Orientation, DEFAULT_EPSILON};
use crate::rank::{
    classify, geometric, rank_dmus, spearman, Comparison, RankReport, RankRow, Recommendation, ReportMetadata,
    DEFAULT_CLASSIFY_TOLERANCE,
};
use crate::scalarize::{evaluate_dmu, weight_population_sized, ScalarizedResult, DEFAULT_POPULATION_MULTIPLIER};

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrientationChoice {
    Optimistic,
    Pessimistic,
    Both,
}

impl OrientationChoice {
    pub fn orientations(self) -> &'static [Orientation] {
        match self {
            OrientationChoice::Optimistic => &[Orientation::Optimistic],
            OrientationChoice::Pessimistic => &[Orientation::Pessimistic],
            OrientationChoice::Both => &[Orientation::Optimistic, Orientation::Pessimistic],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
    Table,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub epsilon: f64,
    pub seed: u64,
    pub population_multiplier: usize,
    pub mode: Mode,
    pub orientation: OrientationChoice,
    pub format: OutputFormat,
    pub classify_tolerance: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            epsilon: DEFAULT_EPSILON,
            seed: DEFAULT_SEED,
            population_multiplier: DEFAULT_POPULATION_MULTIPLIER,
            mode: Mode::LeastSquares,
            orientation: OrientationChoice::Both,
            format: OutputFormat::Table,
            classify_tolerance: DEFAULT_CLASSIFY_TOLERANCE,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::Config(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        if self.population_multiplier == 0 {
            return Err(Error::Config("population multiplier must be at least 1".into()));
        }
        if self.classify_tolerance.is_nan() || self.classify_tolerance < 0.0 {
            return Err(Error::Config("classification tolerance must be non-negative".into()));
        }
        Ok(())
    }

    pub fn population_size(&self, dataset: &DmuDataset) -> usize {
        self.population_multiplier * dataset.num_variables()
    }
}

/// Scalarized results for every DMU and requested orientation, ordered by
/// DMU then optimistic before pessimistic. Infeasibilities are collected
/// across all DMUs before failing.
pub fn evaluate(dataset: &DmuDataset, config: &RunConfig) -> Result<Vec<ScalarizedResult>> {
    config.validate()?;
    let population = weight_population_sized(dataset.num_variables(), 3, config.seed, config.population_multiplier)?;
    let jobs: Vec<(usize, Orientation)> = (0..dataset.len())
        .flat_map(|k| config.orientation.orientations().iter().map(move |o| (k, *o)))
        .collect();
    let outcomes: Vec<Result<ScalarizedResult>> = jobs
        .par_iter()
        .map(|&(k, o)| evaluate_dmu(dataset, k, o, config.epsilon, config.mode, &population))
        .collect();

    let mut results = Vec::with_capacity(outcomes.len());
    let mut infeasible = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(r) => results.push(r),
            Err(Error::Infeasible(reports)) => infeasible.extend(reports),
            Err(e) => return Err(e),
        }
    }
    if infeasible.is_empty() {
        Ok(results)
    } else {
        Err(Error::Infeasible(infeasible))
    }
}

fn find<'a>(results: &'a [ScalarizedResult], id: &str, o: Orientation) -> Result<&'a ScalarizedResult> {
    results
        .iter()
        .find(|r| r.dmu == id && r.orientation == o)
        .ok_or_else(|| Error::Config(format!("missing {o} result for DMU '{id}'")))
}

/// Geometric scores, classification, ranks and, with external ranks, the
/// Spearman comparison.
pub fn rank_and_report(
    results: &[ScalarizedResult],
    dataset: &DmuDataset,
    config: &RunConfig,
    external_ranks: Option<&[(String, f64)]>,
    reference_rho: Option<f64>,
) -> Result<RankReport> {
    let mut partial = Vec::with_capacity(dataset.len());
    for dmu in dataset.dmus() {
        let opt = find(results, &dmu.id, Orientation::Optimistic)?.efficiency;
        let pes = find(results, &dmu.id, Orientation::Pessimistic)?.efficiency;
        let geo = geometric(opt, pes)?;
        let class = classify(opt, pes, config.classify_tolerance)?;
        partial.push((dmu, opt, pes, geo, class));
    }
    let scores: Vec<(String, f64)> = partial.iter().map(|p| (p.0.id.clone(), p.3)).collect();
    let ranked = rank_dmus(&scores)?;
    let rows: Vec<RankRow> = partial
        .into_iter()
        .zip(ranked)
        .map(
            |((dmu, optimistic, pessimistic, geometric, classification), r)| RankRow {
                id: dmu.id.clone(),
                label: dmu.label.clone(),
                optimistic,
                pessimistic,
                geometric,
                classification,
                rank: r.rank,
                tied: r.tied,
            },
        )
        .collect();

    let comparison = match external_ranks {
        None => None,
        Some(ext) => {
            if ext.len() != rows.len() {
                return Err(Error::Config(format!(
                    "external ranking lists {} DMUs, dataset has {}",
                    ext.len(),
                    rows.len()
                )));
            }
            let external: Vec<f64> = rows
                .iter()
                .map(|row| {
                    ext.iter()
                        .find(|(id, _)| *id == row.id)
                        .map(|(_, r)| *r)
                        .ok_or_else(|| Error::Config(format!("external ranking has no entry for DMU '{}'", row.id)))
                })
                .collect::<Result<_>>()?;
            let ours: Vec<f64> = rows.iter().map(|r| r.rank as f64).collect();
            Some(Comparison {
                spearman_rho: spearman(&ours, &external)?,
                external_ranks: external,
                reference_rho,
            })
        }
    };

    let recommendations = rows.iter().map(Recommendation::from_row).collect();
    Ok(RankReport {
        metadata: ReportMetadata {
            seed: config.seed,
            epsilon: config.epsilon,
            mode: config.mode,
            population_size: config.population_size(dataset),
            classify_tolerance: config.classify_tolerance,
        },
        rows,
        comparison,
        recommendations,
    })
}

fn join(values: impl IntoIterator<Item = f64>) -> Vec<String> {
    values.into_iter().map(|v| v.to_string()).collect()
}

#[derive(Serialize)]
struct EvaluationDocument<'a> {
    config: &'a RunConfig,
    population_size: usize,
    input_names: &'a [String],
    output_names: &'a [String],
    results: &'a [ScalarizedResult],
}

/// Render per-DMU scalarized results.
pub fn render_evaluation(results: &[ScalarizedResult], dataset: &DmuDataset, config: &RunConfig) -> Result<String> {
    match config.format {
        OutputFormat::Json => {
            let doc = EvaluationDocument {
                config,
                population_size: config.population_size(dataset),
                input_names: dataset.input_names(),
                output_names: dataset.output_names(),
                results,
            };
            Ok(serde_json::to_string_pretty(&doc)? + "\n")
        }
        OutputFormat::Csv => {
            let mut header: Vec<String> = [
                "id",
                "orientation",
                "mode",
                "efficiency",
                "w1",
                "w2",
                "w3",
                "objective_L",
                "objective_M",
                "objective_U",
                "bound_L",
                "bound_M",
                "bound_U",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect();
            header.extend(dataset.input_names().iter().map(|n| format!("u:{n}")));
            header.extend(dataset.output_names().iter().map(|n| format!("v:{n}")));
            let mut rows = vec![header];
            for r in results {
                let mut row = vec![
                    r.dmu.clone(),
                    r.orientation.to_string(),
                    r.mode.to_string(),
                    r.efficiency.to_string(),
                ];
                row.extend(join(r.best_weights.as_slice().iter().copied()));
                row.extend(join(r.objectives));
                row.extend(join(r.bounds.values()));
                row.extend(join(r.multipliers.u.iter().copied()));
                row.extend(join(r.multipliers.v.iter().copied()));
                rows.push(row);
            }
            write_csv(
                &rows,
                &[format!(
                    "seed={} epsilon={} population={}",
                    config.seed,
                    config.epsilon,
                    config.population_size(dataset)
                )],
            )
        }
        OutputFormat::Table => {
            let mut out = String::new();
            writeln!(
                out,
                "mode={} seed={} epsilon={} population={}",
                config.mode,
                config.seed,
                config.epsilon,
                config.population_size(dataset)
            )
            .unwrap();
            writeln!(
                out,
                "{:<10} {:<12} {:>10} {:>26} {:>32}",
                "DMU", "orientation", "efficiency", "weights (w1, w2, w3)", "bounds (L, M, U)"
            )
            .unwrap();
            for r in results {
                let w = r.best_weights.as_slice();
                let b = r.bounds.values();
                writeln!(
                    out,
                    "{:<10} {:<12} {:>10.4} {:>26} {:>32}",
                    r.dmu,
                    r.orientation.to_string(),
                    r.efficiency,
                    format!("({:.4}, {:.4}, {:.4})", w[0], w[1], w[2]),
                    format!("({:.4}, {:.4}, {:.4})", b[0], b[1], b[2]),
                )
                .unwrap();
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct RankDocument<'a> {
    config: &'a RunConfig,
    report: &'a RankReport,
    evaluations: &'a [ScalarizedResult],
}

/// Render a ranking report, including the recommendation section.
pub fn render_rank_report(report: &RankReport, results: &[ScalarizedResult], config: &RunConfig) -> Result<String> {
    match config.format {
        OutputFormat::Json => {
            let doc = RankDocument {
                config,
                report,
                evaluations: results,
            };
            Ok(serde_json::to_string_pretty(&doc)? + "\n")
        }
        OutputFormat::Csv => {
            let mut header: Vec<String> = [
                "id",
                "label",
                "optimistic",
                "pessimistic",
                "geometric",
                "optimistic_class",
                "pessimistic_class",
                "rank",
                "tied",
                "dominant",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect();
            if report.comparison.is_some() {
                header.push("external_rank".into());
            }
            let mut rows = vec![header];
            for (i, (row, rec)) in report.rows.iter().zip(&report.recommendations).enumerate() {
                let mut line = vec![
                    row.id.clone(),
                    row.label.clone(),
                    row.optimistic.to_string(),
                    row.pessimistic.to_string(),
                    row.geometric.to_string(),
                    row.classification.optimistic.to_string(),
                    row.classification.pessimistic.to_string(),
                    row.rank.to_string(),
                    row.tied.to_string(),
                    dominance_label(rec),
                ];
                if let Some(c) = &report.comparison {
                    line.push(c.external_ranks[i].to_string());
                }
                rows.push(line);
            }
            let mut trailer = vec![metadata_line(report)];
            if let Some(c) = &report.comparison {
                trailer.push(comparison_line(c));
            }
            write_csv(&rows, &trailer)
        }
        OutputFormat::Table => {
            let mut out = String::new();
            writeln!(out, "{}", metadata_line(report)).unwrap();
            writeln!(
                out,
                "{:<6} {:<24} {:>10} {:>11} {:>10} {:>5}  classification",
                "DMU", "label", "E^O*", "E^P*", "geometric", "rank"
            )
            .unwrap();
            for row in &report.rows {
                let rank = if row.tied {
                    format!("{}=", row.rank)
                } else {
                    row.rank.to_string()
                };
                writeln!(
                    out,
                    "{:<6} {:<24} {:>10.4} {:>11.4} {:>10.4} {:>5}  {}",
                    row.id,
                    truncate(&row.label, 24),
                    row.optimistic,
                    row.pessimistic,
                    row.geometric,
                    rank,
                    row.classification
                )
                .unwrap();
            }
            if let Some(c) = &report.comparison {
                writeln!(out).unwrap();
                writeln!(out, "{}", comparison_line(c)).unwrap();
            }
            writeln!(out).unwrap();
            writeln!(out, "Recommendations (best rank first):").unwrap();
            let mut recs: Vec<&Recommendation> = report.recommendations.iter().collect();
            recs.sort_by_key(|r| r.rank);
            for rec in recs {
                writeln!(
                    out,
                    "  {:>3}. {:<6} {}; score driven by {} (shortfall {:.4}, excess {:.4})",
                    rec.rank,
                    rec.id,
                    rec.classification,
                    dominance_label(rec).replace('_', " "),
                    rec.optimistic_shortfall,
                    rec.pessimistic_excess
                )
                .unwrap();
            }
            Ok(out)
        }
    }
}

fn dominance_label(rec: &Recommendation) -> String {
    match rec.dominant {
        crate::rank::Dominance::OptimisticShortfall => "optimistic_shortfall".into(),
        crate::rank::Dominance::PessimisticExcess => "pessimistic_excess".into(),
    }
}

fn metadata_line(report: &RankReport) -> String {
    let m = &report.metadata;
    format!(
        "mode={} seed={} epsilon={} population={} classify_tolerance={}",
        m.mode, m.seed, m.epsilon, m.population_size, m.classify_tolerance
    )
}

fn comparison_line(c: &Comparison) -> String {
    match c.reference_rho {
        Some(r) => format!("spearman_rho={} reference_rho={r}", c.spearman_rho),
        None => format!("spearman_rho={}", c.spearman_rho),
    }
}

fn truncate(s: &str, n: usize) -> String {
    s.chars().take(n).collect()
}

/// CSV rows followed by `# key=value` trailer lines.
fn write_csv(rows: &[Vec<String>], trailer: &[String]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(row)
            .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    }
    let mut out = String::from_utf8(
        w.into_inner()
            .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?,
    )
    .expect("csv output is utf-8");
    for line in trailer {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    Ok(out)
}

/// Render only the side-by-side ranks and the Spearman statistic.
pub fn render_comparison(report: &RankReport, config: &RunConfig) -> Result<String> {
    let c = report
        .comparison
        .as_ref()
        .ok_or_else(|| Error::Config("report carries no external ranking".into()))?;
    match config.format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                id: &'a str,
                rank: usize,
                tied: bool,
                external_rank: f64,
            }
            #[derive(Serialize)]
            struct Doc<'a> {
                config: &'a RunConfig,
                rows: Vec<Row<'a>>,
                comparison: &'a Comparison,
            }
            let rows = report
                .rows
                .iter()
                .zip(&c.external_ranks)
                .map(|(r, e)| Row {
                    id: &r.id,
                    rank: r.rank,
                    tied: r.tied,
                    external_rank: *e,
                })
                .collect();
            Ok(serde_json::to_string_pretty(&Doc {
                config,
                rows,
                comparison: c,
            })? + "\n")
        }
        OutputFormat::Csv => {
            let mut rows = vec![vec!["id".to_string(), "rank".into(), "external_rank".into()]];
            for (r, e) in report.rows.iter().zip(&c.external_ranks) {
                rows.push(vec![r.id.clone(), r.rank.to_string(), e.to_string()]);
            }
            write_csv(&rows, &[metadata_line(report), comparison_line(c)])
        }
        OutputFormat::Table => {
            let mut out = String::new();
            writeln!(out, "{:<10} {:>6} {:>10}", "DMU", "rank", "external").unwrap();
            for (r, e) in report.rows.iter().zip(&c.external_ranks) {
                writeln!(out, "{:<10} {:>6} {:>10}", r.id, r.rank, e).unwrap();
            }
            writeln!(out, "{}", comparison_line(c)).unwrap();
            Ok(out)
        }
    }
}
