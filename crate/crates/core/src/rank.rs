//! Classification, geometric-average scores, ranking and rank correlation.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::Mode;

/// Default tolerance for deciding that an efficiency equals 1.
pub const DEFAULT_CLASSIFY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OptimisticClass {
    #[serde(rename = "optimistic-efficient")]
    Efficient,
    #[serde(rename = "optimistic-non-efficient")]
    NonEfficient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PessimisticClass {
    #[serde(rename = "pessimistic-inefficient")]
    Inefficient,
    #[serde(rename = "pessimistic-non-inefficient")]
    NonInefficient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub optimistic: OptimisticClass,
    pub pessimistic: PessimisticClass,
}

impl fmt::Display for OptimisticClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OptimisticClass::Efficient => "optimistic-efficient",
            OptimisticClass::NonEfficient => "optimistic-non-efficient",
        })
    }
}

impl fmt::Display for PessimisticClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PessimisticClass::Inefficient => "pessimistic-inefficient",
            PessimisticClass::NonInefficient => "pessimistic-non-inefficient",
        })
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.optimistic, self.pessimistic)
    }
}

/// A unit is optimistic-efficient when its optimistic score is 1 and
/// pessimistic-inefficient when its pessimistic score is 1, both up to `tol`.
pub fn classify(optimistic: f64, pessimistic: f64, tol: f64) -> Result<Classification> {
    if !(optimistic > 0.0 && optimistic <= 1.0 + tol) {
        return Err(Error::Domain(format!(
            "optimistic efficiency {optimistic} outside (0, 1]"
        )));
    }
    if !pessimistic.is_finite() || pessimistic < 1.0 - tol {
        return Err(Error::Domain(format!("pessimistic efficiency {pessimistic} below 1")));
    }
    Ok(Classification {
        optimistic: if (optimistic - 1.0).abs() <= tol {
            OptimisticClass::Efficient
        } else {
            OptimisticClass::NonEfficient
        },
        pessimistic: if (pessimistic - 1.0).abs() <= tol {
            PessimisticClass::Inefficient
        } else {
            PessimisticClass::NonInefficient
        },
    })
}

/// `sqrt(optimistic * pessimistic)`.
pub fn geometric(optimistic: f64, pessimistic: f64) -> Result<f64> {
    if !(optimistic > 0.0 && pessimistic > 0.0) || !optimistic.is_finite() || !pessimistic.is_finite() {
        return Err(Error::Domain(format!(
            "geometric average needs positive scores, got {optimistic} and {pessimistic}"
        )));
    }
    Ok((optimistic * pessimistic).sqrt())
}

/// Rank assigned to one score.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedScore {
    pub id: String,
    pub score: f64,
    pub rank: usize,
    /// Another unit shares this rank.
    pub tied: bool,
}

/// Competition ranking ("1, 1, 3") in descending order of score. Rows come
/// back in input order.
pub fn rank_dmus(scores: &[(String, f64)]) -> Result<Vec<RankedScore>> {
    if scores.is_empty() {
        return Err(Error::Empty("score list"));
    }
    if scores.iter().any(|(_, s)| s.is_nan()) {
        return Err(Error::Domain("cannot rank NaN scores".into()));
    }
    Ok(scores
        .iter()
        .map(|(id, score)| {
            let above = scores.iter().filter(|(_, other)| other > score).count();
            let equal = scores.iter().filter(|(_, other)| other == score).count();
            RankedScore {
                id: id.clone(),
                score: *score,
                rank: above + 1,
                tied: equal > 1,
            }
        })
        .collect())
}

/// Ranks `1..n` in ascending order of value, ties replaced by their average
/// rank.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1..=end
        let avg = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = avg;
        }
        start = end;
    }
    ranks
}

/// Tie-corrected Spearman correlation: Pearson correlation of average ranks.
pub fn spearman(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::Dimension(format!(
            "rank lists of length {} and {}",
            a.len(),
            b.len()
        )));
    }
    if a.is_empty() {
        return Err(Error::Empty("rank list"));
    }
    if a.iter().chain(b).any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("rank list"));
    }
    let ra = average_ranks(a);
    let rb = average_ranks(b);
    let n = ra.len() as f64;
    let mean = (n + 1.0) / 2.0;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in ra.iter().zip(&rb) {
        let (dx, dy) = (x - mean, y - mean);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa == 0.0 || sbb == 0.0 {
        return Err(Error::Domain(
            "Spearman correlation is undefined for a constant list".into(),
        ));
    }
    Ok((sab / (saa * sbb).sqrt()).clamp(-1.0, 1.0))
}

/// Run parameters echoed in every report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportMetadata {
    pub seed: u64,
    pub epsilon: f64,
    pub mode: Mode,
    pub population_size: usize,
    pub classify_tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankRow {
    pub id: String,
    pub label: String,
    pub optimistic: f64,
    pub pessimistic: f64,
    pub geometric: f64,
    pub classification: Classification,
    pub rank: usize,
    pub tied: bool,
}

/// Rank correlation with an external ranking.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    /// External rank per DMU, in dataset order.
    pub external_ranks: Vec<f64>,
    pub spearman_rho: f64,
    /// A published correlation to print next to ours, when supplied.
    pub reference_rho: Option<f64>,
}

/// Which side of the geometric score pulls it away from 1 the most.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dominance {
    /// `-ln(optimistic) > ln(pessimistic)`: the best-case shortfall from the
    /// frontier outweighs the worst-case margin.
    OptimisticShortfall,
    /// `ln(pessimistic) >= -ln(optimistic)`.
    PessimisticExcess,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Recommendation {
    pub id: String,
    pub rank: usize,
    pub classification: Classification,
    pub optimistic_shortfall: f64,
    pub pessimistic_excess: f64,
    pub dominant: Dominance,
}

impl Recommendation {
    pub fn from_row(row: &RankRow) -> Self {
        let shortfall = -row.optimistic.ln();
        let excess = row.pessimistic.ln();
        Recommendation {
            id: row.id.clone(),
            rank: row.rank,
            classification: row.classification,
            optimistic_shortfall: shortfall,
            pessimistic_excess: excess,
            dominant: if shortfall > excess {
                Dominance::OptimisticShortfall
            } else {
                Dominance::PessimisticExcess
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankReport {
    pub metadata: ReportMetadata,
    pub rows: Vec<RankRow>,
    pub comparison: Option<Comparison>,
    pub recommendations: Vec<Recommendation>,
}

impl RankReport {
    pub fn row(&self, id: &str) -> Option<&RankRow> {
        self.rows.iter().find(|r| r.id == id)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.rank).collect()
    }
}
