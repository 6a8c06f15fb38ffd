//! Weighted-sum scalarization of the three bound objectives.
//!
//! A seeded population of `100 * p` weight vectors is drawn uniformly from the
//! probability simplex (normalized unit-rate exponentials, i.e. a flat
//! Dirichlet). Each vector turns the three objectives into one; the best
//! weighted value over the population (largest for optimistic, smallest for
//! pessimistic) is the unit's efficiency.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::models::{Bound, BoundEfficiencies, DmuDataset, FuzzyModel, Mode, Multipliers, Orientation};

/// Population size per decision variable.
pub const DEFAULT_POPULATION_MULTIPLIER: usize = 100;

/// Non-negative weights summing to one.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Empty("weight vector"));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::Domain(format!(
                "weights must be finite and non-negative: {weights:?}"
            )));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("weights must sum to 1, got {sum}")));
        }
        Ok(WeightVector(weights))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn triple(&self) -> Result<[f64; 3]> {
        <[f64; 3]>::try_from(self.0.as_slice())
            .map_err(|_| Error::Dimension(format!("expected 3 weights, got {}", self.0.len())))
    }

    fn dot(&self, values: &[f64; 3]) -> f64 {
        self.0.iter().zip(values).map(|(w, v)| w * v).sum()
    }
}

/// `multiplier * p` weight vectors of dimension `d`, reproducible from `seed`.
pub fn weight_population_sized(p: usize, d: usize, seed: u64, multiplier: usize) -> Result<Vec<WeightVector>> {
    if p == 0 || multiplier == 0 {
        return Err(Error::Config("population needs p >= 1 and multiplier >= 1".into()));
    }
    if d < 2 {
        return Err(Error::Config(format!("need at least two objectives, got {d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = multiplier * p;
    let mut population = Vec::with_capacity(count);
    while population.len() < count {
        let draws: Vec<f64> = (0..d).map(|_| Exp1.sample(&mut rng)).collect();
        let total: f64 = draws.iter().sum();
        if total <= 0.0 {
            continue;
        }
        let mut w: Vec<f64> = draws.iter().map(|x| x / total).collect();
        // push the rounding residue into the largest component
        let residue = 1.0 - w.iter().sum::<f64>();
        let largest = (0..d).max_by(|&i, &j| w[i].total_cmp(&w[j])).unwrap_or(0);
        w[largest] = (w[largest] + residue).max(0.0);
        population.push(WeightVector(w));
    }
    Ok(population)
}

/// `100 * p` weight vectors of dimension `d`.
pub fn weight_population(p: usize, d: usize, seed: u64) -> Result<Vec<WeightVector>> {
    weight_population_sized(p, d, seed, DEFAULT_POPULATION_MULTIPLIER)
}

/// `w1*lo + w2*mid + w3*hi`.
pub fn scalarize(bounds: &BoundEfficiencies, w: &WeightVector) -> f64 {
    w.dot(&bounds.values())
}

/// Selected efficiency of one DMU in one orientation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalarizedResult {
    pub dmu: String,
    pub orientation: Orientation,
    pub mode: Mode,
    pub efficiency: f64,
    pub best_weights: WeightVector,
    /// The objective triple that `best_weights` was applied to. Equal to the
    /// bound efficiencies in per-bound mode; in joint modes, the three
    /// objectives at the weighted optimum.
    pub objectives: [f64; 3],
    pub multipliers: Multipliers,
    pub bounds: BoundEfficiencies,
    pub population_size: usize,
}

fn better(orientation: Orientation, candidate: f64, incumbent: f64) -> bool {
    match orientation {
        Orientation::Optimistic => candidate > incumbent,
        Orientation::Pessimistic => candidate < incumbent,
    }
}

/// Best scalarization of a fixed bound triple over the population. Ties keep
/// the first vector in population order. The reported multipliers are those
/// of the bound carrying the largest weight.
pub fn select_best(dmu: &str, bounds: &BoundEfficiencies, population: &[WeightVector]) -> Result<ScalarizedResult> {
    let (first, rest) = population.split_first().ok_or(Error::Empty("weight population"))?;
    let mut best = first;
    let mut best_value = scalarize(bounds, first);
    for w in rest {
        let value = scalarize(bounds, w);
        if better(bounds.orientation, value, best_value) {
            best = w;
            best_value = value;
        }
    }
    let weights = best.triple()?;
    let heaviest = Bound::ALL.into_iter().fold(Bound::Lower, |acc, b| {
        if weights[b.index()] > weights[acc.index()] {
            b
        } else {
            acc
        }
    });
    Ok(ScalarizedResult {
        dmu: dmu.to_owned(),
        orientation: bounds.orientation,
        mode: Mode::PerBound,
        efficiency: best_value,
        best_weights: best.clone(),
        objectives: bounds.values(),
        multipliers: bounds.multipliers(heaviest).clone(),
        bounds: bounds.clone(),
        population_size: population.len(),
    })
}

/// Solve the weighted-sum LP for every vector of the population and keep the
/// best. Used by the joint modes, where the three objectives share one
/// feasible set.
pub fn select_best_weighted(
    dmu: &str,
    model: &FuzzyModel<'_>,
    bounds: &BoundEfficiencies,
    population: &[WeightVector],
) -> Result<ScalarizedResult> {
    if population.is_empty() {
        return Err(Error::Empty("weight population"));
    }
    let orientation = model.orientation();
    let mut best: Option<(f64, &WeightVector, crate::models::WeightedSolution)> = None;
    for w in population {
        let sol = model.solve_weighted(&w.triple()?)?;
        let value = w.dot(&sol.objectives);
        let replace = match &best {
            None => true,
            Some((incumbent, _, _)) => better(orientation, value, *incumbent),
        };
        if replace {
            best = Some((value, w, sol));
        }
    }
    let (efficiency, weights, sol) = best.expect("population is non-empty");
    Ok(ScalarizedResult {
        dmu: dmu.to_owned(),
        orientation,
        mode: model.mode(),
        efficiency,
        best_weights: weights.clone(),
        objectives: sol.objectives,
        multipliers: sol.multipliers,
        bounds: bounds.clone(),
        population_size: population.len(),
    })
}

/// Bounds and scalarized efficiency of DMU `k`.
pub fn evaluate_dmu(
    dataset: &DmuDataset,
    k: usize,
    orientation: Orientation,
    epsilon: f64,
    mode: Mode,
    population: &[WeightVector],
) -> Result<ScalarizedResult> {
    let model = FuzzyModel::new(dataset, k, orientation, epsilon, mode)?;
    let bounds = model.bounds()?;
    let id = &dataset.dmus()[k].id;
    if mode.is_joint() {
        select_best_weighted(id, &model, &bounds, population)
    } else {
        select_best(id, &bounds, population)
    }
}
