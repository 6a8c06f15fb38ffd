//! Crisp and fuzzy optimistic/pessimistic DEA models.
//!
//! Every model is linearized with the Charnes-Cooper normalization and solved
//! as an LP over the multipliers `[u_1..u_m, v_1..v_s]`, all bounded below by
//! `epsilon`.
//!
//! The fuzzy models optimize the triple of bound ratios
//!
//! ```text
//! ( v.y^L_k / u.x^U_k,  v.y^M_k / u.x^M_k,  v.y^U_k / u.x^L_k )
//! ```
//!
//! subject to `v.y^U_j - u.x^L_j <= 0` for every DMU `j` (optimistic) or
//! `v.y^L_j - u.x^U_j >= 0` (pessimistic). How the three denominators are
//! normalized is selected by [`Mode`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, InfeasibilityReport, Result};
use crate::linprog::{dot, LinearProgram, LpSolution, LpSolver, LpStatus, Relation, Sense, Simplex};
use crate::tfn::Tfn;

/// Default lower bound on every multiplier.
pub const DEFAULT_EPSILON: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Optimistic,
    Pessimistic,
}

impl Orientation {
    pub fn sense(self) -> Sense {
        match self {
            Orientation::Optimistic => Sense::Maximize,
            Orientation::Pessimistic => Sense::Minimize,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Optimistic => "optimistic",
            Orientation::Pessimistic => "pessimistic",
        })
    }
}

/// How the three bound denominators are normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// One LP with `u.x^L_k = u.x^M_k = u.x^U_k = 1` imposed together.
    /// Infeasible as soon as any input of DMU `k` has a non-zero spread.
    Literal,
    /// Three independent LPs, one normalization each.
    PerBound,
    /// One LP with `u.x^b_k = t_b`, where `t` is the closest attainable
    /// right-hand side to `(1, 1, 1)` in the least-squares sense over
    /// `u >= epsilon`. Coincides with [`Mode::Literal`] whenever that is
    /// feasible.
    LeastSquares,
}

impl Mode {
    /// Whether the three objectives share one feasible set, so that weighted
    /// objectives must be solved as a single LP per weight vector.
    pub fn is_joint(self) -> bool {
        !matches!(self, Mode::PerBound)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Literal => "literal",
            Mode::PerBound => "per_bound",
            Mode::LeastSquares => "least_squares",
        })
    }
}

/// One decision-making unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DmuRecord {
    pub id: String,
    pub label: String,
    pub inputs: Vec<Tfn>,
    pub outputs: Vec<Tfn>,
}

/// Validated collection of DMUs sharing the same input/output schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDataset")]
pub struct DmuDataset {
    input_names: Vec<String>,
    output_names: Vec<String>,
    dmus: Vec<DmuRecord>,
}

#[derive(Deserialize)]
struct RawDataset {
    input_names: Vec<String>,
    output_names: Vec<String>,
    dmus: Vec<DmuRecord>,
}

impl TryFrom<RawDataset> for DmuDataset {
    type Error = Error;

    fn try_from(raw: RawDataset) -> Result<Self> {
        DmuDataset::new(raw.input_names, raw.output_names, raw.dmus)
    }
}

impl DmuDataset {
    pub fn new(input_names: Vec<String>, output_names: Vec<String>, dmus: Vec<DmuRecord>) -> Result<Self> {
        let (m, s) = (input_names.len(), output_names.len());
        if m == 0 || s == 0 {
            return Err(Error::Dimension(format!(
                "need at least one input and one output, got m={m}, s={s}"
            )));
        }
        if dmus.is_empty() {
            return Err(Error::Empty("DMU list"));
        }
        let mut seen = std::collections::HashSet::new();
        for dmu in &dmus {
            if !seen.insert(dmu.id.as_str()) {
                return Err(Error::Domain(format!("duplicate DMU id '{}'", dmu.id)));
            }
            if dmu.inputs.len() != m || dmu.outputs.len() != s {
                return Err(Error::Dimension(format!(
                    "DMU '{}' has {} inputs and {} outputs, expected {m} and {s}",
                    dmu.id,
                    dmu.inputs.len(),
                    dmu.outputs.len()
                )));
            }
            let columns = input_names
                .iter()
                .zip(&dmu.inputs)
                .chain(output_names.iter().zip(&dmu.outputs));
            for (name, value) in columns {
                if !value.is_positive() {
                    return Err(Error::Domain(format!(
                        "DMU '{}', column '{name}': value {value} must be a positive fuzzy number",
                        dmu.id
                    )));
                }
            }
        }
        Ok(DmuDataset {
            input_names,
            output_names,
            dmus,
        })
    }

    pub fn dmus(&self) -> &[DmuRecord] {
        &self.dmus
    }

    pub fn input_names(&self) -> &[String] {
        &self.input_names
    }

    pub fn output_names(&self) -> &[String] {
        &self.output_names
    }

    pub fn len(&self) -> usize {
        self.dmus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dmus.is_empty()
    }

    pub fn num_inputs(&self) -> usize {
        self.input_names.len()
    }

    pub fn num_outputs(&self) -> usize {
        self.output_names.len()
    }

    /// Decision variables per model, `m + s`.
    pub fn num_variables(&self) -> usize {
        self.num_inputs() + self.num_outputs()
    }

    pub fn is_crisp(&self) -> bool {
        self.dmus
            .iter()
            .all(|d| d.inputs.iter().chain(&d.outputs).all(Tfn::is_crisp))
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.dmus.iter().position(|d| d.id == id)
    }

    fn check_index(&self, k: usize) -> Result<()> {
        if k < self.dmus.len() {
            Ok(())
        } else {
            Err(Error::Range(format!(
                "DMU index {k} out of range for {} DMUs",
                self.dmus.len()
            )))
        }
    }
}

/// Input weights `u` and output weights `v`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Multipliers {
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

impl Multipliers {
    fn from_lp(x: &[f64], m: usize) -> Self {
        Multipliers {
            u: x[..m].to_vec(),
            v: x[m..].to_vec(),
        }
    }
}

/// Optimal value of each objective of a fuzzy model, together with the
/// multipliers attaining it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundEfficiencies {
    pub orientation: Orientation,
    pub lo: f64,
    pub mid: f64,
    pub hi: f64,
    pub multipliers_lo: Multipliers,
    pub multipliers_mid: Multipliers,
    pub multipliers_hi: Multipliers,
}

impl BoundEfficiencies {
    pub fn values(&self) -> [f64; 3] {
        [self.lo, self.mid, self.hi]
    }

    pub fn multipliers(&self, bound: Bound) -> &Multipliers {
        match bound {
            Bound::Lower => &self.multipliers_lo,
            Bound::Middle => &self.multipliers_mid,
            Bound::Upper => &self.multipliers_hi,
        }
    }
}

/// Index into a fuzzy triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Lower,
    Middle,
    Upper,
}

impl Bound {
    pub const ALL: [Bound; 3] = [Bound::Lower, Bound::Middle, Bound::Upper];

    fn of(self, t: &Tfn) -> f64 {
        match self {
            Bound::Lower => t.lo(),
            Bound::Middle => t.mid(),
            Bound::Upper => t.hi(),
        }
    }

    /// Denominator bound paired with this numerator bound by fuzzy division.
    fn opposite(self) -> Bound {
        match self {
            Bound::Lower => Bound::Upper,
            Bound::Middle => Bound::Middle,
            Bound::Upper => Bound::Lower,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Bound::Lower => 0,
            Bound::Middle => 1,
            Bound::Upper => 2,
        }
    }
}

fn column(values: &[Tfn], bound: Bound) -> Vec<f64> {
    values.iter().map(|t| bound.of(t)).collect()
}

/// `[u-part, v-part]` row of an LP.
fn row(u_part: &[f64], v_part: &[f64]) -> Vec<f64> {
    u_part.iter().chain(v_part).copied().collect()
}

fn neg(xs: &[f64]) -> Vec<f64> {
    xs.iter().map(|x| -x).collect()
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("epsilon must be positive, got {epsilon}")))
    }
}

/// Crisp CCR-type model (optimistic: all ratios at most 1, maximize; pessimistic:
/// all ratios at least 1, minimize). Uses the middle value of every number,
/// which must be degenerate.
fn crisp_model(
    dataset: &DmuDataset,
    k: usize,
    epsilon: f64,
    orientation: Orientation,
    solver: &dyn LpSolver,
) -> Result<(f64, Multipliers)> {
    dataset.check_index(k)?;
    check_epsilon(epsilon)?;
    if !dataset.is_crisp() {
        return Err(Error::Domain("crisp models need degenerate (crisp) data".into()));
    }
    let m = dataset.num_inputs();
    let dmu = &dataset.dmus[k];
    let y_k = column(&dmu.outputs, Bound::Middle);
    let mut lp = LinearProgram::new(orientation.sense(), row(&vec![0.0; m], &y_k)).with_lower_bounds(vec![
        epsilon;
        dataset
            .num_variables(
            )
    ]);
    lp.constrain(
        row(&column(&dmu.inputs, Bound::Middle), &vec![0.0; y_k.len()]),
        Relation::Eq,
        1.0,
    );
    let relation = match orientation {
        Orientation::Optimistic => Relation::Le,
        Orientation::Pessimistic => Relation::Ge,
    };
    for other in &dataset.dmus {
        let x = column(&other.inputs, Bound::Middle);
        let y = column(&other.outputs, Bound::Middle);
        lp.constrain(row(&neg(&x), &y), relation, 0.0);
    }
    let sol = solver.solve(&lp)?;
    match sol.status {
        LpStatus::Optimal => Ok((sol.objective_value, Multipliers::from_lp(&sol.variables, m))),
        LpStatus::Infeasible => Err(Error::Infeasible(vec![InfeasibilityReport {
            dmu: dmu.id.clone(),
            orientation,
            mode: Mode::Literal,
            conflicts: Vec::new(),
            detail: format!("crisp model infeasible (epsilon {epsilon} may be too large for the data scale)"),
        }])),
        LpStatus::Unbounded => Err(Error::Solver(format!("crisp model unbounded for DMU {}", dmu.id))),
    }
}

/// Optimistic efficiency of DMU `k` on crisp data.
pub fn crisp_optimistic(dataset: &DmuDataset, k: usize, epsilon: f64) -> Result<(f64, Multipliers)> {
    crisp_model(dataset, k, epsilon, Orientation::Optimistic, &Simplex::default())
}

/// Pessimistic efficiency of DMU `k` on crisp data.
pub fn crisp_pessimistic(dataset: &DmuDataset, k: usize, epsilon: f64) -> Result<(f64, Multipliers)> {
    crisp_model(dataset, k, epsilon, Orientation::Pessimistic, &Simplex::default())
}

/// Optimistic bound efficiencies of DMU `k`.
pub fn fmoo_bounds(dataset: &DmuDataset, k: usize, epsilon: f64, mode: Mode) -> Result<BoundEfficiencies> {
    FuzzyModel::new(dataset, k, Orientation::Optimistic, epsilon, mode)?.bounds()
}

/// Pessimistic bound efficiencies of DMU `k`.
pub fn fmop_bounds(dataset: &DmuDataset, k: usize, epsilon: f64, mode: Mode) -> Result<BoundEfficiencies> {
    FuzzyModel::new(dataset, k, Orientation::Pessimistic, epsilon, mode)?.bounds()
}

/// Optimum of a weighted objective `sum_b w_b * v.y^b_k` in a joint mode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedSolution {
    /// `(v.y^L_k, v.y^M_k, v.y^U_k)` at the optimum.
    pub objectives: [f64; 3],
    pub multipliers: Multipliers,
}

static DEFAULT_SOLVER: Simplex = Simplex {
    pivot_tolerance: 1e-9,
    feasibility_tolerance: 1e-7,
    max_iterations: 100_000,
};

/// Fuzzy optimistic or pessimistic model for one DMU.
pub struct FuzzyModel<'a> {
    dataset: &'a DmuDataset,
    k: usize,
    orientation: Orientation,
    epsilon: f64,
    mode: Mode,
    solver: &'a dyn LpSolver,
    /// Right-hand sides of `u.x^L_k`, `u.x^M_k`, `u.x^U_k` in joint modes.
    targets: [f64; 3],
}

impl<'a> FuzzyModel<'a> {
    pub fn new(dataset: &'a DmuDataset, k: usize, orientation: Orientation, epsilon: f64, mode: Mode) -> Result<Self> {
        Self::with_solver(dataset, k, orientation, epsilon, mode, &DEFAULT_SOLVER)
    }

    pub fn with_solver(
        dataset: &'a DmuDataset,
        k: usize,
        orientation: Orientation,
        epsilon: f64,
        mode: Mode,
        solver: &'a dyn LpSolver,
    ) -> Result<Self> {
        dataset.check_index(k)?;
        check_epsilon(epsilon)?;
        let targets = match mode {
            Mode::LeastSquares => least_squares_targets(&dataset.dmus[k].inputs, epsilon)?,
            Mode::Literal | Mode::PerBound => [1.0; 3],
        };
        Ok(FuzzyModel {
            dataset,
            k,
            orientation,
            epsilon,
            mode,
            solver,
            targets,
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Normalization right-hand sides `(t_L, t_M, t_U)`.
    pub fn targets(&self) -> [f64; 3] {
        self.targets
    }

    fn dmu(&self) -> &DmuRecord {
        &self.dataset.dmus[self.k]
    }

    fn base_lp(&self, objective_v: Vec<f64>) -> LinearProgram {
        let m = self.dataset.num_inputs();
        let mut lp = LinearProgram::new(self.orientation.sense(), row(&vec![0.0; m], &objective_v))
            .with_lower_bounds(vec![self.epsilon; self.dataset.num_variables()]);
        for other in &self.dataset.dmus {
            let (y_bound, x_bound, relation) = match self.orientation {
                Orientation::Optimistic => (Bound::Upper, Bound::Lower, Relation::Le),
                Orientation::Pessimistic => (Bound::Lower, Bound::Upper, Relation::Ge),
            };
            let x = column(&other.inputs, x_bound);
            let y = column(&other.outputs, y_bound);
            lp.constrain(row(&neg(&x), &y), relation, 0.0);
        }
        lp
    }

    fn add_normalization(&self, lp: &mut LinearProgram, bound: Bound, rhs: f64) {
        let s = self.dataset.num_outputs();
        lp.constrain(
            row(&column(&self.dmu().inputs, bound), &vec![0.0; s]),
            Relation::Eq,
            rhs,
        );
    }

    /// Per-bound LP for the ratio `v.y^b_k / u.x^opp(b)_k`.
    fn per_bound_lp(&self, bound: Bound) -> LinearProgram {
        let mut lp = self.base_lp(column(&self.dmu().outputs, bound));
        self.add_normalization(&mut lp, bound.opposite(), 1.0);
        lp
    }

    /// Joint LP for `sum_b w_b * v.y^b_k` with all three normalizations.
    fn joint_lp(&self, weights: &[f64; 3]) -> LinearProgram {
        let outputs = &self.dmu().outputs;
        let objective = (0..outputs.len())
            .map(|r| Bound::ALL.iter().map(|b| weights[b.index()] * b.of(&outputs[r])).sum())
            .collect();
        let mut lp = self.base_lp(objective);
        for b in Bound::ALL {
            self.add_normalization(&mut lp, b, self.targets[b.index()]);
        }
        lp
    }

    fn solve(&self, lp: &LinearProgram) -> Result<LpSolution> {
        let sol = self.solver.solve(lp)?;
        match sol.status {
            LpStatus::Optimal => Ok(sol),
            LpStatus::Infeasible => Err(Error::Infeasible(vec![self.infeasibility_report()])),
            LpStatus::Unbounded => Err(Error::Solver(format!(
                "{} model unbounded for DMU {}",
                self.orientation,
                self.dmu().id
            ))),
        }
    }

    fn infeasibility_report(&self) -> InfeasibilityReport {
        let mut conflicts = Vec::new();
        if self.mode == Mode::Literal {
            let inputs = &self.dmu().inputs;
            let label = |b: Bound| match b {
                Bound::Lower => "sum(u*x^L) = 1",
                Bound::Middle => "sum(u*x^M) = 1",
                Bound::Upper => "sum(u*x^U) = 1",
            };
            for (a, b) in [
                (Bound::Lower, Bound::Middle),
                (Bound::Middle, Bound::Upper),
                (Bound::Lower, Bound::Upper),
            ] {
                let differing: Vec<&str> = self
                    .dataset
                    .input_names
                    .iter()
                    .zip(inputs)
                    .filter(|(_, t)| a.of(t) != b.of(t))
                    .map(|(n, _)| n.as_str())
                    .collect();
                if !differing.is_empty() {
                    conflicts.push(format!(
                        "{} vs {} (inputs {})",
                        label(a),
                        label(b),
                        differing.join(", ")
                    ));
                }
            }
        }
        let detail = if conflicts.is_empty() {
            format!("no multipliers >= {} satisfy the constraints", self.epsilon)
        } else {
            "the simultaneous normalization equalities cannot hold for strictly fuzzy inputs".to_owned()
        };
        InfeasibilityReport {
            dmu: self.dmu().id.clone(),
            orientation: self.orientation,
            mode: self.mode,
            conflicts,
            detail,
        }
    }

    /// Optimize each objective on its own.
    pub fn bounds(&self) -> Result<BoundEfficiencies> {
        let m = self.dataset.num_inputs();
        let mut values = [0.0; 3];
        let mut mults: Vec<Multipliers> = Vec::with_capacity(3);
        for b in Bound::ALL {
            let (value, x) = if self.mode.is_joint() {
                let mut w = [0.0; 3];
                w[b.index()] = 1.0;
                let sol = self.solve(&self.joint_lp(&w))?;
                (sol.objective_value, sol.variables)
            } else {
                let sol = self.solve(&self.per_bound_lp(b))?;
                (sol.objective_value, sol.variables)
            };
            values[b.index()] = value;
            mults.push(Multipliers::from_lp(&x, m));
        }
        let tol = 1e-7 * values.iter().fold(1.0f64, |a, v| a.max(v.abs()));
        if values[0] > values[1] + tol || values[1] > values[2] + tol {
            return Err(Error::Solver(format!(
                "bound ordering violated for DMU {}: {values:?}",
                self.dmu().id
            )));
        }
        let mut it = mults.into_iter();
        Ok(BoundEfficiencies {
            orientation: self.orientation,
            lo: values[0],
            mid: values[1],
            hi: values[2],
            multipliers_lo: it.next().unwrap(),
            multipliers_mid: it.next().unwrap(),
            multipliers_hi: it.next().unwrap(),
        })
    }

    /// Solve the weighted-sum problem for one weight vector. Only defined
    /// for joint modes; per-bound objectives live on different feasible sets.
    pub fn solve_weighted(&self, weights: &[f64; 3]) -> Result<WeightedSolution> {
        if !self.mode.is_joint() {
            return Err(Error::Config("weighted solves need a joint mode".into()));
        }
        let sol = self.solve(&self.joint_lp(weights))?;
        let m = self.dataset.num_inputs();
        let multipliers = Multipliers::from_lp(&sol.variables, m);
        let outputs = &self.dmu().outputs;
        let objectives = Bound::ALL.map(|b| dot(&multipliers.v, &column(outputs, b)));
        Ok(WeightedSolution {
            objectives,
            multipliers,
        })
    }
}

/// `A u*` for `u* = argmin_{u >= eps} ||A u - 1||^2`, where the rows of `A`
/// are the lower, middle and upper input vectors of one DMU.
pub fn least_squares_targets(inputs: &[Tfn], epsilon: f64) -> Result<[f64; 3]> {
    let rows: [Vec<f64>; 3] = Bound::ALL.map(|b| column(inputs, b));
    let m = inputs.len();
    // shift u = eps + z, z >= 0
    let rhs: Vec<f64> = rows.iter().map(|r| 1.0 - epsilon * r.iter().sum::<f64>()).collect();
    let z = nnls(&rows, &rhs, m)?;
    let u: Vec<f64> = z.iter().map(|zi| zi + epsilon).collect();
    Ok([dot(&rows[0], &u), dot(&rows[1], &u), dot(&rows[2], &u)])
}

/// Lawson-Hanson non-negative least squares for a short, wide system.
fn nnls(a: &[Vec<f64>], b: &[f64], n: usize) -> Result<Vec<f64>> {
    let scale = a.iter().flatten().fold(0.0f64, |acc, v| acc.max(v.abs())).max(1.0);
    let tol = 1e-12 * scale * scale;
    let mut x = vec![0.0; n];
    let mut passive = vec![false; n];

    let gradient = |x: &[f64]| -> Vec<f64> {
        let resid: Vec<f64> = a.iter().zip(b).map(|(row, bi)| bi - dot(row, x)).collect();
        (0..n)
            .map(|j| a.iter().zip(&resid).map(|(row, r)| row[j] * r).sum())
            .collect()
    };

    for _ in 0..(3 * n + 10) {
        let w = gradient(&x);
        let candidate = (0..n)
            .filter(|&j| !passive[j] && w[j] > tol)
            .max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let Some(j) = candidate else {
            return Ok(x);
        };
        passive[j] = true;
        loop {
            let set: Vec<usize> = (0..n).filter(|&i| passive[i]).collect();
            let zs = restricted_lstsq(a, b, &set);
            let mut z = vec![0.0; n];
            for (&i, zi) in set.iter().zip(&zs) {
                z[i] = *zi;
            }
            if set.iter().all(|&i| z[i] > 0.0) {
                x = z;
                break;
            }
            // step back toward x until the first passive variable hits zero
            let alpha = set
                .iter()
                .filter(|&&i| z[i] <= 0.0)
                .map(|&i| x[i] / (x[i] - z[i]))
                .fold(f64::INFINITY, f64::min);
            for i in 0..n {
                x[i] += alpha * (z[i] - x[i]);
                if passive[i] && x[i] <= tol {
                    x[i] = 0.0;
                    passive[i] = false;
                }
            }
        }
    }
    Err(Error::Solver("least-squares normalization did not converge".into()))
}

/// Unconstrained least squares over the columns in `set`, via normal
/// equations; columns with a vanishing pivot are held at zero.
fn restricted_lstsq(a: &[Vec<f64>], b: &[f64], set: &[usize]) -> Vec<f64> {
    let k = set.len();
    let mut g = vec![vec![0.0; k + 1]; k];
    for (p, &i) in set.iter().enumerate() {
        for (q, &j) in set.iter().enumerate() {
            g[p][q] = a.iter().map(|row| row[i] * row[j]).sum();
        }
        g[p][k] = a.iter().zip(b).map(|(row, bi)| row[i] * bi).sum();
    }
    let diag_scale = (0..k).map(|p| g[p][p]).fold(0.0f64, f64::max).max(f64::MIN_POSITIVE);
    let mut solution = vec![0.0; k];
    let mut pivot_col = vec![usize::MAX; k];
    let mut r = 0;
    for c in 0..k {
        let Some(best) = (r..k).max_by(|&p, &q| g[p][c].abs().total_cmp(&g[q][c].abs())) else {
            break;
        };
        if g[best][c].abs() <= 1e-12 * diag_scale {
            continue;
        }
        g.swap(r, best);
        let pivot_row = g[r].clone();
        for (p, row) in g.iter_mut().enumerate() {
            if p != r {
                let f = row[c] / pivot_row[c];
                if f != 0.0 {
                    for (x, y) in row[c..=k].iter_mut().zip(&pivot_row[c..=k]) {
                        *x -= f * y;
                    }
                }
            }
        }
        pivot_col[r] = c;
        r += 1;
    }
    for p in 0..r {
        let c = pivot_col[p];
        solution[c] = g[p][k] / g[p][c];
    }
    solution
}
