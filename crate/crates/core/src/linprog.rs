//! Small dense linear-programming solver.
//!
//! The DEA models in this crate produce programs with a handful of variables
//! and at most a few dozen constraints, so a dense two-phase tableau simplex
//! with Bland's anti-cycling rule is enough. Every variable carries a finite
//! lower bound `x >= l`, handled by the substitution `x = l + x'`.
//!
//! [`LpSolver`] is the seam for plugging in another solver; the model builders
//! only depend on [`LinearProgram`] and [`LpSolution`].

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Constraint {
    pub coefficients: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearProgram {
    pub sense: Sense,
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
    pub lower_bounds: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Objective at `variables`; NaN unless the status is optimal.
    pub objective_value: f64,
    pub variables: Vec<f64>,
}

impl LpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }

    fn without_point(status: LpStatus, p: usize) -> Self {
        LpSolution {
            status,
            objective_value: f64::NAN,
            variables: vec![f64::NAN; p],
        }
    }
}

impl LinearProgram {
    /// Program over `objective.len()` variables, all bounded below by zero.
    pub fn new(sense: Sense, objective: Vec<f64>) -> Self {
        let p = objective.len();
        LinearProgram {
            sense,
            objective,
            constraints: Vec::new(),
            lower_bounds: vec![0.0; p],
        }
    }

    pub fn with_lower_bounds(mut self, lower_bounds: Vec<f64>) -> Self {
        self.lower_bounds = lower_bounds;
        self
    }

    pub fn constrain(&mut self, coefficients: Vec<f64>, relation: Relation, rhs: f64) -> &mut Self {
        self.constraints.push(Constraint {
            coefficients,
            relation,
            rhs,
        });
        self
    }

    pub fn num_variables(&self) -> usize {
        self.objective.len()
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.objective.len();
        if p == 0 {
            return Err(Error::Empty("linear program variables"));
        }
        if self.lower_bounds.len() != p {
            return Err(Error::Dimension(format!(
                "{} lower bounds for {p} variables",
                self.lower_bounds.len()
            )));
        }
        if self.objective.iter().chain(&self.lower_bounds).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("objective or lower bounds"));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if c.coefficients.len() != p {
                return Err(Error::Dimension(format!(
                    "constraint {i} has {} coefficients, expected {p}",
                    c.coefficients.len()
                )));
            }
            if !c.rhs.is_finite() || c.coefficients.iter().any(|x| !x.is_finite()) {
                return Err(Error::NonFinite("constraint row"));
            }
        }
        Ok(())
    }

    /// Objective value at `x`.
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        dot(&self.objective, x)
    }

    /// Largest violation of any constraint or lower bound at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let rows = self.constraints.iter().map(|c| {
            let lhs = dot(&c.coefficients, x);
            match c.relation {
                Relation::Le => (lhs - c.rhs).max(0.0),
                Relation::Ge => (c.rhs - lhs).max(0.0),
                Relation::Eq => (lhs - c.rhs).abs(),
            }
        });
        let bounds = self.lower_bounds.iter().zip(x).map(|(l, xi)| (l - xi).max(0.0));
        rows.chain(bounds).fold(0.0, f64::max)
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Anything that can solve a [`LinearProgram`].
pub trait LpSolver: Send + Sync {
    fn solve(&self, lp: &LinearProgram) -> Result<LpSolution>;
}

/// Two-phase dense simplex with Bland's rule.
#[derive(Debug, Clone, Copy)]
pub struct Simplex {
    pub pivot_tolerance: f64,
    pub feasibility_tolerance: f64,
    pub max_iterations: usize,
}

impl Default for Simplex {
    fn default() -> Self {
        Simplex {
            pivot_tolerance: 1e-9,
            feasibility_tolerance: 1e-7,
            max_iterations: 100_000,
        }
    }
}

/// Solve with the default [`Simplex`].
pub fn solve(lp: &LinearProgram) -> Result<LpSolution> {
    Simplex::default().solve(lp)
}

impl LpSolver for Simplex {
    fn solve(&self, lp: &LinearProgram) -> Result<LpSolution> {
        lp.validate()?;
        let p = lp.num_variables();
        let mut tableau = Tableau::build(lp);
        let scale = tableau.rhs_scale();

        // phase 1: minimize the sum of artificials
        if tableau.num_artificial > 0 {
            let mut cost = vec![0.0; tableau.cols];
            for c in &mut cost[tableau.first_artificial..] {
                *c = 1.0;
            }
            tableau.set_objective(&cost);
            match tableau.run(self, tableau.cols)? {
                Step::Optimal => {}
                Step::Unbounded => return Err(Error::Solver("phase 1 reported an unbounded direction".into())),
            }
            if -tableau.objective_rhs() > self.feasibility_tolerance * scale {
                return Ok(LpSolution::without_point(LpStatus::Infeasible, p));
            }
            tableau.evict_artificials(self.pivot_tolerance);
        }

        // phase 2 over structural and slack columns only
        let mut cost = vec![0.0; tableau.cols];
        for (j, c) in lp.objective.iter().enumerate() {
            cost[j] = match lp.sense {
                Sense::Minimize => *c,
                Sense::Maximize => -*c,
            };
        }
        tableau.set_objective(&cost);
        match tableau.run(self, tableau.first_artificial)? {
            Step::Unbounded => return Ok(LpSolution::without_point(LpStatus::Unbounded, p)),
            Step::Optimal => {}
        }

        let mut x = lp.lower_bounds.clone();
        for (row, &var) in tableau.basis.iter().enumerate() {
            if var < p {
                x[var] += tableau.rhs(row).max(0.0);
            }
        }
        Ok(LpSolution {
            status: LpStatus::Optimal,
            objective_value: lp.evaluate(&x),
            variables: x,
        })
    }
}

enum Step {
    Optimal,
    Unbounded,
}

/// Row-major tableau; the last column holds the right-hand side and the last
/// row holds reduced costs.
struct Tableau {
    data: Vec<f64>,
    rows: usize,
    cols: usize,
    basis: Vec<usize>,
    first_artificial: usize,
    num_artificial: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let p = lp.num_variables();

        // shift x = l + x' and flip rows so every rhs is non-negative
        let mut rows: Vec<(Vec<f64>, Relation, f64)> = lp
            .constraints
            .iter()
            .map(|c| {
                let rhs = c.rhs - dot(&c.coefficients, &lp.lower_bounds);
                if rhs < 0.0 {
                    let flipped = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (c.coefficients.iter().map(|a| -a).collect(), flipped, -rhs)
                } else {
                    (c.coefficients.clone(), c.relation, rhs)
                }
            })
            .collect();

        let num_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let num_artificial = rows.iter().filter(|r| r.1 != Relation::Le).count();
        let first_slack = p;
        let first_artificial = p + num_slack;
        let cols = first_artificial + num_artificial;
        let m = rows.len();
        let width = cols + 1;

        let mut data = vec![0.0; (m + 1) * width];
        let mut basis = Vec::with_capacity(m);
        let (mut slack, mut artificial) = (first_slack, first_artificial);
        for (i, (coeffs, relation, rhs)) in rows.drain(..).enumerate() {
            let row = &mut data[i * width..(i + 1) * width];
            row[..p].copy_from_slice(&coeffs);
            row[cols] = rhs;
            match relation {
                Relation::Le => {
                    row[slack] = 1.0;
                    basis.push(slack);
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -1.0;
                    slack += 1;
                    row[artificial] = 1.0;
                    basis.push(artificial);
                    artificial += 1;
                }
                Relation::Eq => {
                    row[artificial] = 1.0;
                    basis.push(artificial);
                    artificial += 1;
                }
            }
        }

        Tableau {
            data,
            rows: m,
            cols,
            basis,
            first_artificial,
            num_artificial,
        }
    }

    #[inline]
    fn width(&self) -> usize {
        self.cols + 1
    }

    #[inline]
    fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.width() + c]
    }

    fn rhs(&self, r: usize) -> f64 {
        self.at(r, self.cols)
    }

    fn objective_rhs(&self) -> f64 {
        self.at(self.rows, self.cols)
    }

    fn rhs_scale(&self) -> f64 {
        (0..self.rows).map(|r| self.rhs(r).abs()).fold(1.0, f64::max)
    }

    /// Load reduced costs `c_j - c_B B^-1 a_j` for cost vector `cost`.
    fn set_objective(&mut self, cost: &[f64]) {
        let w = self.width();
        let z = self.rows * w;
        self.data[z..z + w].fill(0.0);
        self.data[z..z + self.cols].copy_from_slice(cost);
        for r in 0..self.rows {
            let cb = cost[self.basis[r]];
            if cb != 0.0 {
                for c in 0..w {
                    self.data[z + c] -= cb * self.data[r * w + c];
                }
            }
        }
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let w = self.width();
        let inv = 1.0 / self.at(pr, pc);
        for c in 0..w {
            self.data[pr * w + c] *= inv;
        }
        self.data[pr * w + pc] = 1.0;
        for r in 0..=self.rows {
            if r == pr {
                continue;
            }
            let factor = self.data[r * w + pc];
            if factor != 0.0 {
                for c in 0..w {
                    self.data[r * w + c] -= factor * self.data[pr * w + c];
                }
                self.data[r * w + pc] = 0.0;
            }
        }
        self.basis[pr] = pc;
    }

    /// Bland's rule iterations over columns `0..allowed`.
    fn run(&mut self, opts: &Simplex, allowed: usize) -> Result<Step> {
        for _ in 0..opts.max_iterations {
            let entering = (0..allowed).find(|&c| self.at(self.rows, c) < -opts.pivot_tolerance);
            let Some(pc) = entering else {
                return Ok(Step::Optimal);
            };
            let mut leaving: Option<(usize, f64)> = None;
            for r in 0..self.rows {
                let a = self.at(r, pc);
                if a > opts.pivot_tolerance {
                    let ratio = self.rhs(r).max(0.0) / a;
                    leaving = match leaving {
                        None => Some((r, ratio)),
                        Some((best, best_ratio)) => {
                            if ratio < best_ratio || (ratio == best_ratio && self.basis[r] < self.basis[best]) {
                                Some((r, ratio))
                            } else {
                                Some((best, best_ratio))
                            }
                        }
                    };
                }
            }
            match leaving {
                None => return Ok(Step::Unbounded),
                Some((pr, _)) => self.pivot(pr, pc),
            }
        }
        Err(Error::Solver(format!(
            "simplex did not converge in {} iterations",
            opts.max_iterations
        )))
    }

    /// Pivot zero-valued artificials out of the basis; drop rows that are
    /// linear combinations of the others.
    fn evict_artificials(&mut self, pivot_tolerance: f64) {
        let mut r = 0;
        while r < self.rows {
            if self.basis[r] >= self.first_artificial {
                let replacement = (0..self.first_artificial)
                    .filter(|&c| self.at(r, c).abs() > pivot_tolerance)
                    .max_by(|&a, &b| self.at(r, a).abs().total_cmp(&self.at(r, b).abs()));
                match replacement {
                    Some(c) => self.pivot(r, c),
                    None => {
                        self.remove_row(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }

    fn remove_row(&mut self, r: usize) {
        let w = self.width();
        self.data.drain(r * w..(r + 1) * w);
        self.basis.remove(r);
        self.rows -= 1;
    }
}
