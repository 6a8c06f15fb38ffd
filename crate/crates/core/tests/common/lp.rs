//! Small random boxed LPs and a brute-force vertex-enumeration oracle.

use fdea_core::linprog::Constraint;
use fdea_core::{LinearProgram, Relation, Sense};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const BOX: f64 = 10.0;

pub fn random_lp(rng: &mut ChaCha8Rng) -> LinearProgram {
    let n = rng.random_range(1..=4);
    let sense = if rng.random_bool(0.5) {
        Sense::Maximize
    } else {
        Sense::Minimize
    };
    let coef = |rng: &mut ChaCha8Rng| (rng.random_range(-50..=50) as f64) / 10.0;
    let objective = (0..n).map(|_| coef(rng)).collect();
    let lower: Vec<f64> = (0..n)
        .map(|_| {
            if rng.random_bool(0.3) {
                rng.random_range(0..=3) as f64 / 2.0
            } else {
                0.0
            }
        })
        .collect();
    let mut lp = LinearProgram::new(sense, objective).with_lower_bounds(lower);
    for i in 0..n {
        let mut row = vec![0.0; n];
        row[i] = 1.0;
        lp.constrain(row, Relation::Le, BOX);
    }
    for _ in 0..rng.random_range(1..=4) {
        let row: Vec<f64> = (0..n).map(|_| coef(rng)).collect();
        let relation = match rng.random_range(0..10) {
            0 => Relation::Eq,
            1..=5 => Relation::Le,
            _ => Relation::Ge,
        };
        let rhs = (rng.random_range(-40..=80) as f64) / 4.0;
        lp.constrain(row, relation, rhs);
    }
    lp
}

/// Solve a square system by Gaussian elimination with partial pivoting.
fn solve_square(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-10 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        let pivot = a[col].clone();
        let pivot_rhs = b[col];
        for (r, (row, rhs)) in a.iter_mut().zip(b.iter_mut()).enumerate() {
            if r != col {
                let f = row[col] / pivot[col];
                for (x, y) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x -= f * y;
                }
                *rhs -= f * pivot_rhs;
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Best objective over all basic feasible points, or `None` when infeasible.
pub fn vertex_oracle(lp: &LinearProgram) -> Option<f64> {
    let n = lp.num_variables();
    let mut rows: Vec<(Vec<f64>, f64, bool)> = lp
        .constraints
        .iter()
        .map(|c: &Constraint| (c.coefficients.clone(), c.rhs, c.relation == Relation::Eq))
        .collect();
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        rows.push((e, lp.lower_bounds[i], false));
    }
    let equalities: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].2).collect();
    let others: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].2).collect();
    if equalities.len() > n {
        return None;
    }
    let mut best: Option<f64> = None;
    for pick in combinations(others.len(), n - equalities.len()) {
        let active: Vec<usize> = equalities
            .iter()
            .copied()
            .chain(pick.iter().map(|&i| others[i]))
            .collect();
        let a = active.iter().map(|&i| rows[i].0.clone()).collect();
        let b = active.iter().map(|&i| rows[i].1).collect();
        let Some(x) = solve_square(a, b) else { continue };
        if lp.max_violation(&x) > 1e-9 {
            continue;
        }
        let value = lp.evaluate(&x);
        best = Some(match (best, lp.sense) {
            (None, _) => value,
            (Some(v), Sense::Maximize) => v.max(value),
            (Some(v), Sense::Minimize) => v.min(value),
        });
    }
    best
}
