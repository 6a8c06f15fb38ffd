//! Fuzzy multi-objective optimistic and pessimistic DEA.
//!
//! The crate evaluates decision-making units whose inputs and outputs are
//! triangular fuzzy numbers. For each unit it solves an optimistic model
//! (best relative efficiency, at most 1) and a pessimistic model (worst
//! relative efficiency, at least 1), collapses each model's three bound
//! objectives into a single score with a seeded population of weighted sums,
//! and ranks the units by the geometric mean of the two scores.
//!
//! Modules, bottom up:
//!
//! * [`tfn`]: triangular fuzzy numbers.
//! * [`linprog`]: dense two-phase simplex.
//! * [`models`]: crisp and fuzzy DEA models.
//! * [`scalarize`]: weight populations and best weighted-sum selection.
//! * [`rank`]: classification, geometric scores, ranking, Spearman's rho.
//! * [`io`] and [`pipeline`]: file formats and the end-to-end run.

pub mod error;
pub mod io;
pub mod linprog;
pub mod models;
pub mod pipeline;
pub mod rank;
pub mod scalarize;
pub mod tfn;

pub use error::{Error, InfeasibilityReport, Result};
pub use linprog::{LinearProgram, LpSolution, LpSolver, LpStatus, Relation, Sense, Simplex};
pub use models::{
    BoundEfficiencies, DmuDataset, DmuRecord, FuzzyModel, Mode, Multipliers, Orientation, DEFAULT_EPSILON,
};
pub use pipeline::{OrientationChoice, OutputFormat, RunConfig};
pub use rank::{Classification, RankReport};
pub use scalarize::{ScalarizedResult, WeightVector};
pub use tfn::{Interval, Tfn};
