//! Exact linear-inequality systems over named rate variables.

mod fme;
pub(crate) mod lp;
mod pareto;
mod redundancy;
mod system;
mod text;
mod vertices;

pub use fme::{fme_eliminate, fme_eliminate_all};
pub use lp::{implies, maximize, LpOutcome};
pub use pareto::{dominates, frontier_value_at, hull_dominates, pareto_filter, union_hull_2d};
pub use redundancy::remove_redundant;
pub use system::{contains, rat, rat_f64, ratio, FloatSystem, Inequality, LinSystem, Rat, RatePoint, Sense};
pub use text::{format_system, parse_system};
pub use vertices::enumerate_vertices;

/// Tolerance used when deduplicating floating-point vertices.
pub const DEDUP_TOL: f64 = 1e-9;
