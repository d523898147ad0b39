//! Independent brute-force checks: a second vertex enumerator, Monte-Carlo
//! region comparison and seeded random instances.
//!
//! Nothing here shares elimination or solve code with the main paths.

mod instance;
mod mc;
mod vertices;

pub use instance::{random_instance, Instance, InstanceKind, InstanceSpec, LawKind};
pub use mc::{mc_region_equal, McReport};
pub use vertices::brute_vertices;
