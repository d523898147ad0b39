//! Rate-region computations for a two-user broadcast channel whose second
//! receiver is interfered by a point-to-point link.
//!
//! The crate is organised in layers:
//!
//! * [`polyhedra`]: exact rational linear-inequality systems (projection,
//!   redundancy removal, vertex enumeration, Pareto filtering, 2-D hulls).
//! * [`dmbic`]: discrete-memoryless channel machinery: joint laws, mutual
//!   information, region evaluators, dominant extreme points and the
//!   verification harnesses built on top of them.
//! * [`gaussian`]: closed-form Gaussian inner and outer bounds, sum rates,
//!   gap certificates and figure curves.
//! * [`oracle`]: independent brute-force implementations used to
//!   cross-check the main paths.
//! * [`cli`]: the `bic` command-line front end.

pub mod cli;
pub mod dmbic;
pub mod error;
pub mod gaussian;
pub mod oracle;
pub mod polyhedra;

pub use error::{Error, Result};
