//! Discrete memoryless channel: joint laws, region evaluators, extreme points,
//! condition falsifiers and the verification harnesses built on them.

mod channel;
mod condition;
mod derive;
mod dexp;
mod dominating;
mod equivalence;
mod joint;
mod region;
mod timeshare;

pub use channel::{DmBicChannel, FactoredInput, InputLaw, SimpleInput};
pub use condition::{
    check_condition, condition_gap, ConditionKind, ConditionVerdict, ConditionWitness, VerdictStatus,
    VIOLATION_TOL,
};
pub use derive::{derive_theorem1, raw_system, replacement_law, DeriveReport, Fallback, SPLIT_VARS};
pub use dexp::{dexp_formula, dexp_on_joint, DexpKind, LabeledPoint};
pub use dominating::{derive_dominating_input, Construction};
pub use equivalence::{verify_equivalence, EquivalenceItem, EquivalenceReport};
pub use joint::{
    joint_from_factored, joint_from_input_pmf, joint_from_simple, mi_sets, mutual_info, Joint, Var, VarSet,
};
pub use region::{
    binning_terms, eval_dm_region, eval_rows, eval_simple_region, hk_reduction, hk_rows, marton_reduction,
    marton_rows, mi, reduce_rows, region_on_joint, sym_row, DmRegion, MiTerm, Reduction, RegionKind, SymRow,
    RATE_VARS,
};
pub use timeshare::{merged_joint, region_dexps, verify_timesharing_closure, TimeshareReport, TIMESHARE_TOL};
