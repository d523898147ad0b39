//! Closed-form bounds for the Gaussian channel
//! `Y1 = X1 + Z1`, `Y2 = sqrt(a) X1 + sqrt(b) X2 + Z2`, `Y3 = X2 + Z3`
//! with powers `P1`, `P2` and unit noise. All rates are in bits.
//!
//! Outer bounds are evaluated as `(R1, R2)` slices at a fixed `R3`, because the
//! entropy-power penalty `xi` enters nonlinearly in `R3`. Regime-B inner
//! curves are per-slice hulls of the two inner bounds, not slices of the full
//! three-dimensional hull.

mod bounds;
mod curves;
mod params;
mod sum;

pub use bounds::{
    eval_gauss_inner, eval_gauss_outer, inner_rows, outer_box, slice_corners, slice_r2_at, GaussRow, InnerKind,
    OuterKind, SLICE_TOL,
};
pub use curves::{
    boundary_slice, fig3_params, fig4_sweep, fig5_params, figure_slices, gap_report, regime_b_frontier, sum_sweep,
    write_slice_csv, write_sweep_csv, FigureSlice, GapReport, SliceRow, SumSweepRow, BETA_GRID, CSV_PREAMBLE,
    FIG3_BETAS, FIG5_BETAS, HALF_BIT,
};
pub use params::{c_of, regime_classify, xi, GbicParams, Regime, SplitParams};
pub use sum::{
    capacity_special, grid_sum, regime_b_sum, sum_outer, sum_rate, RegimeBSum, SpecialCapacity, SpecialKind, SumBranch,
    SumRate,
};
