//! Exact computation of the degrees-of-freedom region of the two-user
//! MIMO broadcast channel carrying hybrid private/common messages under
//! imperfect (and delayed-imperfect) transmitter CSI.
//!
//! All region math runs in exact rational arithmetic: corner points,
//! existence conditions, converse bounds, and power-allocation recipes are
//! computed in closed form and cross-checked against an independent
//! brute-force polytope-vertex oracle, so every comparison is bit-exact.
//!
//! Module map:
//! - [`geometry`]: rationals, halfspaces, and the 3D vertex-enumeration
//!   oracle.
//! - [`regions`]: region construction (imperfect, delayed), case
//!   classification, and the converse outer bounds.
//! - [`corners`]: the labeled closed-form corner catalog.
//! - [`allocation`]: rate-splitting power allocations and per-corner
//!   recipes.
//! - [`analysis`]: sum-DoF formulas, audits, and parameter sweeps.

pub mod allocation;
pub mod analysis;
pub mod corners;
pub mod geometry;
pub mod regions;

pub use allocation::{
    bounds_single, bounds_space_time, evaluate_recipe, optimal_exponents_case1, recipe_for_corner,
    space_time_allocation, sum_dof_single, AchievabilityBounds, AllocationError, PowerAllocation,
    Recipe, RecipeMode, SpaceTimeAllocation,
};
pub use analysis::{
    audit_containment_delayed, audit_converse, audit_corners, sum_dof_formula, sweep, sweep_row,
    AuditReport, Mismatch, SweepRow,
};
pub use corners::{corner_catalog, delayed_corners, CornerLabel, CornerPoint};
pub use geometry::{
    solve3, DofPoint, GeometryError, Halfspace, Polytope, Rational, RationalError,
};
pub use regions::{
    alpha0, classify_case, combine_outer, normalize, outer_d1, outer_d2, region_delayed,
    region_imperfect, AntennaConfig, CaseId, CsitQuality, NormalizedConfig, RegionError,
};
