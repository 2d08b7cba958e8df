//! Critical-range estimation, site-percolation discretizations, crossing
//! tests and the analytic path/void bounds.

mod bounds;
pub mod io;
mod level_set;
mod paths;
mod sandwich;
mod scan;
mod site_field;

pub use bounds::{expected_path_count_bound, lower_bound_radius, path_bound_base, peierls_void_bound};
pub use level_set::{level_set_crossing, LevelDirection, ValueGrid};
pub use paths::{count_open_paths, open_paths_from_origin};
pub use sandwich::{check_discretization_sandwich, SandwichOutcome};
pub use scan::{
    bisect_threshold, estimate_critical_radius, generate_replications, gilbert_fraction_step,
    ScanConfig, ScanResult, ScanStep, Trend, MIN_SCAN_POINTS,
};
pub use site_field::{
    crossing_exists, site_percolation_field, BinaryGrid, EmbeddedGraph, LeftRightCrossing, SiteField,
};
