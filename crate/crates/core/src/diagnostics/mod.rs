//! Fingerprints of sub- and super-Poisson ordering: convex order of replica
//! counts, void probabilities, Ripley's K, joint intensities and the
//! capacity functionals of interference.

mod capacity;
mod count_distribution;
mod estimators;
mod geometry;
mod reduction;
pub mod report;

pub use capacity::{outage_capacity, shannon_mean_capacity, Fading};
pub use count_distribution::{check_convex_order, stop_loss, ConvexOrderCheck, CountDistribution, OrderWitness};
pub use estimators::{
    empirical_joint_intensity_ratio, estimate_void_probability, poisson_void_probability, ripley_k,
    ripley_k_estimate, VoidEstimate,
};
pub use geometry::Rect;
pub use reduction::{
    cell_counts, chi_square_batch, nearest_neighbor_distance, nearest_neighbor_ks, nearest_point,
    pooled_nearest_neighbor_distances, probe_nearest_neighbor_distances, ChiSquareBatch,
};
pub use report::{write_report_csv, DiagnosticRow};
