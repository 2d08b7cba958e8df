//! Seeded samplers for Poisson, lattice and perturbed-lattice point patterns.

mod hexagon;
pub mod io;
mod lattice;
mod replica;
mod sampler;
mod window;

pub use hexagon::{
    hexagon_contains, hexagon_vertices, sample_uniform_in_hexagon, sample_uniform_in_hexagon_counted,
    HEXAGON_ACCEPTANCE,
};
pub use lattice::{Lattice, LatticeKind, Site};
pub use replica::{sample_replica_count, ReplicaLaw};
pub use sampler::{
    sample_homogeneous_poisson, sample_perturbed_lattice, sample_perturbed_lattice_detailed,
    triangular_lattice_pattern, PatternGenerator, PatternSource, PerturbedSample, PointPattern,
    Provenance, SiteDraw,
};
pub use window::{BoundaryMode, Metric, Point, Window};
