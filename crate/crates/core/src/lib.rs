//! Simulation and diagnostics for wireless network models built on perturbed
//! triangular lattices and Poisson processes.
//!
//! The geometric and analytic code is generic over [`Scalar`] (`f32` or
//! `f64`). The aliases below fix the common `f64` instantiations; the `F32`
//! variants exist for memory-bound runs.
//!
//! Modules:
//! - [`point_processes`]: windows, lattices, replica laws and seeded samplers.
//! - [`spatial_graphs`]: Gilbert and carrier-sense graphs, components.
//! - [`percolation`]: critical-range scans, site discretizations, bounds.
//! - [`shot_noise`]: attenuation, interference fields, SINR graphs, Laplace transforms.
//! - [`diagnostics`]: convex order, void probabilities, Ripley's K, reduction tests.
//! - [`experiments`]: config-driven runners behind the `subperc` binary.

// `!(x > 0)` style checks are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod error;
pub mod experiments;
pub mod percolation;
pub mod point_processes;
pub mod scalar;
pub mod seeding;
pub mod shot_noise;
pub mod spatial_graphs;
pub mod stats;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Point = point_processes::Point<f64>;
pub type Window = point_processes::Window<f64>;
pub type PointPattern = point_processes::PointPattern<f64>;
pub type PatternGenerator = point_processes::PatternGenerator<f64>;
pub type SpatialGraph = spatial_graphs::SpatialGraph<f64>;
pub type ScanResult = percolation::ScanResult<f64>;
pub type Attenuation = shot_noise::Attenuation<f64>;
pub type SinrParams = shot_noise::SinrParams<f64>;

pub type PointF32 = point_processes::Point<f32>;
pub type WindowF32 = point_processes::Window<f32>;
pub type PointPatternF32 = point_processes::PointPattern<f32>;
pub type PatternGeneratorF32 = point_processes::PatternGenerator<f32>;
pub type SpatialGraphF32 = spatial_graphs::SpatialGraph<f32>;
