use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::percolation::{bisect_threshold, EmbeddedGraph, ScanConfig, ScanResult, ScanStep, Trend, MIN_SCAN_POINTS};
use crate::point_processes::{PatternSource, PointPattern};
use crate::scalar::Scalar;
use crate::seeding::derive_seed;
use crate::spatial_graphs::{connected_components, largest_component_fraction};

use super::params::SinrParams;
use super::sinr::SinrInstance;

/// Where the interfering pattern of each replication comes from.
#[derive(Clone, Copy)]
pub enum Interferers<'a, T> {
    /// Independent pattern seeded from the replication seed.
    Independent(&'a dyn PatternSource<T>),
    /// The backbone itself.
    Backbone,
    /// Backbone points together with an independent pattern.
    BackboneAnd(&'a dyn PatternSource<T>),
}

/// What counts as "percolating" in one realization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Criterion<T> {
    /// Largest component fraction (averaged over replications).
    LargestFraction,
    /// Left-right crossing by a component touching both sides within
    /// `margin`; the step value is the crossing frequency.
    Crossing { margin: T },
}

/// Seed of the independent interferer pattern for a replication.
pub fn interferer_seed(replication_seed: u64) -> u64 {
    derive_seed(replication_seed, "interferers", 0)
}

fn merged<T: Scalar>(a: &PointPattern<T>, b: &PointPattern<T>) -> Result<PointPattern<T>> {
    let mut window = a.window;
    window.x_min = window.x_min.min(b.window.x_min);
    window.x_max = window.x_max.max(b.window.x_max);
    window.y_min = window.y_min.min(b.window.y_min);
    window.y_max = window.y_max.max(b.window.y_max);
    let points = a.points.iter().chain(&b.points).copied().collect();
    PointPattern::from_points(points, window)
}

/// One precomputed SINR instance per seed.
pub fn sinr_instances<T: Scalar>(
    backbone: &dyn PatternSource<T>,
    interferers: Interferers<'_, T>,
    params: &SinrParams<T>,
    seeds: &[u64],
) -> Result<Vec<SinrInstance<T>>> {
    seeds
        .par_iter()
        .map(|&seed| {
            let b = backbone.generate(seed)?;
            let i = match interferers {
                Interferers::Independent(src) => src.generate(interferer_seed(seed))?,
                Interferers::Backbone => b.clone(),
                Interferers::BackboneAnd(src) => merged(&b, &src.generate(interferer_seed(seed))?)?,
            };
            SinrInstance::new(&b, &i, params)
        })
        .collect()
}

/// Mean criterion value over the instances at interference factor `gamma`.
pub fn sinr_step<T: Scalar>(instances: &[SinrInstance<T>], gamma: T, criterion: Criterion<T>) -> ScanStep<T> {
    let values: Vec<f64> = instances
        .par_iter()
        .map(|inst| {
            let g = inst.graph(gamma);
            match criterion {
                Criterion::LargestFraction => largest_component_fraction(&g),
                Criterion::Crossing { margin } => {
                    let stats = connected_components(&g);
                    let embedded = EmbeddedGraph {
                        graph: &g,
                        pattern: inst.backbone(),
                        margin,
                    };
                    if embedded.crossing_with(&stats) {
                        1.0
                    } else {
                        0.0
                    }
                }
            }
        })
        .collect();
    ScanStep::from_fractions(gamma, &values)
}

/// Critical interference factor: largest `gamma` at which the SINR graphs
/// still reach the target, by bisection on `(0, gamma_hi)`.
pub fn estimate_gamma_c<T: Scalar>(
    backbone: &dyn PatternSource<T>,
    interferers: Interferers<'_, T>,
    base: &SinrParams<T>,
    config: &ScanConfig<T>,
) -> Result<ScanResult<T>> {
    estimate_gamma_c_with(backbone, interferers, base, config, Criterion::LargestFraction)
}

pub fn estimate_gamma_c_with<T: Scalar>(
    backbone: &dyn PatternSource<T>,
    interferers: Interferers<'_, T>,
    base: &SinrParams<T>,
    config: &ScanConfig<T>,
    criterion: Criterion<T>,
) -> Result<ScanResult<T>> {
    config.validate()?;
    if config.bracket.0 < T::zero() {
        return Err(Error::param("gamma bracket must start at or above 0"));
    }
    let instances = sinr_instances(backbone, interferers, base, &config.seeds)?;
    if let Some(inst) = instances.iter().find(|i| i.node_count() < MIN_SCAN_POINTS) {
        return Err(Error::Precondition(format!(
            "scan needs at least {MIN_SCAN_POINTS} backbone points, generator produced {}",
            inst.node_count()
        )));
    }
    let at_zero = sinr_step(&instances, T::zero(), criterion);
    if at_zero.mean_fraction < config.target_fraction {
        return Err(Error::Precondition(format!(
            "gamma = 0 graph reaches only {:.4} < target {}; the noise-limited network does not percolate",
            at_zero.mean_fraction, config.target_fraction
        )));
    }
    bisect_threshold(config, Trend::Decreasing, |gamma| Ok(sinr_step(&instances, gamma, criterion)))
}
