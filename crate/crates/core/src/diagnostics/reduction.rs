use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::point_processes::{PatternSource, Point, PointPattern};
use crate::scalar::Scalar;
use crate::stats::{chi_square_poisson_counts, ks_two_sample, TestOutcome};

use super::geometry::Rect;

/// Counts in an `nx` by `ny` grid of equal cells covering `region`.
pub fn cell_counts<T: Scalar>(pattern: &PointPattern<T>, region: &Rect<T>, nx: usize, ny: usize) -> Vec<u64> {
    let mut counts = vec![0u64; nx * ny];
    let (dx, dy) = (region.width() / T::from_count(nx), region.height() / T::from_count(ny));
    for p in pattern.points.iter().filter(|p| region.contains_half_open(p)) {
        let i = (((p.x - region.x_min) / dx).to_usize().unwrap_or(0)).min(nx - 1);
        let j = (((p.y - region.y_min) / dy).to_usize().unwrap_or(0)).min(ny - 1);
        counts[j * nx + i] += 1;
    }
    counts
}

/// Index of the pattern point nearest to `q` under the window metric.
pub fn nearest_point<T: Scalar>(pattern: &PointPattern<T>, q: &Point<T>) -> Option<usize> {
    let metric = pattern.window.metric();
    pattern
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| (i, metric.distance_squared(p, q)))
        .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite distances"))
        .map(|(i, _)| i)
}

/// Distance from point `index` to its nearest other pattern point.
pub fn nearest_neighbor_distance<T: Scalar>(pattern: &PointPattern<T>, index: usize) -> Option<T> {
    let metric = pattern.window.metric();
    let q = &pattern.points[index];
    pattern
        .points
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != index)
        .map(|(_, p)| metric.distance(p, q))
        .reduce(T::min)
}

/// Nearest-neighbor distances of the points closest to each probe.
///
/// With well separated probes this yields nearly independent samples of the
/// nearest-neighbor distance distribution.
pub fn probe_nearest_neighbor_distances<T: Scalar>(pattern: &PointPattern<T>, probes: &[Point<T>]) -> Vec<f64> {
    probes
        .iter()
        .filter_map(|q| nearest_point(pattern, q))
        .filter_map(|i| nearest_neighbor_distance(pattern, i))
        .map(|d| d.as_f64())
        .collect()
}

/// Outcome of repeated chi-square tests of cell counts against Poisson.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChiSquareBatch {
    pub seeds: usize,
    pub rejections: usize,
    pub level: f64,
    pub p_values: Vec<f64>,
}

/// One Pearson chi-square test per seed of the `nx * ny` cell counts in
/// `region` against Poisson with mean `intensity * cell area`.
pub fn chi_square_batch<T: Scalar>(
    source: &dyn PatternSource<T>,
    region: &Rect<T>,
    nx: usize,
    ny: usize,
    seeds: &[u64],
    level: f64,
) -> Result<ChiSquareBatch> {
    let mean = source.intensity().as_f64() * region.area().as_f64() / (nx * ny) as f64;
    let p_values: Vec<f64> = seeds
        .par_iter()
        .map(|&s| {
            let pattern = source.generate(s)?;
            Ok(chi_square_poisson_counts(&cell_counts(&pattern, region, nx, ny), mean).p_value)
        })
        .collect::<Result<_>>()?;
    Ok(ChiSquareBatch {
        seeds: seeds.len(),
        rejections: p_values.iter().filter(|&&p| p < level).count(),
        level,
        p_values,
    })
}

/// Pooled probe-nearest nearest-neighbor distances over seeds.
pub fn pooled_nearest_neighbor_distances<T: Scalar>(
    source: &dyn PatternSource<T>,
    probes: &[Point<T>],
    seeds: &[u64],
) -> Result<Vec<f64>> {
    let per_seed: Vec<Vec<f64>> = seeds
        .par_iter()
        .map(|&s| Ok(probe_nearest_neighbor_distances(&source.generate(s)?, probes)))
        .collect::<Result<_>>()?;
    Ok(per_seed.into_iter().flatten().collect())
}

/// Two-sample KS test of nearest-neighbor distances from two sources.
pub fn nearest_neighbor_ks<T: Scalar>(
    a: &dyn PatternSource<T>,
    b: &dyn PatternSource<T>,
    probes: &[Point<T>],
    seeds_a: &[u64],
    seeds_b: &[u64],
) -> Result<TestOutcome> {
    let da = pooled_nearest_neighbor_distances(a, probes, seeds_a)?;
    let db = pooled_nearest_neighbor_distances(b, probes, seeds_b)?;
    Ok(ks_two_sample(&da, &db))
}
