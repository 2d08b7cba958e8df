use std::io::Write;

use rayon::prelude::*;

use crate::error::Result;
use crate::percolation::ValueGrid;
use crate::point_processes::{Metric, Point, PointPattern};
use crate::scalar::Scalar;
use crate::spatial_graphs::CellList;

use super::attenuation::Attenuation;

/// `sum l(|X - x|)` over pattern points other than `x` and `exclude`.
///
/// Distances use the pattern window's metric.
pub fn interference_at<T: Scalar>(
    pattern: &PointPattern<T>,
    x: &Point<T>,
    attenuation: &Attenuation<T>,
    exclude: Option<&Point<T>>,
) -> T {
    interference_with_metric(&pattern.points, pattern.window.metric(), x, attenuation, exclude)
}

pub(crate) fn interference_with_metric<T: Scalar>(
    points: &[Point<T>],
    metric: Metric<T>,
    x: &Point<T>,
    attenuation: &Attenuation<T>,
    exclude: Option<&Point<T>>,
) -> T {
    points
        .iter()
        .filter(|p| *p != x && Some(*p) != exclude)
        .fold(T::zero(), |acc, p| acc + attenuation.gain(metric.distance(p, x)))
}

/// Interference evaluator over a fixed pattern, optionally truncated at a
/// cut-off distance.
#[derive(Clone, Debug)]
pub struct InterferenceField<'a, T> {
    pattern: &'a PointPattern<T>,
    attenuation: Attenuation<T>,
    metric: Metric<T>,
    cutoff: Option<(T, CellList<'a, T>)>,
}

/// Truncated sum with a deterministic bound on the omitted part.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncatedSum<T> {
    pub value: T,
    /// `(points beyond the cut-off) * l(cut-off)`.
    pub error_bound: T,
}

impl<'a, T: Scalar> InterferenceField<'a, T> {
    /// Exact evaluator summing over every point.
    pub fn exact(pattern: &'a PointPattern<T>, attenuation: Attenuation<T>) -> Self {
        Self {
            pattern,
            attenuation,
            metric: pattern.window.metric(),
            cutoff: None,
        }
    }

    /// Evaluator summing only points within `cutoff`.
    pub fn truncated(pattern: &'a PointPattern<T>, attenuation: Attenuation<T>, cutoff: T) -> Self {
        let cells = CellList::new(&pattern.points, &pattern.window, cutoff);
        Self {
            pattern,
            attenuation,
            metric: pattern.window.metric(),
            cutoff: Some((cutoff, cells)),
        }
    }

    pub fn attenuation(&self) -> &Attenuation<T> {
        &self.attenuation
    }

    pub fn at(&self, x: &Point<T>, exclude: Option<&Point<T>>) -> T {
        self.at_with_bound(x, exclude).value
    }

    pub fn at_with_bound(&self, x: &Point<T>, exclude: Option<&Point<T>>) -> TruncatedSum<T> {
        match &self.cutoff {
            None => TruncatedSum {
                value: interference_at(self.pattern, x, &self.attenuation, exclude),
                error_bound: T::zero(),
            },
            Some((cutoff, cells)) => {
                let pts = &self.pattern.points;
                let mut value = T::zero();
                let mut inside = 0usize;
                let mut skipped_far = 0usize;
                cells.for_each_within(x, *cutoff, |i, d| {
                    inside += 1;
                    let p = &pts[i];
                    if p != x && Some(p) != exclude {
                        value = value + self.attenuation.gain(d);
                    }
                });
                // excluded points outside the cut-off are not part of the error
                for e in [Some(x), exclude].into_iter().flatten() {
                    skipped_far += pts
                        .iter()
                        .filter(|p| *p == e && self.metric.distance(p, x) > *cutoff)
                        .count();
                }
                let beyond = pts.len() - inside - skipped_far;
                TruncatedSum {
                    value,
                    error_bound: T::from_count(beyond) * self.attenuation.gain(*cutoff),
                }
            }
        }
    }

    /// Expected interference from a Poisson field of the given intensity
    /// beyond the cut-off: `2 pi lambda int_R^inf r l(r) dr`.
    pub fn poisson_tail_mean(&self, intensity: T) -> Option<T> {
        let (cutoff, _) = self.cutoff.as_ref()?;
        self.attenuation
            .tail_moment(*cutoff)
            .map(|m| T::lit(2.0) * T::PI() * intensity * m)
    }
}

/// Interference sampled at the centers of an `nx` by `ny` grid over the
/// pattern window.
pub fn interference_grid<T: Scalar>(
    pattern: &PointPattern<T>,
    attenuation: &Attenuation<T>,
    nx: usize,
    ny: usize,
) -> (ValueGrid<T>, Vec<Point<T>>) {
    let w = &pattern.window;
    let dx = w.width() / T::from_count(nx.max(1));
    let dy = w.height() / T::from_count(ny.max(1));
    let half = T::lit(0.5);
    let centers: Vec<Point<T>> = (0..ny)
        .flat_map(|j| {
            (0..nx).map(move |i| {
                Point::new(
                    w.x_min + (T::from_count(i) + half) * dx,
                    w.y_min + (T::from_count(j) + half) * dy,
                )
            })
        })
        .collect();
    let values: Vec<T> = centers
        .par_iter()
        .map(|c| interference_at(pattern, c, attenuation, None))
        .collect();
    (ValueGrid { nx, ny, values }, centers)
}

/// CSV with header `x,y,I`.
pub fn write_interference_grid_csv<T: Scalar, W: Write>(
    grid: &ValueGrid<T>,
    centers: &[Point<T>],
    mut out: W,
) -> Result<()> {
    writeln!(out, "x,y,I")?;
    for (c, v) in centers.iter().zip(&grid.values) {
        writeln!(out, "{},{},{}", c.x, c.y, v)?;
    }
    Ok(())
}
