use crate::error::Result;
use crate::point_processes::{Metric, PointPattern};
use crate::scalar::Scalar;
use crate::spatial_graphs::build_gilbert;

use super::site_field::{site_percolation_field, EmbeddedGraph, LeftRightCrossing};

/// Crossing outcomes of the Boolean model of radius `r` and its two site
/// discretizations on one realization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SandwichOutcome {
    /// Site field of side `r / sqrt(2)`, first to last column.
    pub fine: bool,
    /// Gilbert graph at range `2r`, components touching both sides within `r`.
    pub boolean: bool,
    /// Site field of side `2r`, boxes meeting both strips of width `r`.
    pub coarse: bool,
}

impl SandwichOutcome {
    /// `fine => boolean => coarse`.
    pub fn consistent(&self) -> bool {
        (!self.fine || self.boolean) && (!self.boolean || self.coarse)
    }
}

/// Evaluates the three crossings with a free (Euclidean) boundary.
///
/// Two points in neighboring boxes of side `r / sqrt(2)` are at most `2r`
/// apart, and points at distance `<= 2r` fall in the same or neighboring
/// boxes of side `2r`, so a consistent outcome is guaranteed for every
/// pattern; a violation indicates a bug in one of the three constructions.
pub fn check_discretization_sandwich<T: Scalar>(pattern: &PointPattern<T>, r: T) -> Result<SandwichOutcome> {
    let w = &pattern.window;
    let fine_side = r / T::lit(2f64.sqrt());
    let fine = site_percolation_field(pattern, fine_side)?.crosses_with_margin(w.x_min, w.x_max, T::zero());
    let graph = build_gilbert(pattern, T::lit(2.0) * r, Metric::Euclidean)?;
    let boolean = EmbeddedGraph {
        graph: &graph,
        pattern,
        margin: r,
    }
    .crosses_left_right();
    let coarse = site_percolation_field(pattern, T::lit(2.0) * r)?.crosses_with_margin(w.x_min, w.x_max, r);
    Ok(SandwichOutcome { fine, boolean, coarse })
}
