use crate::error::{Error, Result};
use crate::point_processes::{Point, PointPattern};
use crate::scalar::Scalar;
use crate::spatial_graphs::{ComponentStats, SpatialGraph, UnionFind};

/// Rectangular grid of open/closed sites, indexed `(column, row)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryGrid {
    nx: usize,
    ny: usize,
    open: Vec<bool>,
}

impl BinaryGrid {
    pub fn new(nx: usize, ny: usize, open: bool) -> Self {
        Self {
            nx,
            ny,
            open: vec![open; nx * ny],
        }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> bool>(nx: usize, ny: usize, mut f: F) -> Self {
        let mut open = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                open.push(f(i, j));
            }
        }
        Self { nx, ny, open }
    }

    pub fn columns(&self) -> usize {
        self.nx
    }

    pub fn rows(&self) -> usize {
        self.ny
    }

    pub fn is_open(&self, i: usize, j: usize) -> bool {
        self.open[j * self.nx + i]
    }

    pub fn set(&mut self, i: usize, j: usize, open: bool) {
        self.open[j * self.nx + i] = open;
    }

    pub fn open_count(&self) -> usize {
        self.open.iter().filter(|&&o| o).count()
    }

    /// Sites sharing a side or a corner.
    pub fn neighbors(&self, i: usize, j: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        let (i, j) = (i as i64, j as i64);
        (-1..=1i64)
            .flat_map(move |dj| (-1..=1i64).map(move |di| (i + di, j + dj)))
            .filter(move |&(a, b)| {
                (a, b) != (i, j) && a >= 0 && b >= 0 && a < self.nx as i64 && b < self.ny as i64
            })
            .map(|(a, b)| (a as usize, b as usize))
    }

    fn cluster_roots(&self) -> UnionFind {
        let mut uf = UnionFind::new(self.nx * self.ny);
        for j in 0..self.ny {
            for i in 0..self.nx {
                if !self.is_open(i, j) {
                    continue;
                }
                let here = j * self.nx + i;
                // forward half of the 8-neighborhood
                for (di, dj) in [(1i64, 0i64), (-1, 1), (0, 1), (1, 1)] {
                    let (a, b) = (i as i64 + di, j as i64 + dj);
                    if a < 0 || a >= self.nx as i64 || b >= self.ny as i64 {
                        continue;
                    }
                    let (a, b) = (a as usize, b as usize);
                    if self.is_open(a, b) {
                        uf.union(here, b * self.nx + a);
                    }
                }
            }
        }
        uf
    }

    /// Whether one open cluster (8-adjacency) contains a site from a column
    /// accepted by `left` and one from a column accepted by `right`.
    pub fn crosses_between<L, R>(&self, left: L, right: R) -> bool
    where
        L: Fn(usize) -> bool,
        R: Fn(usize) -> bool,
    {
        if self.nx == 0 || self.ny == 0 {
            return false;
        }
        let mut uf = self.cluster_roots();
        let mut touches_left = vec![false; self.nx * self.ny];
        for j in 0..self.ny {
            for i in (0..self.nx).filter(|&i| left(i)) {
                if self.is_open(i, j) {
                    let r = uf.find(j * self.nx + i);
                    touches_left[r] = true;
                }
            }
        }
        for j in 0..self.ny {
            for i in (0..self.nx).filter(|&i| right(i)) {
                if self.is_open(i, j) && touches_left[uf.find(j * self.nx + i)] {
                    return true;
                }
            }
        }
        false
    }

    /// Crossing from the first to the last column.
    pub fn crosses_left_right(&self) -> bool {
        let last = self.nx.saturating_sub(1);
        self.crosses_between(|i| i == 0, |i| i == last)
    }
}

/// Site percolation on the grid `rZ^2` induced by a pattern: a site is open
/// iff its half-open `r`-box holds at least one point.
#[derive(Clone, Debug, PartialEq)]
pub struct SiteField<T> {
    pub grid: BinaryGrid,
    pub side: T,
    /// Lower-left corner of box `(0, 0)`.
    pub corner: Point<T>,
}

impl<T: Scalar> SiteField<T> {
    /// Grid of `nx x ny` boxes of the given side starting at `corner`.
    /// Points outside the grid are ignored.
    pub fn from_points(points: &[Point<T>], side: T, corner: Point<T>, nx: usize, ny: usize) -> Result<Self> {
        if !(side > T::zero()) {
            return Err(Error::param(format!("site box side must be > 0, got {side}")));
        }
        let mut grid = BinaryGrid::new(nx, ny, false);
        for p in points {
            let i = ((p.x - corner.x) / side).floor();
            let j = ((p.y - corner.y) / side).floor();
            if i >= T::zero() && j >= T::zero() {
                let (i, j) = (i.to_usize().unwrap_or(usize::MAX), j.to_usize().unwrap_or(usize::MAX));
                if i < nx && j < ny {
                    grid.set(i, j, true);
                }
            }
        }
        Ok(Self { grid, side, corner })
    }

    /// Center of box `(i, j)`.
    pub fn site_center(&self, i: usize, j: usize) -> Point<T> {
        let half = T::lit(0.5);
        Point::new(
            self.corner.x + (T::from_count(i) + half) * self.side,
            self.corner.y + (T::from_count(j) + half) * self.side,
        )
    }

    /// Crossing between clusters whose boxes (taken closed) meet the strips
    /// `[x_min, x_min + margin]` and `[x_max - margin, x_max]`.
    pub fn crosses_with_margin(&self, x_min: T, x_max: T, margin: T) -> bool {
        let left_edge = |i: usize| self.corner.x + T::from_count(i) * self.side;
        self.grid.crosses_between(
            |i| left_edge(i) <= x_min + margin && left_edge(i + 1) >= x_min,
            |i| left_edge(i + 1) >= x_max - margin && left_edge(i) <= x_max,
        )
    }
}

/// Site field of side `r` covering the pattern's window, anchored at its
/// lower-left corner.
pub fn site_percolation_field<T: Scalar>(pattern: &PointPattern<T>, r: T) -> Result<SiteField<T>> {
    if !(r > T::zero()) {
        return Err(Error::param(format!("site box side must be > 0, got {r}")));
    }
    let w = &pattern.window;
    let nx = (w.width() / r).ceil().to_usize().unwrap_or(0).max(1);
    let ny = (w.height() / r).ceil().to_usize().unwrap_or(0).max(1);
    SiteField::from_points(&pattern.points, r, Point::new(w.x_min, w.y_min), nx, ny)
}

/// Left-right crossing of a finite window.
pub trait LeftRightCrossing {
    fn crosses_left_right(&self) -> bool;
}

impl LeftRightCrossing for BinaryGrid {
    fn crosses_left_right(&self) -> bool {
        BinaryGrid::crosses_left_right(self)
    }
}

/// First and last columns of the field.
impl<T: Scalar> LeftRightCrossing for SiteField<T> {
    fn crosses_left_right(&self) -> bool {
        self.grid.crosses_left_right()
    }
}

/// A graph on pattern points; a component touches a side of the window when
/// one of its nodes is within `margin` of it.
#[derive(Clone, Copy, Debug)]
pub struct EmbeddedGraph<'a, T> {
    pub graph: &'a SpatialGraph<T>,
    pub pattern: &'a PointPattern<T>,
    pub margin: T,
}

impl<T: Scalar> EmbeddedGraph<'_, T> {
    pub fn crossing_with(&self, stats: &ComponentStats) -> bool {
        let w = &self.pattern.window;
        let mut left = vec![false; stats.component_count()];
        for (p, &label) in self.pattern.points.iter().zip(&stats.labels) {
            if p.x - w.x_min <= self.margin {
                left[label] = true;
            }
        }
        self.pattern
            .points
            .iter()
            .zip(&stats.labels)
            .any(|(p, &label)| left[label] && w.x_max - p.x <= self.margin)
    }
}

impl<T: Scalar> LeftRightCrossing for EmbeddedGraph<'_, T> {
    fn crosses_left_right(&self) -> bool {
        let stats = crate::spatial_graphs::connected_components(self.graph);
        self.crossing_with(&stats)
    }
}

pub fn crossing_exists<C: LeftRightCrossing + ?Sized>(candidate: &C) -> bool {
    candidate.crosses_left_right()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point_processes::{triangular_lattice_pattern, BoundaryMode, Lattice, Window};

    #[test]
    fn trivial_grids() {
        assert!(crossing_exists(&BinaryGrid::new(5, 4, true)));
        assert!(!crossing_exists(&BinaryGrid::new(5, 4, false)));
        let row = BinaryGrid::from_fn(6, 5, |_, j| j == 2);
        assert!(crossing_exists(&row));
        let column = BinaryGrid::from_fn(6, 5, |i, j| i == 3 && j != 1);
        assert!(!crossing_exists(&column));
    }

    #[test]
    fn diagonal_steps_connect() {
        let diag = BinaryGrid::from_fn(4, 4, |i, j| i == j);
        assert!(crossing_exists(&diag));
        let gap = BinaryGrid::from_fn(4, 4, |i, j| i == j && i != 2);
        assert!(!crossing_exists(&gap));
    }

    #[test]
    fn empty_and_single_point_fields() {
        let w = Window::sized(10.0, 10.0, BoundaryMode::Free).unwrap();
        let empty = PointPattern::empty(w);
        assert_eq!(site_percolation_field(&empty, 1.0).unwrap().grid.open_count(), 0);
        let one = PointPattern::from_points(vec![Point::new(3.4, 7.7)], w).unwrap();
        let f = site_percolation_field(&one, 1.0).unwrap();
        assert_eq!(f.grid.open_count(), 1);
        assert!(f.grid.is_open(3, 7));
        assert!(site_percolation_field(&one, 0.0).is_err());
    }

    #[test]
    fn dense_lattice_opens_interior_sites() {
        let (lat, w) = Lattice::<f64>::fitted(40, 46, 0.25, BoundaryMode::Free).unwrap();
        let p = triangular_lattice_pattern(&lat, &w);
        let r = 0.5;
        let f = site_percolation_field(&p, r).unwrap();
        for j in 0..f.grid.rows() {
            for i in 0..f.grid.columns() {
                let interior = (i as f64 + 1.0) * r <= w.x_max && (j as f64 + 1.0) * r <= w.y_max;
                if interior {
                    assert!(f.grid.is_open(i, j), "site ({i}, {j})");
                }
            }
        }
    }

    #[test]
    fn margins_select_boundary_columns() {
        let w = Window::sized(10.0, 2.0, BoundaryMode::Free).unwrap();
        let p = PointPattern::from_points(
            (0..10).map(|k| Point::new(k as f64 + 0.5, 1.0)).collect(),
            w,
        )
        .unwrap();
        let f = site_percolation_field(&p, 3.0).unwrap();
        assert_eq!(f.grid.columns(), 4);
        assert!(f.crosses_with_margin(0.0, 10.0, 0.0));
        assert!(f.crosses_with_margin(0.0, 10.0, 2.5));
    }
}
