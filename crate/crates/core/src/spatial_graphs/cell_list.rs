use crate::scalar::Scalar;
use crate::point_processes::{Metric, Point, Window};

/// Uniform grid binning of a point set for fixed-radius queries.
///
/// Cells are at least `min_cell_side` wide (fewer, larger cells when that
/// would exceed roughly four cells per point). Queries of any radius are
/// answered by scanning the covering block of cells; under a torus metric the
/// block wraps around.
#[derive(Clone, Debug)]
pub struct CellList<'a, T> {
    points: &'a [Point<T>],
    metric: Metric<T>,
    x0: T,
    y0: T,
    cell_w: T,
    cell_h: T,
    nx: usize,
    ny: usize,
    /// `cell_start[c]..cell_start[c + 1]` indexes `order` for cell `c`.
    cell_start: Vec<usize>,
    order: Vec<usize>,
}

impl<'a, T: Scalar> CellList<'a, T> {
    pub fn new(points: &'a [Point<T>], window: &Window<T>, min_cell_side: T) -> Self {
        let metric = window.metric();
        let cap = ((points.len() as f64).sqrt() * 2.0).ceil().max(1.0);
        let cells_along = |span: T| -> usize {
            let side = min_cell_side.as_f64();
            let n = if side > 0.0 { (span.as_f64() / side).floor() } else { f64::INFINITY };
            n.min(cap).max(1.0) as usize
        };
        let nx = cells_along(window.width());
        let ny = cells_along(window.height());
        let cell_w = window.width() / T::from_count(nx);
        let cell_h = window.height() / T::from_count(ny);
        let mut list = Self {
            points,
            metric,
            x0: window.x_min,
            y0: window.y_min,
            cell_w,
            cell_h,
            nx,
            ny,
            cell_start: vec![0; nx * ny + 1],
            order: vec![0; points.len()],
        };
        let cells: Vec<usize> = points.iter().map(|p| list.cell_of(p)).collect();
        for &c in &cells {
            list.cell_start[c + 1] += 1;
        }
        for c in 0..nx * ny {
            list.cell_start[c + 1] += list.cell_start[c];
        }
        let mut fill = list.cell_start.clone();
        for (i, &c) in cells.iter().enumerate() {
            list.order[fill[c]] = i;
            fill[c] += 1;
        }
        list
    }

    pub fn metric(&self) -> Metric<T> {
        self.metric
    }

    fn axis_index(v: T, origin: T, side: T, n: usize) -> i64 {
        ((v - origin) / side).floor().to_i64().unwrap_or(0).clamp(-1, n as i64)
    }

    fn cell_of(&self, p: &Point<T>) -> usize {
        let cx = Self::axis_index(p.x, self.x0, self.cell_w, self.nx).clamp(0, self.nx as i64 - 1);
        let cy = Self::axis_index(p.y, self.y0, self.cell_h, self.ny).clamp(0, self.ny as i64 - 1);
        cy as usize * self.nx + cx as usize
    }

    fn axis_range(&self, center: T, radius: T, origin: T, side: T, n: usize) -> Vec<usize> {
        let lo = ((center - radius - origin) / side).floor().to_i64().unwrap_or(i64::MIN / 4);
        let hi = ((center + radius - origin) / side).floor().to_i64().unwrap_or(i64::MAX / 4);
        match self.metric {
            Metric::Torus { .. } => {
                if hi - lo + 1 >= n as i64 {
                    (0..n).collect()
                } else {
                    (lo..=hi).map(|k| k.rem_euclid(n as i64) as usize).collect()
                }
            }
            Metric::Euclidean => {
                let lo = lo.max(0);
                let hi = hi.min(n as i64 - 1);
                if lo > hi {
                    Vec::new()
                } else {
                    (lo as usize..=hi as usize).collect()
                }
            }
        }
    }

    /// Calls `visit(index, distance)` for every point within `radius` of `q`
    /// (`distance <= radius`). Visiting order follows the cell layout.
    pub fn for_each_within<F: FnMut(usize, T)>(&self, q: &Point<T>, radius: T, mut visit: F) {
        let xs = self.axis_range(q.x, radius, self.x0, self.cell_w, self.nx);
        let ys = self.axis_range(q.y, radius, self.y0, self.cell_h, self.ny);
        for &cy in &ys {
            for &cx in &xs {
                let c = cy * self.nx + cx;
                for &i in &self.order[self.cell_start[c]..self.cell_start[c + 1]] {
                    let d = self.metric.distance(q, &self.points[i]);
                    if d <= radius {
                        visit(i, d);
                    }
                }
            }
        }
    }

    /// Whether any point lies within `radius` of `q`.
    pub fn any_within(&self, q: &Point<T>, radius: T) -> bool {
        let mut found = false;
        self.for_each_within(q, radius, |_, _| found = true);
        found
    }

    /// All pairs `(i, j)`, `i < j`, at distance `<= radius`, sorted.
    pub fn pairs_within(&self, radius: T) -> Vec<(usize, usize, T)> {
        let mut out = Vec::new();
        for (i, p) in self.points.iter().enumerate() {
            self.for_each_within(p, radius, |j, d| {
                if j > i {
                    out.push((i, j, d));
                }
            });
        }
        out.sort_by_key(|a| (a.0, a.1));
        out
    }
}
