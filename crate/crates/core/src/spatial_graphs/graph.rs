use crate::error::{Error, Result};
use crate::point_processes::{Metric, PointPattern};
use crate::scalar::Scalar;

use super::cell_list::CellList;

/// Whether a pair exactly at the range threshold is connected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RangeRule {
    /// `distance <= range`
    Closed,
    /// `distance < range`
    Open,
}

impl RangeRule {
    #[inline]
    pub fn admits<T: Scalar>(self, distance: T, range: T) -> bool {
        match self {
            RangeRule::Closed => distance <= range,
            RangeRule::Open => distance < range,
        }
    }
}

/// Undirected simple graph on the points of a pattern.
#[derive(Clone, Debug, PartialEq)]
pub struct SpatialGraph<T> {
    node_count: usize,
    /// Sorted, `i < j`, no duplicates.
    edges: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    adjacency: Vec<usize>,
    metric: Metric<T>,
}

impl<T: Scalar> SpatialGraph<T> {
    /// Normalizes and validates an edge list.
    pub fn from_edges(
        node_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        metric: Metric<T>,
    ) -> Result<Self> {
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= node_count || b >= node_count {
                return Err(Error::param(format!(
                    "edge ({a}, {b}) out of range for {node_count} nodes"
                )));
            }
            if a == b {
                return Err(Error::param(format!("self-loop at node {a}")));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self::from_sorted(node_count, list, metric))
    }

    fn from_sorted(node_count: usize, edges: Vec<(usize, usize)>, metric: Metric<T>) -> Self {
        let mut degree = vec![0usize; node_count + 1];
        for &(a, b) in &edges {
            degree[a + 1] += 1;
            degree[b + 1] += 1;
        }
        for i in 0..node_count {
            degree[i + 1] += degree[i];
        }
        let offsets = degree;
        let mut fill = offsets.clone();
        let mut adjacency = vec![0; 2 * edges.len()];
        for &(a, b) in &edges {
            adjacency[fill[a]] = b;
            fill[a] += 1;
            adjacency[fill[b]] = a;
            fill[b] += 1;
        }
        for i in 0..node_count {
            adjacency[offsets[i]..offsets[i + 1]].sort_unstable();
        }
        Self {
            node_count,
            edges,
            offsets,
            adjacency,
            metric,
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn metric(&self) -> Metric<T> {
        self.metric
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[self.offsets[node]..self.offsets[node + 1]]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.offsets[node + 1] - self.offsets[node]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// Whether every edge of `self` is also an edge of `other`.
    pub fn is_subgraph_of(&self, other: &Self) -> bool {
        self.node_count == other.node_count && self.edges.iter().all(|&(a, b)| other.has_edge(a, b))
    }

    /// Keeps the edges accepted by `keep`.
    pub fn filter_edges<F: FnMut(usize, usize) -> bool>(&self, mut keep: F) -> Self {
        let edges = self.edges.iter().copied().filter(|&(a, b)| keep(a, b)).collect();
        Self::from_sorted(self.node_count, edges, self.metric)
    }
}

fn check_range<T: Scalar>(rho: T) -> Result<()> {
    if !(rho >= T::zero()) {
        return Err(Error::param(format!("communication range must be >= 0, got {rho}")));
    }
    Ok(())
}

/// Gilbert graph: `i ~ j` iff `distance(p_i, p_j) <= rho` under `metric`.
pub fn build_gilbert<T: Scalar>(
    pattern: &PointPattern<T>,
    rho: T,
    metric: Metric<T>,
) -> Result<SpatialGraph<T>> {
    build_gilbert_with_rule(pattern, rho, metric, RangeRule::Closed)
}

pub fn build_gilbert_with_rule<T: Scalar>(
    pattern: &PointPattern<T>,
    rho: T,
    metric: Metric<T>,
    rule: RangeRule,
) -> Result<SpatialGraph<T>> {
    check_range(rho)?;
    let mut window = pattern.window;
    // the cell list wraps exactly when the requested metric is a torus
    window.boundary = match metric {
        Metric::Euclidean => crate::point_processes::BoundaryMode::Free,
        Metric::Torus { .. } => crate::point_processes::BoundaryMode::Torus,
    };
    if let Metric::Torus { width, height } = metric {
        if width != window.width() || height != window.height() {
            return Err(Error::param("torus metric does not match the pattern window"));
        }
    }
    let cells = CellList::new(&pattern.points, &window, rho);
    let edges = if rho.is_finite() {
        cells
            .pairs_within(rho)
            .into_iter()
            .filter(|&(_, _, d)| rule.admits(d, rho))
            .map(|(i, j, _)| (i, j))
            .collect()
    } else {
        let n = pattern.len();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
    };
    Ok(SpatialGraph::from_sorted(pattern.len(), edges, metric))
}

/// All-pairs Gilbert edge set, kept as a reference for the cell-list builder.
pub fn gilbert_edges_brute_force<T: Scalar>(
    pattern: &PointPattern<T>,
    rho: T,
    metric: Metric<T>,
    rule: RangeRule,
) -> Vec<(usize, usize)> {
    let pts = &pattern.points;
    let mut out = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if rule.admits(metric.distance(&pts[i], &pts[j]), rho) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Gilbert graph restricted to nodes with no interferer within the sensing range.
///
/// `i ~ j` iff `distance <= rho` and neither endpoint has a point of
/// `interferers` within distance `sensing_range`. Distances use the
/// backbone window's metric.
pub fn build_carrier_sense<T: Scalar>(
    backbone: &PointPattern<T>,
    interferers: &PointPattern<T>,
    rho: T,
    sensing_range: T,
) -> Result<SpatialGraph<T>> {
    if !(rho > T::zero()) {
        return Err(Error::param(format!("communication range must be > 0, got {rho}")));
    }
    if !(sensing_range > rho) {
        return Err(Error::param(format!(
            "sensing range {sensing_range} must exceed the communication range {rho}"
        )));
    }
    let metric = backbone.window.metric();
    let gilbert = build_gilbert(backbone, rho, metric)?;
    let mut window = backbone.window;
    // interferers are binned over their own window but measured with the backbone metric
    window.x_min = window.x_min.min(interferers.window.x_min);
    window.x_max = window.x_max.max(interferers.window.x_max);
    window.y_min = window.y_min.min(interferers.window.y_min);
    window.y_max = window.y_max.max(interferers.window.y_max);
    let cells = CellList::new(&interferers.points, &window, sensing_range);
    let blocked: Vec<bool> = backbone
        .points
        .iter()
        .map(|p| cells.any_within(p, sensing_range))
        .collect();
    Ok(gilbert.filter_edges(|a, b| !blocked[a] && !blocked[b]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point_processes::{sample_homogeneous_poisson, BoundaryMode, Point, Window};

    fn pattern(points: &[(f64, f64)], side: f64) -> PointPattern<f64> {
        let w = Window::new(-side, side, -side, side, BoundaryMode::Free).unwrap();
        PointPattern::from_points(points.iter().map(|&(x, y)| Point::new(x, y)).collect(), w)
            .unwrap()
    }

    #[test]
    fn three_points_on_a_line() {
        let p = pattern(&[(0.0, 0.0), (1.0, 0.0), (3.0, 0.0)], 10.0);
        let g = build_gilbert(&p, 1.5, Metric::Euclidean).unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
        assert_eq!(g.neighbors(2), &[] as &[usize]);
        assert!(build_gilbert(&p, -0.1, Metric::Euclidean).is_err());
        let g = build_gilbert(&p, 0.5, Metric::Euclidean).unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn ties_count_under_closed_rule_only() {
        let p = pattern(&[(0.0, 0.0), (1.0, 0.0)], 5.0);
        assert_eq!(build_gilbert(&p, 1.0, Metric::Euclidean).unwrap().edge_count(), 1);
        let open = build_gilbert_with_rule(&p, 1.0, Metric::Euclidean, RangeRule::Open).unwrap();
        assert_eq!(open.edge_count(), 0);
    }

    #[test]
    fn cell_list_matches_brute_force() {
        for boundary in [BoundaryMode::Free, BoundaryMode::Torus] {
            let w = Window::sized(13.0, 13.0, boundary).unwrap();
            let p = sample_homogeneous_poisson(200.0 / 169.0, &w, 77).unwrap();
            for rho in [0.3, 1.0, 1.7] {
                let g = build_gilbert(&p, rho, w.metric()).unwrap();
                let b = gilbert_edges_brute_force(&p, rho, w.metric(), RangeRule::Closed);
                assert_eq!(g.edges(), b.as_slice());
            }
        }
    }

    #[test]
    fn carrier_sense_examples() {
        let backbone = pattern(&[(0.0, 0.0), (1.0, 0.0)], 10.0);
        let far = pattern(&[(0.5, 5.0)], 10.0);
        let near = pattern(&[(0.5, 1.0)], 10.0);
        let empty = PointPattern::empty(backbone.window);
        let g = build_carrier_sense(&backbone, &far, 1.5, 2.0).unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
        let g = build_carrier_sense(&backbone, &near, 1.5, 2.0).unwrap();
        assert_eq!(g.edge_count(), 0);
        let g = build_carrier_sense(&backbone, &empty, 1.5, 2.0).unwrap();
        assert_eq!(g, build_gilbert(&backbone, 1.5, Metric::Euclidean).unwrap());
        assert!(build_carrier_sense(&backbone, &far, 1.5, 1.5).is_err());
    }

    #[test]
    fn single_interferer_isolates_node() {
        let backbone = pattern(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0)], 10.0);
        let interferer = pattern(&[(-1.5, 0.0)], 10.0);
        let g = build_carrier_sense(&backbone, &interferer, 1.2, 1.6).unwrap();
        assert_eq!(g.degree(0), 0);
        assert_eq!(g.edges(), &[(1, 2), (2, 3)]);
    }

    #[test]
    fn from_edges_normalizes() {
        let g = SpatialGraph::<f64>::from_edges(4, [(2, 1), (1, 2), (0, 3)], Metric::Euclidean)
            .unwrap();
        assert_eq!(g.edges(), &[(0, 3), (1, 2)]);
        assert!(SpatialGraph::<f64>::from_edges(2, [(1, 1)], Metric::Euclidean).is_err());
        assert!(SpatialGraph::<f64>::from_edges(2, [(0, 2)], Metric::Euclidean).is_err());
    }
}
