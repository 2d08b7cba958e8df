use crate::scalar::Scalar;

use super::graph::SpatialGraph;

/// Disjoint sets with path compression and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        Self {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn find(&mut self, id: usize) -> usize {
        let mut root = id;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = id;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the sets of `a` and `b`; returns false if already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        true
    }

    pub fn set_size(&mut self, id: usize) -> usize {
        let r = self.find(id);
        self.size[r]
    }
}

/// Component labeling and size summary of a graph.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentStats {
    /// Component id per node; ids are assigned in order of each component's
    /// smallest node index.
    pub labels: Vec<usize>,
    /// Size of component `k` is `sizes_by_label[k]`.
    pub sizes_by_label: Vec<usize>,
    pub sizes_desc: Vec<usize>,
    pub largest_fraction: f64,
    pub top10_fractions: [f64; 10],
}

impl ComponentStats {
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn component_count(&self) -> usize {
        self.sizes_by_label.len()
    }

    /// Label of a largest component (the one with the smallest label on ties).
    pub fn largest_label(&self) -> Option<usize> {
        let max = *self.sizes_by_label.iter().max()?;
        self.sizes_by_label.iter().position(|&s| s == max)
    }

    pub fn members(&self, label: usize) -> Vec<usize> {
        (0..self.labels.len()).filter(|&i| self.labels[i] == label).collect()
    }
}

pub fn connected_components<T: Scalar>(graph: &SpatialGraph<T>) -> ComponentStats {
    let n = graph.node_count();
    let mut uf = UnionFind::new(n);
    for &(a, b) in graph.edges() {
        uf.union(a, b);
    }
    let mut root_label = vec![usize::MAX; n];
    let mut labels = vec![0; n];
    let mut sizes_by_label = Vec::new();
    for (node, label) in labels.iter_mut().enumerate() {
        let r = uf.find(node);
        if root_label[r] == usize::MAX {
            root_label[r] = sizes_by_label.len();
            sizes_by_label.push(0);
        }
        *label = root_label[r];
        sizes_by_label[*label] += 1;
    }
    let mut sizes_desc = sizes_by_label.clone();
    sizes_desc.sort_unstable_by(|a, b| b.cmp(a));
    let frac = |s: usize| if n == 0 { 0.0 } else { s as f64 / n as f64 };
    let mut top10_fractions = [0.0; 10];
    for (slot, &s) in top10_fractions.iter_mut().zip(&sizes_desc) {
        *slot = frac(s);
    }
    ComponentStats {
        largest_fraction: sizes_desc.first().map_or(0.0, |&s| frac(s)),
        labels,
        sizes_by_label,
        sizes_desc,
        top10_fractions,
    }
}

/// Fraction of nodes in the largest component (0 for an empty graph).
pub fn largest_component_fraction<T: Scalar>(graph: &SpatialGraph<T>) -> f64 {
    let n = graph.node_count();
    if n == 0 {
        return 0.0;
    }
    let mut uf = UnionFind::new(n);
    let mut best = 1;
    for &(a, b) in graph.edges() {
        if uf.union(a, b) {
            best = best.max(uf.set_size(a));
        }
    }
    best as f64 / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point_processes::Metric;
    use std::collections::VecDeque;

    fn graph(n: usize, edges: &[(usize, usize)]) -> SpatialGraph<f64> {
        SpatialGraph::from_edges(n, edges.iter().copied(), Metric::Euclidean).unwrap()
    }

    fn bfs_labels(g: &SpatialGraph<f64>) -> Vec<usize> {
        let mut labels = vec![usize::MAX; g.node_count()];
        let mut next = 0;
        for s in 0..g.node_count() {
            if labels[s] != usize::MAX {
                continue;
            }
            labels[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in g.neighbors(u) {
                    if labels[v] == usize::MAX {
                        labels[v] = next;
                        queue.push_back(v);
                    }
                }
            }
            next += 1;
        }
        labels
    }

    #[test]
    fn complete_graph_is_one_component() {
        let edges: Vec<_> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
        let s = connected_components(&graph(5, &edges));
        assert_eq!(s.largest_fraction, 1.0);
        assert_eq!(s.sizes_desc, vec![5]);
    }

    #[test]
    fn edgeless_graph_fractions() {
        let s = connected_components(&graph(12, &[]));
        assert!((s.largest_fraction - 1.0 / 12.0).abs() < 1e-15);
        assert!(s.top10_fractions.iter().all(|&f| (f - 1.0 / 12.0).abs() < 1e-15));
        let s = connected_components(&graph(3, &[]));
        assert_eq!(&s.top10_fractions[3..], &[0.0; 7]);
        let s = connected_components(&graph(0, &[]));
        assert_eq!(s.largest_fraction, 0.0);
    }

    #[test]
    fn labels_follow_smallest_member() {
        let s = connected_components(&graph(6, &[(4, 5), (1, 3), (0, 5)]));
        assert_eq!(s.labels, vec![0, 1, 2, 1, 0, 0]);
        assert_eq!(s.sizes_by_label, vec![3, 2, 1]);
        assert_eq!(s.largest_label(), Some(0));
        assert_eq!(s.members(1), vec![1, 3]);
    }

    #[test]
    fn union_find_agrees_with_bfs_on_random_graph() {
        use rand::Rng;
        let mut rng = crate::seeding::rng_from_seed(5);
        let n = 500;
        let edges: Vec<(usize, usize)> = (0..450)
            .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
            .filter(|(a, b)| a != b)
            .collect();
        let g = graph(n, &edges);
        let s = connected_components(&g);
        assert_eq!(s.labels, bfs_labels(&g));
        assert_eq!(s.sizes_desc.iter().sum::<usize>(), n);
        assert!((largest_component_fraction(&g) - s.largest_fraction).abs() < 1e-15);
    }
}
