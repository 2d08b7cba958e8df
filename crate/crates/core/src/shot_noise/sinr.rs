use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::point_processes::{Metric, Point, PointPattern};
use crate::scalar::Scalar;
use crate::spatial_graphs::{CellList, SpatialGraph};

use super::interference::interference_with_metric;
use super::params::{snr_range, SinrParams};

/// `P l(|x - y|) / (N + gamma P I(y))`, where the interference at `y` comes
/// from the interferers other than `x` (and other than `y` itself).
///
/// Distances use the interferer window's metric.
pub fn sinr_value<T: Scalar>(
    x: &Point<T>,
    y: &Point<T>,
    interferers: &PointPattern<T>,
    params: &SinrParams<T>,
) -> Result<T> {
    let metric = interferers.window.metric();
    let signal = params.power * params.attenuation.gain(metric.distance(x, y));
    let interference = if params.gamma > T::zero() {
        interference_with_metric(&interferers.points, metric, y, &params.attenuation, Some(x))
    } else {
        T::zero()
    };
    let denominator = params.noise + params.gamma * params.power * interference;
    if !(denominator > T::zero()) {
        return Err(Error::Degenerate(format!(
            "SINR denominator is {denominator} (noise {}, gamma {})",
            params.noise, params.gamma
        )));
    }
    Ok(signal / denominator)
}

/// Per-realization precomputation for SINR graphs at varying `gamma`.
///
/// Holds the candidate links (pairs within the noise-limited range), the
/// total interference at every backbone node, and how many interferers sit
/// exactly on each node, so that `I_{Phi \ {x}}(y)` is a subtraction.
#[derive(Clone, Debug)]
pub struct SinrInstance<T> {
    backbone: PointPattern<T>,
    metric: Metric<T>,
    power: T,
    noise: T,
    threshold: T,
    /// `(i, j, l(|x_i - x_j|))`, `i < j`, sorted.
    candidates: Vec<(usize, usize, T)>,
    interference: Vec<T>,
    multiplicity: Vec<u32>,
}

fn point_key<T: Scalar>(p: &Point<T>) -> (u64, u64) {
    (p.x.as_f64().to_bits(), p.y.as_f64().to_bits())
}

impl<T: Scalar> SinrInstance<T> {
    /// Requires `N > 0`; distances use the backbone window's metric.
    pub fn new(backbone: &PointPattern<T>, interferers: &PointPattern<T>, params: &SinrParams<T>) -> Result<Self> {
        params.validate()?;
        let range = snr_range(params)?;
        let metric = backbone.window.metric();
        let att = params.attenuation;
        let reach = range * (T::one() + T::lit(1e-9));
        let cells = CellList::new(&backbone.points, &backbone.window, reach);
        let candidates = cells
            .pairs_within(reach)
            .into_iter()
            .map(|(i, j, d)| (i, j, att.gain(d)))
            .collect();
        let interference = backbone
            .points
            .par_iter()
            .map(|b| interference_with_metric(&interferers.points, metric, b, &att, None))
            .collect();
        let mut copies: HashMap<(u64, u64), u32> = HashMap::new();
        for p in &interferers.points {
            *copies.entry(point_key(p)).or_default() += 1;
        }
        let multiplicity = backbone
            .points
            .iter()
            .map(|b| copies.get(&point_key(b)).copied().unwrap_or(0))
            .collect();
        Ok(Self {
            backbone: backbone.clone(),
            metric,
            power: params.power,
            noise: params.noise,
            threshold: params.threshold,
            candidates,
            interference,
            multiplicity,
        })
    }

    pub fn backbone(&self) -> &PointPattern<T> {
        &self.backbone
    }

    pub fn node_count(&self) -> usize {
        self.backbone.len()
    }

    /// Interference at node `j` from the interferers other than node `i`.
    fn interference_without(&self, j: usize, i: usize, gain: T) -> T {
        let own = T::from_count(self.multiplicity[i] as usize) * gain;
        (self.interference[j] - own).max(T::zero())
    }

    fn link(&self, gamma: T, from: usize, to: usize, gain: T) -> bool {
        let signal = self.power * gain;
        let denominator = self.noise + gamma * self.power * self.interference_without(to, from, gain);
        signal / denominator > self.threshold
    }

    /// SINR graph: both directed SINRs strictly above the threshold.
    pub fn graph(&self, gamma: T) -> SpatialGraph<T> {
        let edges: Vec<(usize, usize)> = self
            .candidates
            .iter()
            .filter(|&&(i, j, g)| self.link(gamma, i, j, g) && self.link(gamma, j, i, g))
            .map(|&(i, j, _)| (i, j))
            .collect();
        SpatialGraph::from_edges(self.node_count(), edges, self.metric)
            .expect("candidate pairs are valid edges")
    }
}

/// SINR graph on the backbone with edges where `SINR > T` in both directions.
///
/// Backbone and interferers may share points; a shared node never
/// interferes with its own link.
pub fn build_sinr_graph<T: Scalar>(
    backbone: &PointPattern<T>,
    interferers: &PointPattern<T>,
    params: &SinrParams<T>,
) -> Result<SpatialGraph<T>> {
    Ok(SinrInstance::new(backbone, interferers, params)?.graph(params.gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point_processes::{sample_homogeneous_poisson, BoundaryMode, Window};
    use crate::shot_noise::Attenuation;
    use crate::spatial_graphs::{build_gilbert_with_rule, RangeRule};
    use approx::assert_relative_eq;

    fn params(noise: f64, gamma: f64) -> SinrParams<f64> {
        SinrParams::new(1.0, noise, 1.0, gamma, Attenuation::InversePoly { alpha: 4.0 }).unwrap()
    }

    fn pattern(points: &[(f64, f64)]) -> PointPattern<f64> {
        let w = Window::sized(10.0, 10.0, BoundaryMode::Free).unwrap();
        PointPattern::from_points(points.iter().map(|&(x, y)| Point::new(x, y)).collect(), w).unwrap()
    }

    #[test]
    fn three_node_instance() {
        let backbone = pattern(&[(0.0, 0.0), (0.1, 0.0)]);
        let interferer = pattern(&[(0.1, 0.05)]);
        let g0 = build_sinr_graph(&backbone, &interferer, &params(0.5, 0.0)).unwrap();
        assert!(g0.has_edge(0, 1));
        let g10 = build_sinr_graph(&backbone, &interferer, &params(0.5, 10.0)).unwrap();
        assert_eq!(g10.edge_count(), 0);
        // direction 0 -> 1 fails: the interferer sits 0.05 from node 1
        let v = sinr_value(&backbone.points[0], &backbone.points[1], &interferer, &params(0.5, 10.0)).unwrap();
        let expect = 1.1f64.powi(-4) / (0.5 + 10.0 * 1.05f64.powi(-4));
        assert_relative_eq!(v, expect, max_relative = 1e-14);
        assert!(v < 1.0);
    }

    #[test]
    fn sinr_value_basics() {
        let x = Point::new(1.0, 1.0);
        let p = params(0.5, 0.0);
        let r = snr_range(&p).unwrap();
        let y = Point::new(1.0 + r, 1.0);
        let empty = pattern(&[]);
        assert_relative_eq!(sinr_value(&x, &y, &empty, &p).unwrap(), 1.0, max_relative = 1e-12);
        let close = Point::new(1.05, 1.0);
        assert_relative_eq!(
            sinr_value(&x, &close, &empty, &p).unwrap(),
            1.05f64.powi(-4) / 0.5,
            max_relative = 1e-15
        );
        let noiseless = SinrParams { noise: 0.0, ..p };
        assert!(matches!(sinr_value(&x, &close, &empty, &noiseless), Err(Error::Degenerate(_))));
    }

    #[test]
    fn sinr_decreases_in_gamma() {
        let inter = pattern(&[(3.0, 3.0), (1.2, 1.4)]);
        let (x, y) = (Point::new(1.0, 1.0), Point::new(1.1, 1.0));
        let mut last = f64::INFINITY;
        for gamma in [0.0, 0.01, 0.1, 1.0, 5.0] {
            let v = sinr_value(&x, &y, &inter, &params(0.5, gamma)).unwrap();
            assert!(v < last);
            last = v;
        }
    }

    #[test]
    fn gamma_zero_is_gilbert_on_random_instances() {
        let w = Window::sized(15.0, 15.0, BoundaryMode::Free).unwrap();
        let p = params(2.2f64.powi(-4), 0.0);
        let range = snr_range(&p).unwrap();
        for seed in 0..100 {
            let backbone = sample_homogeneous_poisson(1.0, &w, seed).unwrap();
            let inter = sample_homogeneous_poisson(1.0, &w, seed + 1000).unwrap();
            let sinr = build_sinr_graph(&backbone, &inter, &p).unwrap();
            let gilbert = build_gilbert_with_rule(&backbone, range, w.metric(), RangeRule::Open).unwrap();
            assert_eq!(sinr.edges(), gilbert.edges(), "seed {seed}");
            let empty = PointPattern::empty(w);
            let no_inter = build_sinr_graph(&backbone, &empty, &p.with_gamma(3.0)).unwrap();
            assert_eq!(no_inter.edges(), gilbert.edges());
        }
    }

    #[test]
    fn edges_shrink_with_gamma_and_match_direct_evaluation() {
        let w = Window::sized(12.0, 12.0, BoundaryMode::Torus).unwrap();
        let backbone = sample_homogeneous_poisson(1.2, &w, 5).unwrap();
        let inter = sample_homogeneous_poisson(1.0, &w, 6).unwrap();
        let base = params(2.2f64.powi(-4), 0.0);
        let instance = SinrInstance::new(&backbone, &inter, &base).unwrap();
        let mut previous = instance.graph(0.0);
        for gamma in [0.002, 0.01, 0.05, 0.2] {
            let g = instance.graph(gamma);
            assert!(g.is_subgraph_of(&previous));
            previous = g.clone();
            let p = base.with_gamma(gamma);
            for &(i, j) in instance.graph(0.0).edges() {
                let (a, b) = (&backbone.points[i], &backbone.points[j]);
                let direct = sinr_value(a, b, &inter, &p).unwrap() > 1.0 && sinr_value(b, a, &inter, &p).unwrap() > 1.0;
                assert_eq!(g.has_edge(i, j), direct);
            }
        }
    }

    #[test]
    fn shared_points_do_not_self_interfere() {
        let backbone = pattern(&[(1.0, 1.0), (1.1, 1.0), (5.0, 5.0)]);
        let p = params(0.5, 1.0);
        let g = build_sinr_graph(&backbone, &backbone, &p).unwrap();
        // the only interference on the link comes from the far node
        let far = 1.0 / (1.0 + (3.9f64.powi(2) + 4.0f64.powi(2)).sqrt()).powi(4);
        let sinr = 1.1f64.powi(-4) / (0.5 + far);
        assert!(sinr > 1.0);
        assert!(g.has_edge(0, 1));
        let v = sinr_value(&backbone.points[0], &backbone.points[1], &backbone, &p).unwrap();
        assert_relative_eq!(v, sinr, max_relative = 1e-12);
    }
}
