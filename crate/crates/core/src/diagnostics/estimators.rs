use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::percolation::generate_replications;
use crate::point_processes::{Metric, PatternSource, PointPattern};
use crate::scalar::Scalar;
use crate::spatial_graphs::CellList;
use crate::stats::EstimateWithCI;

use super::geometry::Rect;

/// Void probability of the Boolean model `C(Phi, r)` on `B` and its
/// complement, the capacity functional.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VoidEstimate {
    pub void: EstimateWithCI,
    pub capacity: EstimateWithCI,
}

/// Fraction of patterns with no point within distance `r` of `b`.
///
/// `b` dilated by `r` must lie inside the generator's window.
pub fn estimate_void_probability<T: Scalar>(
    source: &dyn PatternSource<T>,
    b: &Rect<T>,
    r: T,
    seeds: &[u64],
) -> Result<VoidEstimate> {
    if !(r >= T::zero()) {
        return Err(Error::param(format!("void radius must be >= 0, got {r}")));
    }
    if !b.dilation_inside(r, &source.window()) {
        return Err(Error::geometry(format!(
            "B dilated by {r} is not inside the generation window"
        )));
    }
    let patterns = generate_replications(source, seeds)?;
    let empty: Vec<f64> = patterns
        .par_iter()
        .map(|p| {
            let hit = p.points.iter().any(|q| b.distance_to(q) <= r);
            if hit { 0.0 } else { 1.0 }
        })
        .collect();
    let void = EstimateWithCI::from_samples(&empty);
    Ok(VoidEstimate {
        void,
        capacity: EstimateWithCI {
            value: 1.0 - void.value,
            ..void
        },
    })
}

/// Poisson void probability `exp(-lambda |B + r|)`.
pub fn poisson_void_probability<T: Scalar>(intensity: T, b: &Rect<T>, r: T) -> T {
    (-intensity * b.dilated_area(r)).exp()
}

/// Ripley's K estimate `(|W| / n^2) sum_{i != j} w_ij 1[d_ij <= r]`.
///
/// On a torus the weights are 1 and distances wrap; in a free window the
/// translation correction `w_ij = |W| / ((W - |dx|)(H - |dy|))` is used.
/// Radii must be below half the smaller window side.
pub fn ripley_k<T: Scalar>(pattern: &PointPattern<T>, radii: &[T]) -> Result<Vec<T>> {
    let n = pattern.len();
    if n < 2 {
        return Err(Error::Estimator(format!("Ripley's K needs at least 2 points, got {n}")));
    }
    let w = &pattern.window;
    let half_span = w.width().min(w.height()) / T::lit(2.0);
    if let Some(bad) = radii.iter().find(|&&r| !(r >= T::zero() && r < half_span)) {
        return Err(Error::Estimator(format!(
            "radius {bad} outside [0, {half_span}) for this window"
        )));
    }
    let r_max = radii.iter().copied().fold(T::zero(), T::max);
    let area = w.area();
    let metric = w.metric();
    let cells = CellList::new(&pattern.points, w, r_max);
    let pairs = cells.pairs_within(r_max);
    let mut sums = vec![T::zero(); radii.len()];
    for (i, j, d) in pairs {
        let weight = match metric {
            Metric::Torus { .. } => T::one(),
            Metric::Euclidean => {
                let (dx, dy) = metric.offset(&pattern.points[i], &pattern.points[j]);
                area / ((w.width() - dx.abs()) * (w.height() - dy.abs()))
            }
        };
        for (s, &r) in sums.iter_mut().zip(radii) {
            if d <= r {
                // each unordered pair counts for (i, j) and (j, i)
                *s = *s + T::lit(2.0) * weight;
            }
        }
    }
    let nn = T::from_count(n) * T::from_count(n);
    Ok(sums.into_iter().map(|s| area / nn * s).collect())
}

/// Ripley's K at one radius over replicated patterns.
pub fn ripley_k_estimate<T: Scalar>(source: &dyn PatternSource<T>, r: T, seeds: &[u64]) -> Result<EstimateWithCI> {
    let patterns = generate_replications(source, seeds)?;
    let values: Vec<f64> = patterns
        .par_iter()
        .map(|p| ripley_k(p, &[r]).map(|k| k[0].as_f64()))
        .collect::<Result<_>>()?;
    Ok(EstimateWithCI::from_samples(&values))
}

/// `E prod_i Phi(B_i) / prod_i (lambda |B_i|)` over disjoint boxes.
pub fn empirical_joint_intensity_ratio<T: Scalar>(
    source: &dyn PatternSource<T>,
    boxes: &[Rect<T>],
    seeds: &[u64],
) -> Result<EstimateWithCI> {
    if boxes.is_empty() || boxes.len() > 4 {
        return Err(Error::param(format!("need 1 to 4 boxes, got {}", boxes.len())));
    }
    for (a, ba) in boxes.iter().enumerate() {
        if !(ba.area() > T::zero()) {
            return Err(Error::geometry(format!("box {a} has zero area")));
        }
        if let Some(b) = boxes[a + 1..].iter().position(|bb| ba.overlaps(bb)) {
            return Err(Error::geometry(format!("boxes {a} and {} overlap", a + 1 + b)));
        }
    }
    let lambda = source.intensity().as_f64();
    let expected: f64 = boxes.iter().map(|b| lambda * b.area().as_f64()).product();
    let patterns = generate_replications(source, seeds)?;
    let ratios: Vec<f64> = patterns
        .par_iter()
        .map(|p| boxes.iter().map(|b| b.count(p) as f64).product::<f64>() / expected)
        .collect();
    Ok(EstimateWithCI::from_samples(&ratios))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point_processes::{BoundaryMode, PatternGenerator, Point, Window};
    use crate::seeding::derive_seeds;

    fn poisson(side: f64, boundary: BoundaryMode) -> PatternGenerator<f64> {
        PatternGenerator::Poisson {
            intensity: 1.0,
            window: Window::sized(side, side, boundary).unwrap(),
        }
    }

    #[test]
    fn void_probability_of_a_point() {
        let gen = poisson(6.0, BoundaryMode::Free);
        let b = Rect::point(Point::new(3.0, 3.0));
        let est = estimate_void_probability(&gen, &b, 1.0, &derive_seeds(4, "void", 4000)).unwrap();
        let exact = (-std::f64::consts::PI).exp();
        assert!(est.void.agrees_with(exact, 3.0), "{est:?}");
        assert_eq!(est.void.value + est.capacity.value, 1.0);
        assert!((poisson_void_probability(1.0, &b, 1.0) - exact).abs() < 1e-16);
    }

    #[test]
    fn void_probability_vanishes_for_huge_sets() {
        let gen = poisson(30.0, BoundaryMode::Free);
        let b = Rect::new(5.0, 25.0, 5.0, 25.0).unwrap();
        let est = estimate_void_probability(&gen, &b, 2.0, &derive_seeds(1, "void", 20)).unwrap();
        assert_eq!(est.void.value, 0.0);
        let err = estimate_void_probability(&gen, &b, 6.0, &[1]).unwrap_err();
        assert!(matches!(err, Error::Geometry(_)));
    }

    #[test]
    fn ripley_k_edge_cases() {
        let w = Window::sized(10.0, 10.0, BoundaryMode::Torus).unwrap();
        let one = PointPattern::from_points(vec![Point::new(1.0, 1.0)], w).unwrap();
        assert!(matches!(ripley_k(&one, &[1.0]), Err(Error::Estimator(_))));
        let two = PointPattern::from_points(vec![Point::new(1.0, 1.0), Point::new(9.5, 1.0)], w).unwrap();
        let k = ripley_k(&two, &[0.0, 1.0, 2.0]).unwrap();
        assert_eq!(k, vec![0.0, 0.0, 50.0]);
        assert!(ripley_k(&two, &[5.0]).is_err());
    }

    #[test]
    fn ripley_k_poisson_is_pi_r_squared() {
        for boundary in [BoundaryMode::Torus, BoundaryMode::Free] {
            let gen = poisson(30.0, boundary);
            let est = ripley_k_estimate(&gen, 1.0, &derive_seeds(9, "ripley", 150)).unwrap();
            assert!(est.agrees_with(std::f64::consts::PI, 3.0), "{boundary}: {est:?}");
        }
    }

    #[test]
    fn joint_intensity_ratios() {
        let gen = poisson(10.0, BoundaryMode::Free);
        let boxes = [
            Rect::new(2.0, 3.0, 2.0, 3.0).unwrap(),
            Rect::new(3.0, 4.0, 2.0, 3.0).unwrap(),
            Rect::new(6.0, 7.0, 6.0, 8.0).unwrap(),
        ];
        let seeds = derive_seeds(2, "joint", 4000);
        for k in 1..=3 {
            let est = empirical_joint_intensity_ratio(&gen, &boxes[..k], &seeds).unwrap();
            assert!(est.agrees_with(1.0, 3.0), "k={k}: {est:?}");
        }
        let overlapping = [boxes[0], Rect::new(2.5, 3.5, 2.5, 3.5).unwrap()];
        assert!(matches!(
            empirical_joint_intensity_ratio(&gen, &overlapping, &seeds[..1]),
            Err(Error::Geometry(_))
        ));
    }
}
