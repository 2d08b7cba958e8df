use serde::Serialize;
use statrs::function::factorial::ln_binomial;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::point_processes::ReplicaLaw;

const MEAN_TOLERANCE: f64 = 1e-9;
const STOP_LOSS_TOLERANCE: f64 = 1e-12;
/// Stop-loss values below this are treated as tail.
const TAIL_LEVEL: f64 = 1e-10;

/// Distribution of a replica count, with the pmf evaluated analytically.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CountDistribution {
    law: ReplicaLaw,
}

fn poisson_pmf(mean: f64, j: u64) -> f64 {
    if mean == 0.0 {
        return if j == 0 { 1.0 } else { 0.0 };
    }
    (j as f64 * mean.ln() - mean - ln_gamma(j as f64 + 1.0)).exp()
}

impl CountDistribution {
    pub fn new(law: ReplicaLaw) -> Result<Self> {
        law.validate()?;
        Ok(Self { law })
    }

    pub fn poisson(mean: f64) -> Self {
        Self {
            law: ReplicaLaw::Poisson { mean },
        }
    }

    pub fn binomial_unit_mean(n: u64) -> Self {
        Self {
            law: ReplicaLaw::binomial_unit_mean(n),
        }
    }

    pub fn law(&self) -> ReplicaLaw {
        self.law
    }

    pub fn name(&self) -> String {
        self.law.to_string()
    }

    pub fn mean(&self) -> f64 {
        self.law.mean()
    }

    /// Largest value with positive mass, if the support is bounded.
    pub fn support_max(&self) -> Option<u64> {
        match self.law {
            ReplicaLaw::Binomial { n, .. } => Some(n),
            _ => None,
        }
    }

    pub fn pmf(&self, j: u64) -> f64 {
        match self.law {
            ReplicaLaw::Binomial { n, p } => {
                if j > n {
                    0.0
                } else if p == 0.0 {
                    if j == 0 { 1.0 } else { 0.0 }
                } else if p == 1.0 {
                    if j == n { 1.0 } else { 0.0 }
                } else {
                    (ln_binomial(n, j) + j as f64 * p.ln() + (n - j) as f64 * (1.0 - p).ln()).exp()
                }
            }
            ReplicaLaw::Poisson { mean } => poisson_pmf(mean, j),
            ReplicaLaw::CoxBernoulli { a } => {
                let mixed = poisson_pmf(a, j) / a;
                if j == 0 {
                    1.0 - 1.0 / a + mixed
                } else {
                    mixed
                }
            }
            ReplicaLaw::ScaledPoisson { n } => {
                if j.is_multiple_of(n) {
                    poisson_pmf(1.0 / n as f64, j / n)
                } else {
                    0.0
                }
            }
        }
    }

    /// `E (N - k)^+`.
    ///
    /// Bounded laws are summed directly; otherwise the identity
    /// `E (N - k)^+ = E N - k + sum_{j < k} (k - j) P(N = j)` avoids any
    /// truncation of the upper tail.
    pub fn stop_loss(&self, k: u64) -> f64 {
        if let Some(top) = self.support_max() {
            return (k + 1..=top).map(|j| (j - k) as f64 * self.pmf(j)).sum();
        }
        let head: f64 = (0..k).map(|j| (k - j) as f64 * self.pmf(j)).sum();
        (self.mean() - k as f64 + head).max(0.0)
    }

    /// Smallest `k` with `stop_loss(k) < 1e-10`.
    pub fn tail_cutoff(&self) -> u64 {
        let mut k = 0;
        while self.stop_loss(k) >= TAIL_LEVEL {
            k += 1;
        }
        k
    }
}

/// Standalone form of [`CountDistribution::stop_loss`].
pub fn stop_loss(dist: &CountDistribution, k: u64) -> f64 {
    dist.stop_loss(k)
}

/// Why a convex-order check failed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrderWitness {
    Mean { lower: f64, upper: f64 },
    StopLoss { k: u64, lower: f64, upper: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConvexOrderCheck {
    pub holds: bool,
    pub witness: Option<OrderWitness>,
    /// Largest `k` examined.
    pub k_max: u64,
}

/// Convex order `lower <=cx upper` via equal means and stop-loss dominance.
///
/// `k_max` is raised, if needed, until both stop-loss transforms are below
/// `1e-10`.
pub fn check_convex_order(lower: &CountDistribution, upper: &CountDistribution, k_max: u64) -> Result<ConvexOrderCheck> {
    let (ml, mu) = (lower.mean(), upper.mean());
    if !ml.is_finite() || !mu.is_finite() {
        return Err(Error::param("convex order needs finite means"));
    }
    let k_max = k_max.max(lower.tail_cutoff()).max(upper.tail_cutoff());
    if (ml - mu).abs() > MEAN_TOLERANCE {
        return Ok(ConvexOrderCheck {
            holds: false,
            witness: Some(OrderWitness::Mean { lower: ml, upper: mu }),
            k_max,
        });
    }
    for k in 0..=k_max {
        let (a, b) = (lower.stop_loss(k), upper.stop_loss(k));
        if a > b + STOP_LOSS_TOLERANCE {
            return Ok(ConvexOrderCheck {
                holds: false,
                witness: Some(OrderWitness::StopLoss { k, lower: a, upper: b }),
                k_max,
            });
        }
    }
    Ok(ConvexOrderCheck {
        holds: true,
        witness: None,
        k_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn family() -> Vec<CountDistribution> {
        let mut v: Vec<_> = (1..=10).map(CountDistribution::binomial_unit_mean).collect();
        v.push(CountDistribution::poisson(1.0));
        v.push(CountDistribution::new(ReplicaLaw::CoxBernoulli { a: 5.0 }).unwrap());
        v.push(CountDistribution::new(ReplicaLaw::ScaledPoisson { n: 3 }).unwrap());
        v
    }

    #[test]
    fn pmfs_sum_to_one() {
        for d in family() {
            let total: f64 = (0..200).map(|j| d.pmf(j)).sum();
            assert!((total - 1.0).abs() < 1e-12, "{}", d.name());
            let mean: f64 = (0..200).map(|j| j as f64 * d.pmf(j)).sum();
            assert!((mean - d.mean()).abs() < 1e-12, "{}", d.name());
        }
    }

    #[test]
    fn stop_loss_values() {
        let poi = CountDistribution::poisson(1.0);
        assert_relative_eq!(poi.stop_loss(1), (-1f64).exp(), max_relative = 1e-14);
        assert_relative_eq!(CountDistribution::binomial_unit_mean(2).stop_loss(1), 0.25, max_relative = 1e-14);
        for d in family() {
            assert!((d.stop_loss(0) - d.mean()).abs() < 1e-12);
        }
    }

    #[test]
    fn stop_loss_matches_direct_sum_and_is_convex() {
        for d in family() {
            let values: Vec<f64> = (0..15).map(|k| d.stop_loss(k)).collect();
            for (k, &v) in values.iter().enumerate() {
                let direct: f64 = (k as u64 + 1..300).map(|j| (j - k as u64) as f64 * d.pmf(j)).sum();
                assert!((v - direct).abs() < 1e-12, "{} k={k}", d.name());
            }
            for w in values.windows(3) {
                assert!(w[1] <= w[0] + 1e-15);
                assert!(w[0] + w[2] - 2.0 * w[1] >= -1e-12);
            }
        }
    }

    #[test]
    fn binomial_family_is_below_poisson_and_chained() {
        let poi = CountDistribution::poisson(1.0);
        for n in 1..=10 {
            let b = CountDistribution::binomial_unit_mean(n);
            assert!(check_convex_order(&b, &poi, 0).unwrap().holds, "n={n}");
            assert!(check_convex_order(&b, &b, 0).unwrap().holds);
            if n < 10 {
                let next = CountDistribution::binomial_unit_mean(n + 1);
                assert!(check_convex_order(&b, &next, 0).unwrap().holds);
                assert!(!check_convex_order(&next, &b, 0).unwrap().holds);
            }
        }
    }

    #[test]
    fn reversed_direction_has_witness_one() {
        let poi = CountDistribution::poisson(1.0);
        let b2 = CountDistribution::binomial_unit_mean(2);
        let check = check_convex_order(&poi, &b2, 5).unwrap();
        assert!(!check.holds);
        match check.witness.unwrap() {
            OrderWitness::StopLoss { k, lower, upper } => {
                assert_eq!(k, 1);
                assert!((lower - (-1f64).exp()).abs() < 1e-9);
                assert!((upper - 0.25).abs() < 1e-9);
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn mean_mismatch_is_reported() {
        let check = check_convex_order(&CountDistribution::poisson(1.0), &CountDistribution::poisson(1.5), 5).unwrap();
        assert!(matches!(check.witness, Some(OrderWitness::Mean { .. })));
    }

    #[test]
    fn super_poisson_laws_sit_above_poisson() {
        let poi = CountDistribution::poisson(1.0);
        for law in [ReplicaLaw::CoxBernoulli { a: 5.0 }, ReplicaLaw::ScaledPoisson { n: 3 }] {
            let d = CountDistribution::new(law).unwrap();
            assert!(check_convex_order(&poi, &d, 0).unwrap().holds);
        }
    }
}
