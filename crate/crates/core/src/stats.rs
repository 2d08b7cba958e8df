//! Monte Carlo estimates and the goodness-of-fit tests used by the diagnostics.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Monte Carlo mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EstimateWithCI {
    pub value: f64,
    pub std_error: f64,
    pub replications: usize,
}

impl EstimateWithCI {
    /// Sample mean and `s / sqrt(n)`; an empty sample gives NaN.
    pub fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len();
        if n == 0 {
            return Self {
                value: f64::NAN,
                std_error: f64::NAN,
                replications: 0,
            };
        }
        let mean = samples.iter().sum::<f64>() / n as f64;
        let std_error = if n > 1 {
            let var = samples.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            (var / n as f64).sqrt()
        } else {
            0.0
        };
        Self {
            value: mean,
            std_error,
            replications: n,
        }
    }

    pub fn exact(value: f64) -> Self {
        Self {
            value,
            std_error: 0.0,
            replications: 1,
        }
    }

    /// Within `k` standard errors of a known reference value.
    pub fn agrees_with(&self, reference: f64, k: f64) -> bool {
        (self.value - reference).abs() <= k * self.std_error
    }

    /// Standard error of the difference of two independent estimates.
    pub fn joint_std_error(&self, other: &Self) -> f64 {
        self.std_error.hypot(other.std_error)
    }

    /// `self <= other + k * joint standard error`.
    pub fn not_above(&self, other: &Self, k: f64) -> bool {
        self.value <= other.value + k * self.joint_std_error(other)
    }

    /// `self < other - k * joint standard error`: strictly smaller at the given resolution.
    pub fn clearly_below(&self, other: &Self, k: f64) -> bool {
        self.value < other.value - k * self.joint_std_error(other)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TestOutcome {
    pub statistic: f64,
    pub p_value: f64,
}

impl TestOutcome {
    pub fn rejects_at(&self, level: f64) -> bool {
        self.p_value < level
    }
}

/// Pearson statistic `sum (n_i - m)^2 / m` for independent counts that
/// should be Poisson with known mean `m`, referred to chi-square with one
/// degree of freedom per cell.
pub fn chi_square_poisson_counts(counts: &[u64], mean: f64) -> TestOutcome {
    let statistic = counts
        .iter()
        .map(|&c| (c as f64 - mean).powi(2) / mean)
        .sum::<f64>();
    let dist = ChiSquared::new(counts.len() as f64).expect("positive degrees of freedom");
    TestOutcome {
        statistic,
        p_value: dist.sf(statistic),
    }
}

/// Kolmogorov survival function `P(K > x)`.
pub fn kolmogorov_survival(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    if x < 0.2 {
        // series below converges too slowly; Q is 1 to double precision here
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * x * x).exp();
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> TestOutcome {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (n, m) = (a.len(), b.len());
    let (mut i, mut j, mut d) = (0usize, 0usize, 0f64);
    while i < n && j < m {
        let x = a[i].min(b[j]);
        while i < n && a[i] <= x {
            i += 1;
        }
        while j < m && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    let ne = (n * m) as f64 / (n + m) as f64;
    let sq = ne.sqrt();
    TestOutcome {
        statistic: d,
        p_value: kolmogorov_survival((sq + 0.12 + 0.11 / sq) * d),
    }
}
