use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::point_processes::{PatternSource, PointPattern};
use crate::scalar::Scalar;
use crate::seeding::derive_seeds;
use crate::spatial_graphs::{build_gilbert, largest_component_fraction};

/// Smallest pattern accepted by the critical-radius scan.
pub const MIN_SCAN_POINTS: usize = 100;

/// Parameters of a bisection scan on the mean largest-component fraction.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanConfig<T> {
    pub target_fraction: f64,
    /// Stop once the bracket is no wider than this.
    pub tolerance: T,
    pub bracket: (T, T),
    pub replications: usize,
    /// One seed per replication.
    pub seeds: Vec<u64>,
}

impl<T: Scalar> ScanConfig<T> {
    /// Target 0.6 and tolerance 0.01, with replication seeds derived from
    /// `(master_seed, label)`.
    pub fn new(bracket: (T, T), replications: usize, master_seed: u64, label: &str) -> Self {
        Self {
            target_fraction: 0.6,
            tolerance: T::lit(0.01),
            bracket,
            replications,
            seeds: derive_seeds(master_seed, label, replications),
        }
    }

    pub fn with_target(mut self, target: f64) -> Self {
        self.target_fraction = target;
        self
    }

    pub fn with_tolerance(mut self, tolerance: T) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.bracket;
        if !(self.target_fraction > 0.0 && self.target_fraction < 1.0) {
            return Err(Error::param(format!(
                "target fraction must be in (0, 1), got {}",
                self.target_fraction
            )));
        }
        if !(lo < hi) {
            return Err(Error::param(format!("bracket needs lo < hi, got ({lo}, {hi})")));
        }
        if !(self.tolerance > T::zero()) {
            return Err(Error::param("tolerance must be > 0"));
        }
        if self.replications == 0 || self.seeds.len() != self.replications {
            return Err(Error::param(format!(
                "need one seed per replication ({} seeds, {} replications)",
                self.seeds.len(),
                self.replications
            )));
        }
        Ok(())
    }
}

/// Mean and spread of the largest-component fraction at one parameter value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanStep<T> {
    pub param: T,
    pub mean_fraction: f64,
    pub std: f64,
    pub replications: usize,
}

impl<T: Scalar> ScanStep<T> {
    pub fn from_fractions(param: T, fractions: &[f64]) -> Self {
        let n = fractions.len();
        let mean = fractions.iter().sum::<f64>() / n as f64;
        let std = if n > 1 {
            (fractions.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
        } else {
            0.0
        };
        Self {
            param,
            mean_fraction: mean,
            std,
            replications: n,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanResult<T> {
    pub threshold_estimate: T,
    /// Bracket left when bisection stopped.
    pub final_bracket: (T, T),
    /// Evaluations in the order they were made.
    pub per_step: Vec<ScanStep<T>>,
    pub config: ScanConfig<T>,
}

impl<T: Scalar> ScanResult<T> {
    pub fn seeds(&self) -> &[u64] {
        &self.config.seeds
    }

    /// Steps sorted by parameter value.
    pub fn curve(&self) -> Vec<ScanStep<T>> {
        let mut steps = self.per_step.clone();
        steps.sort_by(|a, b| a.param.partial_cmp(&b.param).expect("finite parameters"));
        steps.dedup_by(|a, b| a.param == b.param);
        steps
    }
}

/// Whether the mean fraction grows or shrinks with the scanned parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trend {
    Increasing,
    Decreasing,
}

/// Bisection for the parameter where `eval` crosses the target fraction.
///
/// For an increasing trend the result approximates the smallest parameter
/// with `mean_fraction >= target`; for a decreasing one, the largest.
pub fn bisect_threshold<T, F>(config: &ScanConfig<T>, trend: Trend, mut eval: F) -> Result<ScanResult<T>>
where
    T: Scalar,
    F: FnMut(T) -> Result<ScanStep<T>>,
{
    config.validate()?;
    let target = config.target_fraction;
    let (mut lo, mut hi) = config.bracket;
    let mut steps = Vec::new();
    let at_lo = eval(lo)?;
    let at_hi = eval(hi)?;
    steps.push(at_lo);
    steps.push(at_hi);
    let reached = |s: &ScanStep<T>| s.mean_fraction >= target;
    let straddles = match trend {
        Trend::Increasing => !reached(&at_lo) && reached(&at_hi),
        Trend::Decreasing => reached(&at_lo) && !reached(&at_hi),
    };
    if !straddles {
        return Err(Error::Bracketing {
            target,
            lo: lo.as_f64(),
            hi: hi.as_f64(),
            lo_fraction: at_lo.mean_fraction,
            hi_fraction: at_hi.mean_fraction,
        });
    }
    let two = T::lit(2.0);
    while hi - lo > config.tolerance {
        let mid = (lo + hi) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        let step = eval(mid)?;
        steps.push(step);
        let above = reached(&step);
        match (trend, above) {
            (Trend::Increasing, true) | (Trend::Decreasing, false) => hi = mid,
            _ => lo = mid,
        }
    }
    Ok(ScanResult {
        threshold_estimate: (lo + hi) / two,
        final_bracket: (lo, hi),
        per_step: steps,
        config: config.clone(),
    })
}

/// Generates one pattern per configured seed, in parallel.
pub fn generate_replications<T: Scalar, G: PatternSource<T> + ?Sized>(
    source: &G,
    seeds: &[u64],
) -> Result<Vec<PointPattern<T>>> {
    seeds.par_iter().map(|&s| source.generate(s)).collect()
}

/// Mean largest-component fraction of the Gilbert graphs at range `rho`.
pub fn gilbert_fraction_step<T: Scalar>(patterns: &[PointPattern<T>], rho: T) -> Result<ScanStep<T>> {
    let fractions: Vec<f64> = patterns
        .par_iter()
        .map(|p| build_gilbert(p, rho, p.window.metric()).map(|g| largest_component_fraction(&g)))
        .collect::<Result<_>>()?;
    Ok(ScanStep::from_fractions(rho, &fractions))
}

/// Critical communication range: smallest `rho` whose Gilbert graphs have a
/// mean largest-component fraction of at least the target.
///
/// Each replication's pattern is generated once and reused at every step, so
/// the mean fraction is monotone in `rho` and the bisection is well posed.
pub fn estimate_critical_radius<T: Scalar, G: PatternSource<T> + ?Sized>(
    source: &G,
    config: &ScanConfig<T>,
) -> Result<ScanResult<T>> {
    config.validate()?;
    let patterns = generate_replications(source, &config.seeds)?;
    if let Some(p) = patterns.iter().find(|p| p.len() < MIN_SCAN_POINTS) {
        return Err(Error::Precondition(format!(
            "scan needs at least {MIN_SCAN_POINTS} points per pattern, generator produced {}",
            p.len()
        )));
    }
    bisect_threshold(config, Trend::Increasing, |rho| gilbert_fraction_step(&patterns, rho))
}
