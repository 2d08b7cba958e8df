use crate::error::{Error, Result};
use crate::stats::EstimateWithCI;

/// Law of the received signal power in the outage model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Fading {
    /// `P(F > t) = exp(-rate t)`.
    Exponential { rate: f64 },
}

impl Fading {
    /// Tail `G(t) = P(F > t)`.
    pub fn tail(&self, t: f64) -> f64 {
        match *self {
            Fading::Exponential { rate } => (-rate * t.max(0.0)).exp(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Fading::Exponential { rate } if rate > 0.0 && rate.is_finite() => Ok(()),
            _ => Err(Error::param(format!("invalid fading {self:?}"))),
        }
    }
}

impl Default for Fading {
    fn default() -> Self {
        Fading::Exponential { rate: 1.0 }
    }
}

/// Mean of `log(1 + F0 / (N + I))` over interference samples.
pub fn shannon_mean_capacity(samples: &[f64], f0: f64, noise: f64) -> EstimateWithCI {
    let values: Vec<f64> = samples.iter().map(|i| (f0 / (noise + i)).ln_1p()).collect();
    EstimateWithCI::from_samples(&values)
}

/// Mean of `G(T (N + I))`, the probability that the faded signal clears the
/// threshold.
pub fn outage_capacity(samples: &[f64], threshold: f64, noise: f64, fading: Fading) -> EstimateWithCI {
    let values: Vec<f64> = samples.iter().map(|i| fading.tail(threshold * (noise + i))).collect();
    EstimateWithCI::from_samples(&values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn constant_and_two_point_samples() {
        assert_eq!(shannon_mean_capacity(&[0.3, 2.0], 0.0, 1.0).value, 0.0);
        assert_relative_eq!(shannon_mean_capacity(&[0.5; 4], 2.0, 1.0).value, (1.0f64 + 2.0 / 1.5).ln());
        let spread = shannon_mean_capacity(&[0.0, 2.0], 1.0, 1.0).value;
        assert_relative_eq!(spread, 0.490_414_626_505_863_1, max_relative = 1e-14);
        assert!(spread > 1.5f64.ln());

        let exp1 = Fading::default();
        assert_relative_eq!(outage_capacity(&[0.0; 3], 2.0, 0.5, exp1).value, (-1.0f64).exp());
        assert_relative_eq!(outage_capacity(&[1.0; 3], 1.0, 1.0, exp1).value, (-2.0f64).exp());
        let spread = outage_capacity(&[0.0, 2.0], 1.0, 1.0, exp1).value;
        assert_relative_eq!(spread, 0.208_833_254_769_653_13, max_relative = 1e-14);
        assert!(spread > (-2.0f64).exp());
        assert!(Fading::Exponential { rate: 0.0 }.validate().is_err());
    }

    proptest! {
        #[test]
        fn jensen_lower_bounds(samples in prop::collection::vec(0.0f64..20.0, 1..40), f0 in 0.01f64..5.0, n in 0.01f64..3.0, t in 0.01f64..3.0) {
            let mean = samples.iter().sum::<f64>() / samples.len() as f64;
            let shannon = shannon_mean_capacity(&samples, f0, n).value;
            prop_assert!(shannon >= (f0 / (n + mean)).ln_1p() - 1e-12);
            let outage = outage_capacity(&samples, t, n, Fading::default()).value;
            prop_assert!(outage >= (-(t * (n + mean))).exp() - 1e-12);
        }
    }
}
