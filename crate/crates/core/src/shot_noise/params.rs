use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::attenuation::Attenuation;

/// Power, noise, threshold and interference factor of the SINR model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SinrParams<T> {
    pub power: T,
    pub noise: T,
    pub threshold: T,
    pub gamma: T,
    pub attenuation: Attenuation<T>,
}

impl<T: Scalar> SinrParams<T> {
    pub fn new(power: T, noise: T, threshold: T, gamma: T, attenuation: Attenuation<T>) -> Result<Self> {
        let p = Self {
            power,
            noise,
            threshold,
            gamma,
            attenuation,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_gamma(mut self, gamma: T) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_power(mut self, power: T) -> Self {
        self.power = power;
        self
    }

    /// `T N / P`, the gain a link needs without interference.
    pub fn required_gain(&self) -> T {
        self.threshold * self.noise / self.power
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: T| v > T::zero() && v.is_finite();
        if !positive(self.power) {
            return Err(Error::param(format!("power must be > 0, got {}", self.power)));
        }
        if !(self.noise >= T::zero() && self.noise.is_finite()) {
            return Err(Error::param(format!("noise must be >= 0, got {}", self.noise)));
        }
        if !positive(self.threshold) {
            return Err(Error::param(format!("threshold must be > 0, got {}", self.threshold)));
        }
        if !(self.gamma >= T::zero() && self.gamma.is_finite()) {
            return Err(Error::param(format!("gamma must be >= 0, got {}", self.gamma)));
        }
        self.attenuation.validate()?;
        let needed = self.required_gain();
        if needed > self.attenuation.at_zero() {
            return Err(Error::Infeasible {
                required: needed.as_f64(),
                available: self.attenuation.at_zero().as_f64(),
            });
        }
        Ok(())
    }

    pub fn record(&self) -> SinrParamsRecord {
        SinrParamsRecord {
            power: self.power.as_f64(),
            noise: self.noise.as_f64(),
            threshold: self.threshold.as_f64(),
            gamma: self.gamma.as_f64(),
            attenuation: self.attenuation.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SinrParamsRecord {
    pub power: f64,
    pub noise: f64,
    pub threshold: f64,
    pub gamma: f64,
    pub attenuation: String,
}

/// Noise-limited range `l^-1(T N / P)`.
pub fn snr_range<T: Scalar>(params: &SinrParams<T>) -> Result<T> {
    let needed = params.required_gain();
    if !(needed > T::zero()) {
        return Err(Error::Domain(format!(
            "T N / P = {needed}: range is unbounded without noise"
        )));
    }
    let top = params.attenuation.at_zero();
    if needed > top {
        return Err(Error::Infeasible {
            required: needed.as_f64(),
            available: top.as_f64(),
        });
    }
    params.attenuation.inverse(needed)
}
