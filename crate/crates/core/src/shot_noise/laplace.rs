use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::point_processes::{PatternSource, Point};
use crate::scalar::Scalar;
use crate::stats::EstimateWithCI;

use super::attenuation::Attenuation;
use super::interference::interference_at;
use super::quadrature::integrate;

const TAIL_RELATIVE: f64 = 1e-10;
const MAX_SEGMENTS: usize = 4096;

/// Monte Carlo estimate of `E exp(s * sum_i I(x_i))` from replicated
/// interference vectors.
pub fn empirical_joint_laplace<T: Scalar>(samples: &[Vec<T>], s: f64) -> EstimateWithCI {
    let values: Vec<f64> = samples
        .iter()
        .map(|v| (s * v.iter().map(|x| x.as_f64()).sum::<f64>()).exp())
        .collect();
    EstimateWithCI::from_samples(&values)
}

/// Interference at each probe, one vector per seed.
pub fn interference_samples<T: Scalar>(
    source: &dyn PatternSource<T>,
    probes: &[Point<T>],
    attenuation: &Attenuation<T>,
    seeds: &[u64],
) -> Result<Vec<Vec<T>>> {
    seeds
        .par_iter()
        .map(|&seed| {
            let pattern = source.generate(seed)?;
            Ok(probes
                .iter()
                .map(|x| interference_at(&pattern, x, attenuation, None))
                .collect())
        })
        .collect()
}

/// `int_0^inf (exp(s l(r)) - 1) r dr`, to a relative accuracy of about 1e-10.
pub fn laplace_exponent_integral<T: Scalar>(attenuation: &Attenuation<T>, s: T) -> Result<T> {
    if s == T::zero() {
        return Ok(T::zero());
    }
    let integrand = |r: T| (s * attenuation.gain(r)).exp_m1() * r;
    // |exp(s l) - 1| <= |s| exp(max(s, 0)) l
    let lipschitz = s.abs() * s.max(T::zero()).exp();
    let tail = |radius: T| -> Result<T> {
        attenuation
            .tail_moment(radius)
            .map(|m| lipschitz * m)
            .ok_or_else(|| Error::Integration(format!("int r l(r) dr diverges for {attenuation}")))
    };
    tail(T::zero())?;
    let floor = T::quadrature_floor();
    let relative = T::lit(TAIL_RELATIVE).max(floor);
    let mut breaks = vec![T::zero()];
    if let Attenuation::TruncatedPower { r0, .. } = *attenuation {
        breaks.push(r0);
    }
    let mut total = T::zero();
    let mut a = T::zero();
    let mut b = T::one();
    for _ in 0..MAX_SEGMENTS {
        if let Some(&k) = breaks.iter().find(|&&k| k > a && k < b) {
            b = k;
        }
        let piece = integrate(integrand, a, b, floor * (T::one() + total.abs()))?;
        total = total + piece;
        if tail(b)? <= relative * total.abs() {
            return Ok(total);
        }
        a = b;
        b = b * T::lit(2.0);
        if !b.is_finite() {
            break;
        }
    }
    Err(Error::Integration(format!(
        "tail of the Laplace integral for {attenuation} did not fall below the tolerance"
    )))
}

/// Laplace transform of Poisson shot noise at a point:
/// `exp(2 pi lambda int_0^inf (exp(s l(r)) - 1) r dr)`.
pub fn poisson_laplace_closed_form<T: Scalar>(intensity: T, attenuation: &Attenuation<T>, s: T) -> Result<T> {
    if !(intensity >= T::zero()) {
        return Err(Error::param(format!("intensity must be >= 0, got {intensity}")));
    }
    if intensity == T::zero() || s == T::zero() {
        return Ok(T::one());
    }
    let inner = laplace_exponent_integral(attenuation, s)?;
    Ok((T::lit(2.0) * T::PI() * intensity * inner).exp())
}
