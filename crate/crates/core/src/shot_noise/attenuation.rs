use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Path-gain function `l(r)` with values in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Attenuation<T> {
    /// `l(r) = (1 + r)^(-alpha)`
    InversePoly { alpha: T },
    /// `l(r) = min(1, (r / r0)^(-alpha))`; flat on `[0, r0]`.
    TruncatedPower { alpha: T, r0: T },
}

impl<T: Scalar> Attenuation<T> {
    pub fn inverse_poly(alpha: T) -> Result<Self> {
        let a = Attenuation::InversePoly { alpha };
        a.validate()?;
        Ok(a)
    }

    pub fn truncated_power(alpha: T, r0: T) -> Result<Self> {
        let a = Attenuation::TruncatedPower { alpha, r0 };
        a.validate()?;
        Ok(a)
    }

    /// `alpha > 2` keeps `int_0^inf r l(r) dr` finite.
    pub fn validate(&self) -> Result<()> {
        let two = T::lit(2.0);
        match *self {
            Attenuation::InversePoly { alpha } if alpha > two && alpha.is_finite() => Ok(()),
            Attenuation::TruncatedPower { alpha, r0 }
                if alpha > two && alpha.is_finite() && r0 > T::zero() && r0.is_finite() =>
            {
                Ok(())
            }
            _ => Err(Error::param(format!(
                "attenuation {self} needs alpha > 2 (and r0 > 0)"
            ))),
        }
    }

    #[inline]
    pub fn gain(&self, r: T) -> T {
        match *self {
            Attenuation::InversePoly { alpha } => (T::one() + r).powf(-alpha),
            Attenuation::TruncatedPower { alpha, r0 } => {
                if r <= r0 {
                    T::one()
                } else {
                    (r / r0).powf(-alpha)
                }
            }
        }
    }

    pub fn at_zero(&self) -> T {
        self.gain(T::zero())
    }

    /// Largest `r` with `l(r) >= y`, for `0 < y <= l(0)`.
    pub fn inverse(&self, y: T) -> Result<T> {
        if !(y > T::zero()) {
            return Err(Error::Domain(format!(
                "l^-1({y}) is unbounded: attenuation has unbounded support"
            )));
        }
        if y > self.at_zero() {
            return Err(Error::Domain(format!("{y} exceeds l(0) = {}", self.at_zero())));
        }
        Ok(match *self {
            Attenuation::InversePoly { alpha } => (y.powf(-T::one() / alpha) - T::one()).max(T::zero()),
            Attenuation::TruncatedPower { alpha, r0 } => r0 * y.powf(-T::one() / alpha),
        })
    }

    /// `int_R^inf r l(r) dr`, or `None` when it diverges.
    pub fn tail_moment(&self, radius: T) -> Option<T> {
        let one = T::one();
        let two = T::lit(2.0);
        let radius = radius.max(T::zero());
        match *self {
            Attenuation::InversePoly { alpha } => {
                if !(alpha > two) {
                    return None;
                }
                let u = one + radius;
                Some(u.powf(two - alpha) / (alpha - two) - u.powf(one - alpha) / (alpha - one))
            }
            Attenuation::TruncatedPower { alpha, r0 } => {
                if !(alpha > two) {
                    return None;
                }
                if radius >= r0 {
                    Some(r0.powf(alpha) * radius.powf(two - alpha) / (alpha - two))
                } else {
                    Some((r0 * r0 - radius * radius) / two + r0 * r0 / (alpha - two))
                }
            }
        }
    }

    /// Mean interference `2 pi lambda int_0^inf r l(r) dr` of a Poisson field.
    pub fn poisson_mean_interference(&self, intensity: T) -> Option<T> {
        self.tail_moment(T::zero())
            .map(|m| T::lit(2.0) * T::PI() * intensity * m)
    }
}

impl<T: Scalar> fmt::Display for Attenuation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Attenuation::InversePoly { alpha } => write!(f, "inverse_poly(alpha={alpha})"),
            Attenuation::TruncatedPower { alpha, r0 } => {
                write!(f, "truncated_power(alpha={alpha}, r0={r0})")
            }
        }
    }
}

/// Parses `inverse_poly(4)` or `truncated_power(4, 1)`.
impl<T: Scalar> FromStr for Attenuation<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::param(format!("cannot parse attenuation {s:?}"));
        let t = s.trim().to_ascii_lowercase();
        let open = t.find('(').ok_or_else(bad)?;
        if !t.ends_with(')') {
            return Err(bad());
        }
        let args: Vec<f64> = t[open + 1..t.len() - 1]
            .split(',')
            .map(|v| v.trim().trim_start_matches("alpha=").trim_start_matches("r0=").parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        match (&t[..open], args.as_slice()) {
            ("inverse_poly", [a]) => Attenuation::inverse_poly(T::lit(*a)),
            ("truncated_power", [a, r0]) => Attenuation::truncated_power(T::lit(*a), T::lit(*r0)),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn gain_values() {
        let l = Attenuation::inverse_poly(4.0).unwrap();
        assert_eq!(l.gain(1.0), 0.0625);
        assert_eq!(l.at_zero(), 1.0);
        let t = Attenuation::truncated_power(4.0, 2.0).unwrap();
        assert_eq!(t.gain(1.5), 1.0);
        assert_relative_eq!(t.gain(4.0), 1.0 / 16.0);
        assert!(Attenuation::inverse_poly(2.0).is_err());
    }

    #[test]
    fn inverse_values() {
        let l = Attenuation::inverse_poly(4.0).unwrap();
        assert_relative_eq!(l.inverse(0.5).unwrap(), 2f64.powf(0.25) - 1.0, max_relative = 1e-14);
        assert_eq!(l.inverse(1.0).unwrap(), 0.0);
        assert!(l.inverse(0.0).is_err());
        assert!(l.inverse(1.5).is_err());
        let t = Attenuation::truncated_power(3.0, 0.5).unwrap();
        assert_eq!(t.inverse(1.0).unwrap(), 0.5);
    }

    #[test]
    fn tail_moment_matches_quadrature() {
        use super::super::quadrature::integrate;
        for l in [
            Attenuation::inverse_poly(4.0).unwrap(),
            Attenuation::inverse_poly(3.0).unwrap(),
            Attenuation::truncated_power(4.0, 1.5).unwrap(),
        ] {
            for r in [0.0, 0.7, 3.0] {
                let upper = 1e4;
                let numeric = integrate(|x| x * l.gain(x), r, upper, 1e-12).unwrap()
                    + l.tail_moment(upper).unwrap();
                assert_relative_eq!(l.tail_moment(r).unwrap(), numeric, max_relative = 1e-9);
            }
        }
        let diverging = Attenuation::InversePoly { alpha: 2.0 };
        assert!(diverging.tail_moment(0.0).is_none());
    }

    #[test]
    fn parse_round_trip() {
        let l: Attenuation<f64> = "inverse_poly(4)".parse().unwrap();
        assert_eq!(l, Attenuation::InversePoly { alpha: 4.0 });
        let t: Attenuation<f64> = "truncated_power(3.5, 2)".parse().unwrap();
        assert_eq!(t, Attenuation::TruncatedPower { alpha: 3.5, r0: 2.0 });
        assert!("inverse_poly(1)".parse::<Attenuation<f64>>().is_err());
    }

    proptest! {
        #[test]
        fn inverse_identity(y in 1e-6f64..1.0, alpha in 2.1f64..8.0) {
            let l = Attenuation::inverse_poly(alpha).unwrap();
            let r = l.inverse(y).unwrap();
            prop_assert!((l.gain(r) - y).abs() <= 1e-12 * y);
        }

        #[test]
        fn gain_is_bounded_and_decreasing(a in 0.0f64..50.0, b in 0.0f64..50.0) {
            let l = Attenuation::inverse_poly(4.0).unwrap();
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(l.gain(lo) >= l.gain(hi));
            prop_assert!((0.0..=1.0).contains(&l.gain(lo)));
        }
    }
}
