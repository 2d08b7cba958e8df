//! Closed-form bounds from the discretized path-counting and void arguments.
//!
//! With the lattice `Z^d(2r)` (neighbors share a face, edge or corner), a
//! self-avoiding path of `n` sites from the origin is open with probability
//! at most `(lambda (2r)^d)^n` for a weakly sub-Poisson process, and there
//! are at most `(3^d - 2)^n` such paths. The product is
//! [`expected_path_count_bound`]; it decays geometrically below
//! [`lower_bound_radius`]. On `Z^d(r / sqrt(d))` the probability that a path
//! of `n` sites is entirely void is at most [`peierls_void_bound`].

use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn check(lambda: f64, d: u32) -> Result<()> {
    if d == 0 {
        return Err(Error::param("dimension must be >= 1"));
    }
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::param(format!("intensity must be finite and >= 0, got {lambda}")));
    }
    Ok(())
}

fn path_multiplicity<T: Scalar>(d: u32) -> T {
    T::lit(3f64.powi(d as i32) - 2.0)
}

/// `(3^d - 2) * lambda * (2r)^d`, the per-step factor of the path bound.
pub fn path_bound_base<T: Scalar>(lambda: T, r: T, d: u32) -> Result<T> {
    check(lambda.as_f64(), d)?;
    Ok(path_multiplicity::<T>(d) * lambda * (T::lit(2.0) * r).powi(d as i32))
}

/// `((3^d - 2) * lambda * (2r)^d)^n`.
pub fn expected_path_count_bound<T: Scalar>(lambda: T, r: T, n: u32, d: u32) -> Result<T> {
    Ok(path_bound_base(lambda, r, d)?.powi(n as i32))
}

/// `c(lambda) = 1/2 * ((3^d - 2) * lambda)^(-1/d)`: the radius where the path
/// bound base equals one.
pub fn lower_bound_radius<T: Scalar>(lambda: T, d: u32) -> Result<T> {
    check(lambda.as_f64(), d)?;
    if !(lambda > T::zero()) {
        return Err(Error::param("intensity must be > 0"));
    }
    let dim = T::from_u32(d).expect("dimension");
    Ok(T::lit(0.5) * (path_multiplicity::<T>(d) * lambda).powf(-T::one() / dim))
}

/// `exp(-lambda * n * (r / sqrt(d))^d)`.
pub fn peierls_void_bound<T: Scalar>(lambda: T, r: T, n: u32, d: u32) -> Result<T> {
    check(lambda.as_f64(), d)?;
    if !(r >= T::zero()) || n == 0 {
        return Err(Error::param("need r >= 0 and n >= 1"));
    }
    let dim = T::from_u32(d).expect("dimension");
    let side = r / dim.sqrt();
    Ok((-lambda * T::from_u32(n).expect("path length") * side.powi(d as i32)).exp())
}
