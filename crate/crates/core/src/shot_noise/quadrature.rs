//! Adaptive Gauss-Kronrod (7/15) quadrature on finite intervals.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
/// Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_DEPTH: u32 = 60;
const MAX_INTERVALS: usize = 20_000;

/// Returns the Kronrod estimate, the error estimate `|K - G|` and the
/// integral of `|f|` used to detect round-off limited intervals.
fn kronrod<T: Scalar, F: Fn(T) -> T>(f: &F, a: T, b: T) -> (T, T, T) {
    let half = T::lit(0.5);
    let center = (a + b) * half;
    let radius = (b - a) * half;
    let fc = f(center);
    let mut k = fc * T::lit(WGK[7]);
    let mut g = fc * T::lit(WG[3]);
    let mut abs = fc.abs() * T::lit(WGK[7]);
    for idx in 0..7 {
        let dx = radius * T::lit(XGK[idx]);
        let (lo, hi) = (f(center - dx), f(center + dx));
        let pair = lo + hi;
        k = k + pair * T::lit(WGK[idx]);
        abs = abs + (lo.abs() + hi.abs()) * T::lit(WGK[idx]);
        if idx % 2 == 1 {
            g = g + pair * T::lit(WG[idx / 2]);
        }
    }
    (k * radius, ((k - g) * radius).abs(), abs * radius.abs())
}

struct Budget {
    intervals: usize,
}

fn adapt<T: Scalar, F: Fn(T) -> T>(
    f: &F,
    a: T,
    b: T,
    whole: (T, T, T),
    tol: T,
    depth: u32,
    budget: &mut Budget,
) -> Result<T> {
    let (value, err, abs) = whole;
    if !value.is_finite() {
        return Err(Error::Integration(format!("non-finite integrand on [{a}, {b}]")));
    }
    if err <= tol || err <= T::lit(50.0) * T::epsilon() * abs {
        return Ok(value);
    }
    if depth >= MAX_DEPTH || budget.intervals >= MAX_INTERVALS {
        return Err(Error::Integration(format!(
            "no convergence on [{a}, {b}]: error estimate {err} above {tol}"
        )));
    }
    let mid = (a + b) * T::lit(0.5);
    if mid <= a || mid >= b {
        // interval at machine resolution; accept
        return Ok(value);
    }
    budget.intervals += 2;
    let left = kronrod(f, a, mid);
    let right = kronrod(f, mid, b);
    let half_tol = tol * T::lit(0.5);
    Ok(adapt(f, a, mid, left, half_tol, depth + 1, budget)?
        + adapt(f, mid, b, right, half_tol, depth + 1, budget)?)
}

/// Integral of `f` over `[a, b]` to absolute tolerance `abs_tol`.
pub fn integrate<T: Scalar, F: Fn(T) -> T>(f: F, a: T, b: T, abs_tol: T) -> Result<T> {
    if a == b {
        return Ok(T::zero());
    }
    let whole = kronrod(&f, a, b);
    adapt(&f, a, b, whole, abs_tol, 0, &mut Budget { intervals: 1 })
}
