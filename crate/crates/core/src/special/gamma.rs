//! Log-gamma on the complex plane (principal branch) and on the positive reals.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// B_{2j} / (2j (2j-1)) for j = 1..=12.
const STIRLING: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
    77683.0 / 5796.0,
    -236_364_091.0 / 1_506_960.0,
];

/// Shift threshold: Stirling is applied once `Re z >= SHIFT_TO`.
const SHIFT_TO: f64 = 15.0;

fn stirling(w: Complex64) -> Complex64 {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for c in STIRLING {
        let term = p * c;
        series += term;
        if term.norm() < 1e-18 * series.norm() {
            break;
        }
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + series
}

/// Principal branch of log Γ(z): analytic on ℂ minus the non-positive real axis,
/// real on the positive reals. On the negative real axis the value is the limit
/// from the upper half-plane.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("non-finite argument {z}")));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole(format!("{}", z.re)));
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.re < SHIFT_TO {
        shift += principal_ln(w);
        w += 1.0;
    }
    Ok(stirling(w) - shift)
}

fn principal_ln(w: Complex64) -> Complex64 {
    if w.im == 0.0 && w.re < 0.0 {
        Complex64::new((-w.re).ln(), PI)
    } else {
        w.ln()
    }
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut w = x;
    let mut shift = 1.0;
    let mut acc = 0.0;
    while w < SHIFT_TO {
        shift *= w;
        if shift > 1e250 {
            acc += shift.ln();
            shift = 1.0;
        }
        w += 1.0;
    }
    acc += shift.ln();
    stirling_real(w) - acc
}

fn stirling_real(w: f64) -> f64 {
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv;
    for c in STIRLING {
        let term = p * c;
        series += term;
        if term.abs() < 1e-18 * series.abs() {
            break;
        }
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + HALF_LN_2PI + series
}

/// The Stirling remainder ln Γ(a) - [(a - 1/2) ln a - a + ln √(2π)], accurate for a >= 1.
pub fn stirling_correction(a: f64) -> f64 {
    if a >= SHIFT_TO {
        stirling_real(a) - ((a - 0.5) * a.ln() - a + HALF_LN_2PI)
    } else {
        ln_gamma(a) - ((a - 0.5) * a.ln() - a + HALF_LN_2PI)
    }
}

/// Γ(z) for complex z through the exponential of [`log_gamma`].
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}
