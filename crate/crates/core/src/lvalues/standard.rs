//! L(s, f) for f of weight k off the real axis, by the degree-2 approximate functional
//! equation with γ(s) = (2π)^{-s} Γ(s + (k-1)/2) and root number i^k.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::contour::ContourKernel;
use super::cutoff::{CONTOUR_CUT, CONTOUR_STEP};
use crate::eigen::HeckeEigenform;
use crate::error::Result;
use crate::special::{incomplete_gamma_q, log_gamma};

fn ln_gamma_f(k: u32, s: Complex64) -> Result<Complex64> {
    Ok(-s * (2.0 * PI).ln() + log_gamma(s + (k as f64 - 1.0) / 2.0)?)
}

/// Terms the evaluation at s needs: V decays like Q(Re s + (k-1)/2, 2πn).
pub fn standard_afe_length(k: u32, s: Complex64) -> usize {
    let a = (s.re.max(1.0 - s.re) + (k as f64 - 1.0) / 2.0).max(0.5);
    let mut n = 1usize;
    while incomplete_gamma_q(a, 2.0 * PI * n as f64) * (n as f64) > 1e-22 {
        n += 1;
    }
    n + 2
}

/// L(s, f) = Σ λ(n) n^{-s} V_s(n) + i^k γ(1-s)/γ(s) Σ λ(n) n^{s-1} V_{1-s}(n).
pub fn l_standard(f: &HeckeEigenform, s: Complex64) -> Result<Complex64> {
    let k = f.weight;
    let gs = ln_gamma_f(k, s)?;
    let g1s = ln_gamma_f(k, 1.0 - s)?;
    let vs = ContourKernel::new(move |u| Ok(ln_gamma_f(k, s + u)? - gs), 1.0, CONTOUR_STEP, CONTOUR_CUT, false)?;
    let s1 = 1.0 - s;
    let v1s = ContourKernel::new(move |u| Ok(ln_gamma_f(k, s1 + u)? - g1s), 1.0, CONTOUR_STEP, CONTOUR_CUT, false)?;
    let eps = if k % 4 == 0 { 1.0 } else { -1.0 };
    let ratio = (g1s - gs).exp() * eps;
    let n_max = standard_afe_length(k, s);
    let mut a = Complex64::new(0.0, 0.0);
    let mut b = Complex64::new(0.0, 0.0);
    for n in (1..=n_max as u64).rev() {
        let l = f.lambda_extended(n)?;
        let ln = (n as f64).ln();
        a += l * (-s * ln).exp() * vs.eval(n as f64);
        b += l * ((s - 1.0) * ln).exp() * v1s.eval(n as f64);
    }
    Ok(a + ratio * b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_integral_shift_is_incomplete_gamma() {
        // at s = 1/2 the kernel is Q((k)/2, 2πy)
        let k = 12u32;
        let s = Complex64::new(0.5, 0.0);
        let gs = ln_gamma_f(k, s).unwrap();
        let v = ContourKernel::new(move |u| Ok(ln_gamma_f(k, s + u)? - gs), 1.0, CONTOUR_STEP, CONTOUR_CUT, false).unwrap();
        for y in [0.5, 1.0, 2.0] {
            let want = incomplete_gamma_q(6.0, 2.0 * PI * y);
            assert!((v.eval(y).re - want).abs() < 1e-13);
            assert!(v.eval(y).im.abs() < 1e-13);
        }
    }
}
