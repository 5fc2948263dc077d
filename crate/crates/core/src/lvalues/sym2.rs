//! L(1, sym² f): a degree-3 approximate functional equation, and the smoothed Dirichlet
//! polynomial Σ λ(d₁²)/(d₁d₂²) exp(-d₁d₂²/X).

use num_complex::Complex64;
use std::f64::consts::PI;

use super::contour::{ContourKernel, DecayBound};
use super::cutoff::{CONTOUR_CUT, CONTOUR_STEP};
use crate::eigen::HeckeEigenform;
use crate::error::Result;
use crate::special::log_gamma;

/// ln γ(s) with γ(s) = π^{-(s+1)/2} Γ((s+1)/2) (2π)^{-(s+k-1)} Γ(s+k-1).
pub fn ln_gamma_sym2(k: u32, s: Complex64) -> Result<Complex64> {
    let kk = k as f64;
    Ok(-(s + 1.0) / 2.0 * PI.ln() + log_gamma((s + 1.0) / 2.0)?
        - (s + kk - 1.0) * (2.0 * PI).ln()
        + log_gamma(s + kk - 1.0)?)
}

/// A value with its truncation or stability diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct L1Value {
    pub value: f64,
    /// tail certificate (AFE) or |value(X) - value(2X)| (smoothed)
    pub estimate: f64,
    pub terms: usize,
}

const AFE_EPS: f64 = 1e-16;
/// ln(ζ(2)^4/ζ(4)) bounds ln Σ τ(n)² n^{-2}
const LN_TAU2_SUM: f64 = 1.9;

struct Afe {
    v1: ContourKernel,
    v0: ContourKernel,
    eps_ratio: f64,
    length: usize,
    tail: f64,
}

fn afe(k: u32) -> Result<Afe> {
    let g1 = ln_gamma_sym2(k, Complex64::new(1.0, 0.0))?;
    let g0 = ln_gamma_sym2(k, Complex64::new(0.0, 0.0))?;
    let phi1 = move |u: Complex64| Ok(ln_gamma_sym2(k, u + 1.0)? - g1);
    let phi0 = move |u: Complex64| Ok(ln_gamma_sym2(k, u)? - g0);
    let v1 = ContourKernel::new(phi1, 1.0, CONTOUR_STEP, CONTOUR_CUT, true)?;
    let v0 = ContourKernel::new(phi0, 1.0, CONTOUR_STEP, CONTOUR_CUT, true)?;
    let eps_ratio = (g0 - g1).re.exp();
    let sig: Vec<f64> = (3..60).map(|s| s as f64).collect();
    let b0 = DecayBound::new(phi0, sig.iter().copied(), true)?;
    // Σ_{n>N} |A(n,1)| V(n) <= C_σ N^{2-σ} Σ τ(n)² n^{-2}; the dual sum dominates the other
    let weight = (1.0 + eps_ratio).ln() + LN_TAU2_SUM;
    let target = AFE_EPS * (-weight).exp();
    let length = b0.cutoff(target, 2.0).ceil() as usize;
    let tail = (b0.ln_bound(length as f64, 2.0) + weight).exp();
    Ok(Afe { v1, v0, eps_ratio, length: length.max(20), tail })
}

/// Number of coefficients (and hence the prime bound) the AFE evaluation uses at weight k.
pub fn sym2_afe_length(k: u32) -> usize {
    afe(k).map(|a| a.length).unwrap_or(1000)
}

/// L(1, sym² f) = Σ A(n,1)/n V₁(n) + (γ(0)/γ(1)) Σ A(n,1) V₀(n).
pub fn l_sym2_at_1_afe(f: &HeckeEigenform) -> Result<L1Value> {
    let a = afe(f.weight)?;
    let b = f.sym2_table(a.length)?;
    let mut s1 = 0.0;
    let mut s0 = 0.0;
    for (n, bn) in b.iter().enumerate().skip(1) {
        let x = n as f64;
        s1 += bn / x * a.v1.eval_real(x);
        s0 += bn * a.v0.eval_real(x);
    }
    Ok(L1Value { value: s1 + a.eps_ratio * s0, estimate: a.tail, terms: a.length })
}

/// The smoothed sum at scale X, truncated where exp(-d₁d₂²/X) < 1e-17.
pub fn l_sym2_smoothed(f: &HeckeEigenform, x: f64) -> Result<f64> {
    let cut = x * 17.0 * std::f64::consts::LN_10;
    let d1_max = cut as usize;
    let sq = f.lambda_square_table(d1_max)?;
    let mut total = 0.0;
    for d1 in (1..=d1_max).rev() {
        let mut inner = 0.0;
        let mut d2 = 1usize;
        loop {
            let t = (d1 * d2 * d2) as f64;
            if t > cut {
                break;
            }
            inner += (-t / x).exp() / (d2 * d2) as f64;
            d2 += 1;
        }
        total += sq[d1] / d1 as f64 * inner;
    }
    Ok(total)
}

/// The smoothed sum with the two-scale estimate |value(X) - value(2X)|.
pub fn l_sym2_at_1(f: &HeckeEigenform, x: f64) -> Result<L1Value> {
    let v = l_sym2_smoothed(f, x)?;
    let v2 = l_sym2_smoothed(f, 2.0 * x)?;
    Ok(L1Value {
        value: v,
        estimate: (v - v2).abs(),
        terms: (x * 17.0 * std::f64::consts::LN_10) as usize,
    })
}

/// L(s, sym² f) for real s > 1/2 by the same approximate functional equation,
/// L(s) = Σ A(n,1) n^{-s} V_s(n) + (γ(1-s)/γ(s)) Σ A(n,1) n^{s-1} V_{1-s}(n).
pub fn l_sym2_real(f: &HeckeEigenform, s: f64) -> Result<L1Value> {
    if s <= 0.5 {
        return Err(crate::Error::Domain(format!("l_sym2_real needs s > 1/2, got {s}")));
    }
    let k = f.weight;
    let sc = Complex64::new(s, 0.0);
    let gs = ln_gamma_sym2(k, sc)?;
    let phi_s = move |u: Complex64| Ok(ln_gamma_sym2(k, u + s)? - gs);
    // γ(1-s+u)/γ(s): γ(1-s) itself has poles at even s and changes sign
    let phi_d = move |u: Complex64| Ok(ln_gamma_sym2(k, u + 1.0 - s)? - gs);
    // rightmost pole of the dual integrand sits at u = s - 2
    let c_d = (s - 1.0).max(1.0);
    let vs = ContourKernel::new(phi_s, 1.0, CONTOUR_STEP, CONTOUR_CUT, true)?;
    let vd = ContourKernel::new(phi_d, c_d, CONTOUR_STEP, CONTOUR_CUT, true)?;
    let sig = |lo: f64| (0..60).map(move |j| lo + 1.0 + j as f64);
    let bs = DecayBound::new(phi_s, sig(2.0 - s).filter(|x| *x > 1.0), true)?;
    let bd = DecayBound::new(phi_d, sig(s + 1.0).filter(move |x| *x > c_d), true)?;
    let target = AFE_EPS * (-LN_TAU2_SUM).exp();
    let length = bs.cutoff(target, 2.0 - s).max(bd.cutoff(target, s + 1.0)).ceil() as usize;
    let tail = (bs.ln_bound(length as f64, 2.0 - s) + LN_TAU2_SUM).exp()
        + (bd.ln_bound(length as f64, s + 1.0) + LN_TAU2_SUM).exp();
    let b = f.sym2_table(length.max(20))?;
    let (mut a1, mut a2) = (0.0, 0.0);
    for (n, bn) in b.iter().enumerate().skip(1).rev() {
        let x = n as f64;
        a1 += bn * x.powf(-s) * vs.eval_real(x);
        a2 += bn * x.powf(s - 1.0) * vd.eval_real(x);
    }
    Ok(L1Value { value: a1 + a2, estimate: tail, terms: b.len() - 1 })
}
