//! The cusp integral P(y₀) of |F|⁴ and the geodesic integral R(y₀) of |F(iy)|², by quadrature
//! and through exact sums of shifted convolutions.

use std::f64::consts::PI;

use super::domain::{field_majorant, gauss_on, periodic_nodes, y_panels};
use super::field::{series_at, FieldEvaluator};
use super::shifted::shifted_t;
use crate::eigen::HeckeEigenform;
use crate::error::{Error, Result};
use crate::numeric::{gauss_legendre, par_sum};
use crate::special::{incomplete_gamma_q, ln_gamma};

/// Relative size at which the sums and integrals are truncated.
const CUT: f64 = 1e-22;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CuspValue {
    pub value: f64,
    pub est_error: f64,
    /// y_end for quadratures, L_max for sums
    pub cutoff: f64,
}

/// Height above which p·ln(majorant) - shift·ln y has dropped `drop` below its maximum on [y0, ∞).
fn upper_limit(ev: &FieldEvaluator, y0: f64, p: f64, shift: f64, drop: f64) -> f64 {
    let g = |y: f64| p * field_majorant(ev, y).ln() - shift * y.ln();
    let peak = (ev.f.weight as f64 / (4.0 * PI)).max(y0);
    let mut best = f64::NEG_INFINITY;
    let mut y = y0;
    loop {
        let v = g(y);
        best = best.max(v);
        if y > peak && v < best - drop {
            return y;
        }
        y += 0.05;
    }
}

/// P(y₀) = ∫_{y₀}^∞ ∫_{-1/2}^{1/2} |F|⁴ dx dy / y² by quadrature.
pub fn cusp_integral_p(f: &HeckeEigenform, y0: f64) -> Result<CuspValue> {
    strip_quadrature(f, y0, 20).and_then(|coarse| {
        let fine = strip_quadrature(f, y0, 30)?;
        Ok(CuspValue { est_error: (fine.value - coarse.value).abs() + fine.est_error, ..fine })
    })
}

fn strip_quadrature(f: &HeckeEigenform, y0: f64, ny: usize) -> Result<CuspValue> {
    if y0 <= 0.0 {
        return Err(Error::Domain("y0 must be positive".into()));
    }
    let ev = FieldEvaluator::new(f);
    let n = ev.terms_needed(y0);
    let y_end = upper_limit(&ev, y0, 4.0, 2.0, -CUT.ln());
    let (xs, wx) = periodic_nodes(4 * n + 8);
    let gl = gauss_legendre(ny);
    let nodes: Vec<(f64, f64)> =
        y_panels(y0, y_end, 0.2).into_iter().flat_map(|(a, b)| gauss_on(a, b, &gl)).collect();
    let coeffs: Result<Vec<Vec<f64>>> = nodes.iter().map(|&(y, _)| ev.coefficients(y, n)).collect();
    let coeffs = coeffs?;
    let value = par_sum(nodes.len(), |i| {
        let (y, wy) = nodes[i];
        let row: f64 = xs.iter().zip(&wx).map(|(&x, &w)| w * series_at(&coeffs[i], x).norm_sqr().powi(2)).sum();
        row * wy / (y * y)
    });
    let tail = field_majorant(&ev, y_end).powi(4) / y_end;
    Ok(CuspValue { value, est_error: tail, cutoff: y_end })
}

/// Q-cutoff: smallest L with Q(a, c·l) below CUT for every l > L.
fn q_cutoff(a: f64, c: f64) -> u64 {
    let mut l = (a / c).ceil().max(2.0) as u64;
    while incomplete_gamma_q(a, c * l as f64) > CUT {
        l += 1;
    }
    l
}

/// Default truncation of the P sum.
pub fn p_sum_length(k: u32, y0: f64) -> u64 {
    q_cutoff(2.0 * k as f64 - 1.0, 4.0 * PI * y0)
}

/// Default truncation of the R sum.
pub fn r_sum_length(k: u32, y0: f64) -> u64 {
    q_cutoff(k as f64, 2.0 * PI * y0)
}

/// P(y₀) = π^{5/2} Γ(k - 1/2) / (Γ(k) L(1, sym² f)²) Σ_{l <= L} T(l)²/l Q(2k-1, 4πy₀l).
pub fn cusp_integral_p_sum(f: &HeckeEigenform, y0: f64, l_max: u64) -> Result<CuspValue> {
    let k = f.weight as f64;
    let ln_c = 2.5 * PI.ln() + ln_gamma(k - 0.5) - ln_gamma(k) - 2.0 * f.sym2_l1.ln();
    let mut s = 0.0;
    for l in 2..=l_max {
        let t = shifted_t(f, l)?;
        s += t * t / l as f64 * incomplete_gamma_q(2.0 * k - 1.0, 4.0 * PI * y0 * l as f64);
    }
    let next = incomplete_gamma_q(2.0 * k - 1.0, 4.0 * PI * y0 * (l_max + 1) as f64);
    Ok(CuspValue { value: ln_c.exp() * s, est_error: ln_c.exp() * next * l_max as f64, cutoff: l_max as f64 })
}

/// R(y₀) = ∫_{y₀}^∞ |F(iy)|² dy/y by quadrature.
pub fn geodesic_r(f: &HeckeEigenform, y0: f64) -> Result<CuspValue> {
    let coarse = axis_quadrature(f, y0, 20)?;
    let fine = axis_quadrature(f, y0, 30)?;
    Ok(CuspValue { est_error: (fine.value - coarse.value).abs() + fine.est_error, ..fine })
}

fn axis_quadrature(f: &HeckeEigenform, y0: f64, ny: usize) -> Result<CuspValue> {
    if y0 <= 0.0 {
        return Err(Error::Domain("y0 must be positive".into()));
    }
    let ev = FieldEvaluator::new(f);
    let y_end = upper_limit(&ev, y0, 2.0, 1.0, -CUT.ln());
    let gl = gauss_legendre(ny);
    let mut value = 0.0;
    for (a, b) in y_panels(y0, y_end, 0.4) {
        for (y, w) in gauss_on(a, b, &gl) {
            let v = ev.on_imaginary_axis(y)?;
            value += w * v * v / y;
        }
    }
    let rate = (4.0 * PI - ev.f.weight as f64 / y_end).max(1.0);
    let tail = field_majorant(&ev, y_end).powi(2) / (y_end * rate);
    Ok(CuspValue { value, est_error: tail, cutoff: y_end })
}

/// R(y₀) = π / L(1, sym² f) Σ_{l <= L} T(l)/l Q(k, 2πy₀l).
pub fn geodesic_r_sum(f: &HeckeEigenform, y0: f64, l_max: u64) -> Result<CuspValue> {
    let k = f.weight as f64;
    let c = PI / f.sym2_l1;
    let mut s = 0.0;
    for l in 2..=l_max {
        s += shifted_t(f, l)? / l as f64 * incomplete_gamma_q(k, 2.0 * PI * y0 * l as f64);
    }
    let next = incomplete_gamma_q(k, 2.0 * PI * y0 * (l_max + 1) as f64);
    Ok(CuspValue { value: c * s, est_error: c * next * l_max as f64, cutoff: l_max as f64 })
}
