//! The geodesic integral 𝓘 = ∫_0^∞ |F(iy)|² dy/y along the imaginary axis, by three routes.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::{LN_2, PI};

use super::cusp::geodesic_r;
use super::shifted::shifted_t;
use crate::eigen::HeckeEigenform;
use crate::error::{Error, Result};
use crate::lvalues::{l_half_g, l_standard};
use crate::numeric::solve_linear;
use crate::special::{ln_gamma, log_gamma};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeodesicMethod {
    Direct,
    Moment,
    Spectral,
}

impl std::str::FromStr for GeodesicMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(GeodesicMethod::Direct),
            "moment" => Ok(GeodesicMethod::Moment),
            "spectral" => Ok(GeodesicMethod::Spectral),
            _ => Err(Error::Precondition(format!("unknown method {s}"))),
        }
    }
}

impl std::fmt::Display for GeodesicMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GeodesicMethod::Direct => "direct",
            GeodesicMethod::Moment => "moment",
            GeodesicMethod::Spectral => "spectral",
        })
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct GeodesicValue {
    pub method: GeodesicMethod,
    pub value: f64,
    pub est_error: f64,
}

/// Per-form data of the spectral route.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct SpectralTerm {
    pub g_index: usize,
    /// ⟨F², G⟩ for G of unit norm in dμ
    pub inner: f64,
    pub a_g1: f64,
    pub l_half: f64,
    pub contribution: f64,
}

/// Direct route: ∫_ε^∞ + ∫_{1/ε}^∞, the second being ∫_0^ε under z ↦ -1/z.
pub fn geodesic_direct(f: &HeckeEigenform, eps: f64) -> Result<GeodesicValue> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::Precondition("direct route needs 0 < ε <= 1".into()));
    }
    let a = geodesic_r(f, eps)?;
    let b = geodesic_r(f, 1.0 / eps)?;
    Ok(GeodesicValue { method: GeodesicMethod::Direct, value: a.value + b.value, est_error: a.est_error + b.est_error })
}

/// ln of the gamma weight 2^{k-2}|Γ(k/2 + it)|²/Γ(k).
pub fn ln_moment_weight(k: u32, t: f64) -> Result<f64> {
    let k = k as f64;
    Ok((k - 2.0) * LN_2 + 2.0 * log_gamma(Complex64::new(k / 2.0, t))?.re - ln_gamma(k))
}

/// Moment route: (1/L(1, sym² f)) ∫ 2^{k-2}|Γ(k/2+it)|²/Γ(k) |L(1/2+it, f)|² dt, trapezoid in t
/// (the integrand is analytic in a strip of half-width k/2), with the step halved for the error.
pub fn geodesic_moment(f: &HeckeEigenform) -> Result<GeodesicValue> {
    let k = f.weight;
    let w0 = ln_moment_weight(k, 0.0)?;
    let mut t_max = 1.0;
    while ln_moment_weight(k, t_max)? > w0 - 46.0 {
        t_max += 1.0;
    }
    let h = 0.125;
    let n = (t_max / h).ceil() as usize;
    let vals: Result<Vec<f64>> = (0..=n)
        .into_par_iter()
        .map(|j| {
            let t = j as f64 * h;
            let l = l_standard(f, Complex64::new(0.5, t))?;
            Ok(ln_moment_weight(k, t)?.exp() * l.norm_sqr())
        })
        .collect();
    let vals = vals?;
    let sum = |stride: usize| -> f64 {
        let body: f64 = vals.iter().step_by(stride).skip(1).sum();
        (vals[0] + 2.0 * body) * h * stride as f64
    };
    let (fine, coarse) = (sum(1), sum(2));
    Ok(GeodesicValue {
        method: GeodesicMethod::Moment,
        value: fine / f.sym2_l1,
        est_error: (fine - coarse).abs() / f.sym2_l1 + 1e-20,
    })
}

/// Spectral route. The coordinates ⟨F², G⟩ a_g(1) solve Σ_g x_g λ_g(l) = a_f(1)² T(l)/(2^{k-1}√(4πl))
/// for l = 1..dim S_{2k}; then 𝓘 = Σ_g x_g 2^k Γ(k) L(1/2, g)/√(4π). All factors are combined
/// in log space, giving 𝓘 = (π/L(1, sym² f)) Σ_g y_g L(1/2, g) with Σ_g y_g λ_g(l) = T(l)/√l.
pub fn geodesic_spectral(f: &HeckeEigenform, basis_2k: &[HeckeEigenform]) -> Result<(GeodesicValue, Vec<SpectralTerm>)> {
    let k = f.weight;
    let d = basis_2k.len();
    if d == 0 || basis_2k.iter().any(|g| g.weight != 2 * k) {
        return Err(Error::Precondition(format!("need the full eigenbasis of weight {}", 2 * k)));
    }
    let mut a = vec![vec![0.0; d]; d];
    let mut rhs = vec![0.0; d];
    for l in 1..=d {
        for (j, g) in basis_2k.iter().enumerate() {
            a[l - 1][j] = g.lambda_extended(l as u64)?;
        }
        rhs[l - 1] = if l >= 2 { shifted_t(f, l as u64)? / (l as f64).sqrt() } else { 0.0 };
    }
    let y = solve_linear(a, rhs)?;
    let c = PI / f.sym2_l1;
    let ln_x_scale = f.ln_a1_squared() - (k as f64 - 1.0) * LN_2 - 0.5 * (4.0 * PI).ln();
    let mut terms = Vec::with_capacity(d);
    let mut total = 0.0;
    let mut err = 0.0;
    for (g, &yg) in basis_2k.iter().zip(&y) {
        let lg = l_half_g(g)?;
        let a_g1 = (0.5 * g.ln_a1_squared()).exp();
        let inner = yg * (ln_x_scale - 0.5 * g.ln_a1_squared()).exp();
        let contribution = c * yg * lg.value;
        total += contribution;
        err += c * yg.abs() * lg.tail_bound;
        terms.push(SpectralTerm { g_index: g.index, inner, a_g1, l_half: lg.value, contribution });
    }
    Ok((GeodesicValue { method: GeodesicMethod::Spectral, value: total, est_error: err + 1e-15 * total.abs() }, terms))
}

/// 𝓘 by the chosen route; the spectral route needs B_{2k}.
pub fn geodesic_i(f: &HeckeEigenform, method: GeodesicMethod, basis_2k: Option<&[HeckeEigenform]>) -> Result<GeodesicValue> {
    match method {
        GeodesicMethod::Direct => geodesic_direct(f, 1.0),
        GeodesicMethod::Moment => geodesic_moment(f),
        GeodesicMethod::Spectral => {
            let b = basis_2k.ok_or_else(|| Error::Precondition("spectral route needs the weight-2k basis".into()))?;
            Ok(geodesic_spectral(f, b)?.0)
        }
    }
}
