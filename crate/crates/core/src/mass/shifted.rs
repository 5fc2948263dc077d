//! Shifted convolution sums T_f(l), S_f(l) and the Poincaré-series inner product.

use std::f64::consts::PI;

use crate::eigen::HeckeEigenform;
use crate::error::{Error, Result};
use crate::special::ln_gamma;

fn check(f: &HeckeEigenform, l: u64) -> Result<&[f64]> {
    if l as usize >= f.table_len() {
        return Err(Error::ExtendTable { prime: l, bound: f.table_len() as u64 - 1 });
    }
    Ok(f.lambda_table())
}

/// T_f(l) = Σ_{m+n=l} λ(m)λ(n)(2√(mn)/l)^{k-1}.
pub fn shifted_t(f: &HeckeEigenform, l: u64) -> Result<f64> {
    let lam = check(f, l)?;
    let k1 = f.weight as f64 - 1.0;
    let ll = (l as f64).ln();
    let mut s = 0.0;
    for m in 1..l {
        let n = l - m;
        let w = k1 * (std::f64::consts::LN_2 + 0.5 * ((m as f64).ln() + (n as f64).ln()) - ll);
        s += lam[m as usize] * lam[n as usize] * w.exp();
    }
    Ok(s)
}

/// S_f(l) = Σ_{m+n=l} λ(m)λ(n) exp(-(m-n)² k / (2l²)).
pub fn shifted_s(f: &HeckeEigenform, l: u64) -> Result<f64> {
    let lam = check(f, l)?;
    let k = f.weight as f64;
    let l2 = (l * l) as f64;
    let mut s = 0.0;
    for m in 1..l {
        let d = m as f64 - (l - m) as f64;
        s += lam[m as usize] * lam[(l - m) as usize] * (-d * d * k / (2.0 * l2)).exp();
    }
    Ok(s)
}

#[derive(Debug, Clone)]
pub struct ShiftedConvolutionTable {
    pub k: u32,
    pub form_index: usize,
    /// index l, zero at l < 2
    pub t: Vec<f64>,
    pub s: Vec<f64>,
    /// max_l |T(l)| / (1 + l/√k)
    pub t_bound_c: f64,
    /// max_l |T(l) - S(l)| k^{3/2} / l
    pub diff_c: f64,
}

impl ShiftedConvolutionTable {
    pub fn new(f: &HeckeEigenform, l_max: u64) -> Result<Self> {
        let k = f.weight as f64;
        let mut t = vec![0.0; l_max as usize + 1];
        let mut s = t.clone();
        let (mut c, mut c2) = (0.0f64, 0.0f64);
        for l in 2..=l_max {
            t[l as usize] = shifted_t(f, l)?;
            s[l as usize] = shifted_s(f, l)?;
            c = c.max(t[l as usize].abs() / (1.0 + l as f64 / k.sqrt()));
            c2 = c2.max((t[l as usize] - s[l as usize]).abs() * k.powf(1.5) / l as f64);
        }
        Ok(ShiftedConvolutionTable { k: f.weight, form_index: f.index, t, s, t_bound_c: c, diff_c: c2 })
    }
}

/// ln of 2^{k-1}√(4πl) / (a₁² √Γ(2k-1)), the factor taking ⟨f², P̃_l⟩ to T_f(l).
pub fn ln_poincare_factor(f: &HeckeEigenform, l: u64) -> f64 {
    let k = f.weight as f64;
    (k - 1.0) * std::f64::consts::LN_2 + 0.5 * (4.0 * PI * l as f64).ln()
        - f.ln_a1_squared()
        - 0.5 * ln_gamma(2.0 * k - 1.0)
}

/// ⟨f², P̃_l⟩ recovered from T_f(l).
pub fn poincare_inner(f: &HeckeEigenform, l: u64) -> Result<f64> {
    let t = shifted_t(f, l)?;
    let ln = t.abs().ln() - ln_poincare_factor(f, l);
    if ln > 700.0 {
        return Err(Error::Overflow(format!("ln|⟨f², P_l⟩| = {ln}")));
    }
    Ok(t.signum() * ln.exp())
}

/// T_f(l) from ⟨f², P̃_l⟩.
pub fn t_from_poincare(f: &HeckeEigenform, l: u64, inner: f64) -> f64 {
    inner.signum() * (inner.abs().ln() + ln_poincare_factor(f, l)).exp()
}
