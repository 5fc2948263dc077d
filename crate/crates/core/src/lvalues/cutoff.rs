//! The archimedean factor Λ_{k,κ} of L(s, sym² f × g) and the cutoff W of its
//! approximate functional equation.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::contour::{ContourKernel, DecayBound};
use crate::error::{Error, Result};
use crate::special::log_gamma;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Branch {
    KappaAtLeastK,
    KappaBelowK,
}

/// f of weight k, g of weight 2κ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct GammaFactorSpec {
    pub k: u32,
    pub kappa: u32,
    pub branch: Branch,
}

impl GammaFactorSpec {
    pub fn new(k: u32, kappa: u32) -> Self {
        let branch = if kappa >= k { Branch::KappaAtLeastK } else { Branch::KappaBelowK };
        GammaFactorSpec { k, kappa, branch }
    }

    pub fn shifts(&self) -> [f64; 3] {
        let (k, kp) = (self.k as f64, self.kappa as f64);
        match self.branch {
            Branch::KappaAtLeastK => [k + kp - 1.5, kp - 0.5, kp - k + 0.5],
            Branch::KappaBelowK => [k + kp - 1.5, kp - 0.5, k - kp - 0.5],
        }
    }

    /// ln Λ_{k,κ}(s) on the principal branch of each log-gamma.
    pub fn ln_lambda(&self, s: Complex64) -> Result<Complex64> {
        let mut v = -3.0 * s * (2.0 * PI).ln();
        for a in self.shifts() {
            v += log_gamma(s + a)?;
        }
        Ok(v)
    }
}

/// +1 iff (κ >= k and κ even) or (κ < k and κ odd).
pub fn root_number(k: u32, kappa: u32) -> i32 {
    let plus = (kappa >= k && kappa % 2 == 0) || (kappa < k && kappa % 2 == 1);
    if plus {
        1
    } else {
        -1
    }
}

/// Λ_{k,κ}(s) in polar log form, with the plain value when it fits in f64.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaValue {
    pub log_modulus: f64,
    pub phase: f64,
    pub value: Option<Complex64>,
}

pub fn gamma_factor(spec: &GammaFactorSpec, s: Complex64) -> Result<GammaValue> {
    let l = spec.ln_lambda(s)?;
    let value = (l.re < 700.0 && l.re > -700.0).then(|| l.exp());
    Ok(GammaValue { log_modulus: l.re, phase: l.im, value })
}

/// Default mollifier parameter.
pub const DEFAULT_A: u32 = 16;

/// ln (cos(πs/(10A)))^{-60A} on |Re s| < 5A.
pub fn ln_mollifier(s: Complex64, a: u32) -> Result<Complex64> {
    let z = s * (PI / (10.0 * a as f64));
    if z.re.abs() >= PI / 2.0 {
        return Err(Error::Contour(format!("mollifier pole strip reached at Re s = {}", s.re)));
    }
    Ok(-60.0 * a as f64 * z.cos().ln())
}

#[derive(Debug, Clone)]
pub struct CutoffW {
    pub spec: GammaFactorSpec,
    pub a: u32,
    right: ContourKernel,
    left: ContourKernel,
    bound: DecayBound,
}

pub const CONTOUR_STEP: f64 = 0.05;
pub const CONTOUR_CUT: f64 = 1e-20;

impl CutoffW {
    pub fn new(spec: GammaFactorSpec, a: u32) -> Result<Self> {
        Self::with_abscissa(spec, a, 1.0)
    }

    /// W evaluated on the line Re s = `abscissa` (for x >= 1; smaller x use Re s = -1/2).
    pub fn with_abscissa(spec: GammaFactorSpec, a: u32, abscissa: f64) -> Result<Self> {
        let phi = Self::phi(spec, a)?;
        let right = ContourKernel::new(&phi, abscissa, CONTOUR_STEP, CONTOUR_CUT, true)?;
        let left = ContourKernel::new(&phi, -0.5, CONTOUR_STEP, CONTOUR_CUT, true)?;
        let sig_max = 5.0 * a as f64 - 2.0;
        let sigmas = (0..).map(|i| 1.0 + i as f64).take_while(|&s| s <= sig_max);
        let bound = DecayBound::new(&phi, sigmas, true)?;
        Ok(CutoffW { spec, a, right, left, bound })
    }

    fn phi(spec: GammaFactorSpec, a: u32) -> Result<impl Fn(Complex64) -> Result<Complex64>> {
        let base = spec.ln_lambda(Complex64::new(0.5, 0.0))?;
        Ok(move |s: Complex64| Ok(spec.ln_lambda(s + 0.5)? - base + ln_mollifier(s, a)?))
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x < 1.0 {
            self.left.eval_real(x)
        } else {
            self.right.eval_real(x)
        }
    }

    /// x W'(x).
    pub fn eval_x_deriv(&self, x: f64) -> f64 {
        if x < 1.0 {
            self.left.eval_x_deriv(x).re
        } else {
            self.right.eval_x_deriv(x).re
        }
    }

    /// Contour-shift bound |W(x)| <= min_σ C_σ x^{-σ} (for x > 1).
    pub fn bound(&self, x: f64) -> f64 {
        self.bound.ln_bound(x, 0.0).exp()
    }

    /// Bound on the tail of Σ_{n m² > X} |λ_g(n) A(m, n)| W(n m²)/(√n m):
    /// with |λ_g(n)| <= τ(n), |A(m,n)| <= τ(m)²τ(n)², and (nm²)^{-σ} <= X^{1-σ}(nm²)^{-1},
    /// it is at most C_σ X^{1-σ} ζ(3/2)^8 ζ(3)^4.
    pub fn tail_certificate(&self, x: f64) -> f64 {
        const ZETA_3_2: f64 = 2.612_375_348_685_488;
        const ZETA_3: f64 = 1.202_056_903_159_594_2;
        (self.bound.ln_bound(x, 1.0) + 8.0 * ZETA_3_2.ln() + 4.0 * ZETA_3.ln()).exp()
    }

    /// Smallest truncation point whose tail certificate is below `eps`.
    pub fn effective_cutoff(&self, eps: f64) -> f64 {
        const LN_CONST: f64 = 7.681_7; // ln(ζ(3/2)^8 ζ(3)^4)
        self.bound.cutoff(eps * (-LN_CONST).exp(), 1.0)
    }

    pub fn nodes(&self) -> usize {
        self.right.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_numbers() {
        assert_eq!(root_number(12, 12), 1);
        assert_eq!(root_number(12, 11), 1);
        assert_eq!(root_number(12, 13), -1);
        assert_eq!(root_number(12, 10), -1);
    }

    #[test]
    fn gamma_factor_composition() {
        let spec = GammaFactorSpec::new(12, 12);
        let g = gamma_factor(&spec, Complex64::new(0.5, 0.0)).unwrap();
        let want = -1.5 * (2.0 * PI).ln()
            + crate::special::ln_gamma(23.0)
            + crate::special::ln_gamma(12.0);
        assert!((g.log_modulus - want).abs() < 1e-12);
        assert_eq!(g.phase, 0.0);
        assert!(g.value.unwrap().re > 0.0);
        let spec = GammaFactorSpec::new(12, 7);
        assert_eq!(spec.shifts(), [17.5, 6.5, 4.5]);
    }

    #[test]
    fn cutoff_limits_and_shift_invariance() {
        let spec = GammaFactorSpec::new(12, 12);
        let w1 = CutoffW::new(spec, DEFAULT_A).unwrap();
        let w2 = CutoffW::with_abscissa(spec, DEFAULT_A, 2.0).unwrap();
        assert!((w1.eval(1e-9) - 1.0).abs() < 1e-6);
        for x in [1.0, 1.7, 5.0, 40.0, 144.0, 1000.0] {
            assert!((w1.eval(x) - w2.eval(x)).abs() < 1e-8, "{x}");
            assert!(w1.eval(x).abs() <= w1.bound(x) * (1.0 + 1e-12) + 1e-300);
        }
        assert!((w1.eval(0.999) - w1.eval(1.001)).abs() < 1e-2);
        let ratio = w1.eval(1440.0) / w1.eval(144.0);
        assert!(ratio.abs() <= 1e-3);
    }
}
