//! F(z) = y^{k/2} f(z) for an L²-normalised eigenform, evaluated in log space.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::eigen::HeckeEigenform;
use crate::error::{Error, Result};

/// Relative size below which Fourier terms are dropped.
pub const TAIL_REL: f64 = 1e-17;

/// Fourier data of F = a_f(1) y^{k/2} Σ λ(n)(4πn)^{(k-1)/2} e(nz).
#[derive(Debug, Clone)]
pub struct FieldEvaluator<'a> {
    pub f: &'a HeckeEigenform,
    ln_a1: f64,
}

impl<'a> FieldEvaluator<'a> {
    pub fn new(f: &'a HeckeEigenform) -> Self {
        FieldEvaluator { f, ln_a1: 0.5 * f.ln_a1_squared() }
    }

    /// ln of |a₁| (4πn)^{(k-1)/2} e^{-2πny} y^{k/2}, the size of the n-th term up to λ(n).
    pub fn ln_term(&self, n: usize, y: f64) -> f64 {
        let k = self.f.weight as f64;
        self.ln_a1 + (k - 1.0) / 2.0 * (4.0 * PI * n as f64).ln() - 2.0 * PI * n as f64 * y
            + k / 2.0 * y.ln()
    }

    /// Smallest term count whose dropped tail is below `TAIL_REL` of the largest term
    /// (with |λ(n)| <= n bounding the divisor function).
    pub fn terms_needed(&self, y: f64) -> usize {
        let k = self.f.weight as f64;
        let peak_n = ((k - 1.0) / (4.0 * PI * y)).max(1.0);
        let peak = self.ln_term(peak_n.round().max(1.0) as usize, y).max(self.ln_term(1, y));
        let mut n = peak_n.ceil() as usize;
        // geometric tail ratio e^{-2πy}(1 + 1/n)^{(k+1)/2} < 1 beyond the peak
        loop {
            let ratio = (-2.0 * PI * y + (k + 1.0) / 2.0 * (1.0 + 1.0 / n as f64).ln()).exp();
            if ratio < 0.9 {
                let tail = self.ln_term(n, y) + (n as f64).ln() - (1.0 - ratio).ln();
                if tail < peak + TAIL_REL.ln() {
                    return n;
                }
            }
            n += 1;
        }
    }

    /// Coefficients c_n(y) with F(x+iy) = Σ c_n(y) e(nx), n = 1..=len.
    pub fn coefficients(&self, y: f64, len: usize) -> Result<Vec<f64>> {
        if self.f.table_len() <= len {
            return Err(Error::InsufficientTerms { required: len, given: self.f.table_len() - 1 });
        }
        let lam = self.f.lambda_table();
        Ok((1..=len).map(|n| lam[n] * self.ln_term(n, y).exp()).collect())
    }

    /// F(z) with an explicit term count; errors when the count is too small for 1e-17 tails.
    pub fn evaluate_with(&self, z: Complex64, n_terms: usize) -> Result<Complex64> {
        if z.im <= 0.0 {
            return Err(Error::Domain("Im z must be positive".into()));
        }
        let need = self.terms_needed(z.im);
        if n_terms < need {
            return Err(Error::InsufficientTerms { required: need, given: n_terms });
        }
        let c = self.coefficients(z.im, n_terms)?;
        Ok(series_at(&c, z.re))
    }

    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        self.evaluate_with(z, self.terms_needed(z.im))
    }

    /// F(iy), real for real eigenvalues.
    pub fn on_imaginary_axis(&self, y: f64) -> Result<f64> {
        let n = self.terms_needed(y);
        let c = self.coefficients(y, n)?;
        Ok(c.iter().rev().sum())
    }
}

/// Σ_{n>=1} c[n-1] e(nx).
pub fn series_at(c: &[f64], x: f64) -> Complex64 {
    let step = Complex64::from_polar(1.0, 2.0 * PI * x);
    let mut e = step;
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, cn) in c.iter().enumerate() {
        acc += e * cn;
        if (i + 1) % 64 == 0 {
            e = Complex64::from_polar(1.0, 2.0 * PI * x * (i + 2) as f64);
        } else {
            e *= step;
        }
    }
    acc
}
