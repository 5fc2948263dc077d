//! Mellin-Barnes kernels (1/2πi) ∫_{(c)} e^{φ(s)} x^{-s} ds/s evaluated by the trapezoid
//! rule on a vertical line.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_NODES: usize = 400_000;

#[derive(Debug, Clone)]
pub struct ContourKernel {
    pub abscissa: f64,
    pub step: f64,
    /// residue at s = 0 added when the line lies left of the origin
    pub residue: Complex64,
    /// (s_j, h/(2π) e^{φ(s_j)}/s_j)
    nodes: Vec<(Complex64, Complex64)>,
    pub t_max: f64,
    /// conjugate-symmetric integrand: only t >= 0 is stored
    symmetric: bool,
}

impl ContourKernel {
    /// `phi` is the logarithm of the integrand apart from x^{-s}/s. When `symmetric`,
    /// φ(s̄) = conj φ(s) is assumed and the kernel is real on x > 0.
    pub fn new<F>(phi: F, abscissa: f64, step: f64, rel_cut: f64, symmetric: bool) -> Result<Self>
    where
        F: Fn(Complex64) -> Result<Complex64>,
    {
        if abscissa == 0.0 {
            return Err(Error::Contour("line through the pole at s = 0".into()));
        }
        let weight = |t: f64| -> Result<(Complex64, Complex64)> {
            let s = Complex64::new(abscissa, t);
            let w = phi(s)?.exp() / s * (step / (2.0 * std::f64::consts::PI));
            Ok((s, w))
        };
        let mut nodes = vec![weight(0.0)?];
        let mut peak = nodes[0].1.norm();
        let signs: &[f64] = if symmetric { &[1.0] } else { &[1.0, -1.0] };
        let mut t_max: f64 = 0.0;
        for &sg in signs {
            let mut j = 1usize;
            let mut below = 0;
            loop {
                let t = sg * j as f64 * step;
                let (s, w) = weight(t)?;
                if !w.re.is_finite() || !w.im.is_finite() {
                    return Err(Error::Contour(format!("non-finite integrand at t = {t}")));
                }
                let m = w.norm();
                peak = peak.max(m);
                nodes.push((s, w));
                below = if m < rel_cut * peak { below + 1 } else { 0 };
                if below >= 8 {
                    break;
                }
                j += 1;
                if nodes.len() > MAX_NODES {
                    return Err(Error::Contour(format!(
                        "integrand still {m:e} (peak {peak:e}) at |t| = {}",
                        t.abs()
                    )));
                }
            }
            t_max = t_max.max(j as f64 * step);
        }
        if symmetric {
            for n in nodes.iter_mut().skip(1) {
                n.1 *= 2.0;
            }
        }
        let residue = if abscissa < 0.0 { phi(Complex64::new(0.0, 0.0))?.exp() } else { Complex64::new(0.0, 0.0) };
        Ok(ContourKernel { abscissa, step, residue, nodes, t_max, symmetric })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// (1/2πi) ∫ e^{φ(s)} x^{-s} ds/s.
    pub fn eval(&self, x: f64) -> Complex64 {
        self.eval_weighted(x, |_| Complex64::new(1.0, 0.0), true)
    }

    /// The real part of [`Self::eval`], exact for symmetric kernels.
    pub fn eval_real(&self, x: f64) -> f64 {
        self.eval(x).re
    }

    /// x d/dx of the kernel: -(1/2πi) ∫ e^{φ(s)} x^{-s} ds.
    pub fn eval_x_deriv(&self, x: f64) -> Complex64 {
        self.eval_weighted(x, |s| -s, false)
    }

    fn eval_weighted(&self, x: f64, g: impl Fn(Complex64) -> Complex64, residue: bool) -> Complex64 {
        let lx = x.ln();
        let scale = (-self.abscissa * lx).exp();
        let mut acc = Complex64::new(0.0, 0.0);
        for &(s, w) in &self.nodes {
            let ph = -s.im * lx;
            acc += w * g(s) * Complex64::new(ph.cos(), ph.sin());
        }
        let mut v = acc * scale;
        if self.symmetric {
            v = Complex64::new(v.re, 0.0);
        }
        if residue {
            v += self.residue;
        }
        v
    }

    /// (1/2π) ∫ |e^{φ(s)}/s| dt: |kernel(x)| <= x^{-c} times this (plus any residue).
    pub fn abs_integral(&self) -> f64 {
        self.nodes.iter().map(|(_, w)| w.norm()).sum()
    }
}

/// ln of (1/2π) ∫ |e^{φ(σ+it)}| / |σ+it| dt, computed in log space.
pub fn ln_abs_line_integral<F>(phi: F, sigma: f64, step: f64, symmetric: bool) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let lw = |t: f64| -> Result<f64> {
        let s = Complex64::new(sigma, t);
        Ok(phi(s)?.re - s.norm().ln())
    };
    let mut vals = vec![lw(0.0)?];
    let signs: &[f64] = if symmetric { &[1.0] } else { &[1.0, -1.0] };
    for &sg in signs {
        let mut j = 1;
        let mut peak = vals[0];
        loop {
            let v = lw(sg * j as f64 * step)?;
            peak = peak.max(v);
            vals.push(if symmetric { v + std::f64::consts::LN_2 } else { v });
            if v < peak - 50.0 {
                break;
            }
            j += 1;
            if j > MAX_NODES {
                return Err(Error::Contour("line integral bound does not converge".into()));
            }
        }
    }
    let m = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let s: f64 = vals.iter().map(|v| (v - m).exp()).sum();
    Ok(m + (s * step / (2.0 * std::f64::consts::PI)).ln())
}

/// Upper bounds for a kernel via contour shifts: |V(x)| <= min_σ C_σ x^{-σ}.
#[derive(Debug, Clone)]
pub struct DecayBound {
    /// (σ, ln C_σ)
    pub table: Vec<(f64, f64)>,
}

impl DecayBound {
    pub fn new<F>(phi: F, sigmas: impl IntoIterator<Item = f64>, symmetric: bool) -> Result<Self>
    where
        F: Fn(Complex64) -> Result<Complex64>,
    {
        let mut table = Vec::new();
        for s in sigmas {
            // 2x safety on the trapezoid estimate of a positive integral
            table.push((s, ln_abs_line_integral(&phi, s, 0.05, symmetric)? + std::f64::consts::LN_2));
        }
        Ok(DecayBound { table })
    }

    /// ln of the bound at x, optionally weakened by x^{shift} (for tails like Σ_{n>x} V(n)).
    pub fn ln_bound(&self, x: f64, shift: f64) -> f64 {
        let lx = x.ln();
        self.table
            .iter()
            .filter(|(s, _)| *s > shift)
            .map(|(s, c)| c - (s - shift) * lx)
            .fold(f64::INFINITY, f64::min)
    }

    /// Smallest x (up to a factor 1.01) with bound below `eps`.
    pub fn cutoff(&self, eps: f64, shift: f64) -> f64 {
        let target = eps.ln();
        let mut x: f64 = 1.0;
        while self.ln_bound(x, shift) > target {
            x *= 1.01;
            if x > 1e15 {
                break;
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{incomplete_gamma_q, log_gamma};

    #[test]
    fn gamma_kernel_is_incomplete_gamma() {
        // (1/2πi) ∫ Γ(a+s)/Γ(a) z^{-s} ds/s = Q(a, z)
        let a = 12.0;
        let lg_a = log_gamma(Complex64::new(a, 0.0)).unwrap();
        let phi = |s: Complex64| Ok(log_gamma(s + a)? - lg_a);
        let right = ContourKernel::new(phi, 1.0, 0.05, 1e-20, true).unwrap();
        let left = ContourKernel::new(phi, -0.5, 0.05, 1e-20, true).unwrap();
        for z in [0.3, 2.0, 10.0, 30.0] {
            let q = incomplete_gamma_q(a, z);
            assert!((right.eval_real(z) - q).abs() < 1e-13, "{z}");
            assert!((left.eval_real(z) - q).abs() < 1e-13, "{z}");
        }
        // x d/dx Q(a, x) = -x^a e^{-x}/Γ(a)
        let z = 9.0;
        let want = -(a * f64::ln(z) - z - lg_a.re).exp();
        assert!((right.eval_x_deriv(z).re - want).abs() < 1e-13);
        let b = DecayBound::new(phi, (1..30).map(|s| s as f64), true).unwrap();
        for z in [20.0, 40.0, 60.0] {
            assert!(b.ln_bound(z, 0.0).exp() >= incomplete_gamma_q(a, z));
        }
    }
}
