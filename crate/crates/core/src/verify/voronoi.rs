//! The GL(3) Voronoi formula for the symmetric square lift, with the kernel Ψ± evaluated as a
//! Mellin-Barnes integral on a vertical line and ψ̃ obtained by FFT.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde_json::json;
use std::f64::consts::PI;

use super::report::{CheckReport, Side, Tolerance};
use crate::eigen::HeckeEigenform;
use crate::error::{Error, Result};
use crate::numeric::omega2;
use rayon::prelude::*;
use crate::special::arith::{divisor_bound_constant, divisors, gcd, mobius, mod_inverse, tau, ModTable};
use crate::special::{bessel_j, log_gamma};

/// Samples of ψ over its support in v = ln y.
const SAMPLES: usize = 4096;
/// FFT length; fixes the t-step 2π/(FFT_LEN Δv).
const FFT_LEN: usize = 1 << 20;
/// Fraction of the peak below which ψ̃ is treated as zero.
const PSI_CUT: f64 = 1e-17;
const NOISE_MARGIN: f64 = 100.0;
/// Abscissae for the dual tail bound, clear of the poles of the Γ factors in G±.
const FAR_SIGMAS: [f64; 5] = [2.5, 4.5, 6.5, 8.5, 10.5];
const DIVISOR_EPS: f64 = 0.25;
/// Certified dual tail, relative to |LHS|.
const DUAL_TAIL_REL: f64 = 1e-6;
const MAX_DUAL: usize = 2_000_000;
const DUAL_CHUNK: usize = 64;

/// Test function ψ(y) = Ω₂(y/N) J_{2κ-1}(4π√(yr)/c).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct TestFunction {
    pub kappa: u32,
    pub n: f64,
    pub c: u64,
    pub r: u64,
}

impl TestFunction {
    pub fn eval(&self, y: f64) -> f64 {
        let w = omega2(y / self.n);
        if w == 0.0 {
            return 0.0;
        }
        w * bessel_j(2 * self.kappa - 1, 4.0 * PI * (y * self.r as f64).sqrt() / self.c as f64)
    }

    /// (t_j, ψ̃(-σ - i t_j)) on a symmetric grid, truncated where |ψ̃| < PSI_CUT·peak.
    pub fn mellin_on_line(&self, sigma: f64) -> (f64, Vec<f64>, Vec<Complex64>) {
        let v0 = self.n.ln();
        let dv = std::f64::consts::LN_2 / SAMPLES as f64;
        let mut buf = vec![Complex64::new(0.0, 0.0); FFT_LEN];
        for (j, b) in buf.iter_mut().enumerate().take(SAMPLES + 1) {
            let v = v0 + j as f64 * dv;
            *b = Complex64::new(self.eval(v.exp()) * (-sigma * v).exp() * dv, 0.0);
        }
        FftPlanner::new().plan_fft_forward(FFT_LEN).process(&mut buf);
        let dt = 2.0 * PI / (FFT_LEN as f64 * dv);
        // ψ̃(-σ-it) = e^{-i t v0} Σ_j g_j e^{-i t j Δv}; bin m holds t = m dt, bin FFT_LEN - m holds -m dt
        let at = |m: i64| -> Complex64 {
            let idx = if m >= 0 { m as usize } else { (FFT_LEN as i64 + m) as usize };
            let t = m as f64 * dt;
            buf[idx] * Complex64::from_polar(1.0, -t * v0)
        };
        let half = (FFT_LEN / 2 - 1) as i64;
        let peak = (0..half).map(|m| at(m).norm()).fold(0.0, f64::max);
        // rounding noise of the transform sits near the band edge; cut well above it
        let mut edge: Vec<f64> = (half * 3 / 4..half).map(|m| at(m).norm()).collect();
        edge.sort_by(f64::total_cmp);
        let cut = (PSI_CUT * peak).max(NOISE_MARGIN * edge[edge.len() * 9 / 10]);
        let mut m_max = half;
        while m_max > 0 && at(m_max).norm() < cut && at(-m_max).norm() < cut {
            m_max -= 1;
        }
        let m_max = (m_max + 16).min(half);
        let ts = (-m_max..=m_max).map(|m| m as f64 * dt).collect();
        let vals = (-m_max..=m_max).map(at).collect();
        (dt, ts, vals)
    }
}

/// G±(s) for the symmetric square of a weight-k form.
pub fn g_factor(k: u32, s: Complex64, sign: i32) -> Result<Complex64> {
    let k = k as f64;
    let ratio = log_gamma((k + 1.0 + s) / 2.0)? + log_gamma((k + s) / 2.0)?
        - log_gamma((k - s) / 2.0)?
        - log_gamma((k - 1.0 - s) / 2.0)?;
    let even = (log_gamma((2.0 + s) / 2.0)? - log_gamma((1.0 - s) / 2.0)?).exp();
    let odd = (log_gamma((1.0 + s) / 2.0)? - log_gamma(-s / 2.0)?).exp();
    let i = Complex64::new(0.0, 1.0);
    Ok(ratio.exp() * (even - sign as f64 * i * odd))
}

/// Ψ±(x) = (1/2π^{3/2}) ∫_{(σ)} (π³x)^{-s} G±(s) ψ̃(-s) ds/2πi for one test function.
#[derive(Debug, Clone)]
pub struct PsiKernel {
    pub k: u32,
    pub psi: TestFunction,
    pub sigma: f64,
    pub dt: f64,
    t0: f64,
    /// dt/(2π) G±(σ+it) ψ̃(-σ-it)/(2π^{3/2}) on the grid, for sign + and -
    plus: Vec<Complex64>,
    minus: Vec<Complex64>,
}

impl PsiKernel {
    /// `sigma` must lie in (-1, ∞), right of every pole of G±.
    pub fn new(k: u32, psi: TestFunction, sigma: f64) -> Result<Self> {
        if sigma <= -1.0 {
            return Err(Error::Contour(format!("abscissa {sigma} crosses the pole of G at s = -1")));
        }
        let (dt, ts, vals) = psi.mellin_on_line(sigma);
        let scale = dt / (2.0 * PI) / (2.0 * PI.powf(1.5));
        let mut plus = Vec::with_capacity(ts.len());
        let mut minus = Vec::with_capacity(ts.len());
        for (&t, &v) in ts.iter().zip(&vals) {
            let s = Complex64::new(sigma, t);
            plus.push(g_factor(k, s, 1)? * v * scale);
            minus.push(g_factor(k, s, -1)? * v * scale);
        }
        Ok(PsiKernel { k, psi, sigma, dt, t0: ts[0], plus, minus })
    }

    pub fn nodes(&self) -> usize {
        self.plus.len()
    }

    /// (Ψ+(x), Ψ-(x)).
    pub fn eval(&self, x: f64) -> (Complex64, Complex64) {
        let lx = (PI.powi(3) * x).ln();
        let scale = (-self.sigma * lx).exp();
        let step = Complex64::from_polar(1.0, -self.dt * lx);
        let mut e = Complex64::from_polar(1.0, -self.t0 * lx);
        let (mut p, mut m) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
        for (j, (a, b)) in self.plus.iter().zip(&self.minus).enumerate() {
            p += a * e;
            m += b * e;
            if j % 256 == 255 {
                e = Complex64::from_polar(1.0, -(self.t0 + (j + 1) as f64 * self.dt) * lx);
            } else {
                e *= step;
            }
        }
        (p * scale, m * scale)
    }

    /// Σ_t |kernel| (π³x)^{-σ}: bound on |Ψ±(x)| from this line.
    pub fn line_bound(&self, x: f64) -> f64 {
        let s: f64 = self.plus.iter().zip(&self.minus).map(|(a, b)| a.norm().max(b.norm())).sum();
        s * (-self.sigma * (PI.powi(3) * x).ln()).exp()
    }
}

/// Ψ±(x) for ψ = Ω₂(n/N) J_{2κ-1}(4π√(nr)/c); `sign` selects Ψ+ or Ψ-.
pub fn voronoi_psi_kernel(k: u32, kappa: u32, n: f64, c: u64, r: u64, x: f64, sign: i32, sigma: f64) -> Result<Complex64> {
    let ker = PsiKernel::new(k, TestFunction { kappa, n, c, r }, sigma)?;
    let (p, m) = ker.eval(x);
    Ok(if sign >= 0 { p } else { m })
}

/// The dual length scale X = N^{1/2} r^{3/2}/c³ beyond which Ψ± decays rapidly.
pub fn lemma32_scale(n: f64, r: u64, c: u64) -> f64 {
    n.sqrt() * (r as f64).powf(1.5) / (c as f64).powi(3)
}

/// A(m, n) from the table of A(·, 1).
fn sym2_a(table: &[f64], m: usize, n: usize) -> f64 {
    let g = gcd(m as i64, n as i64) as usize;
    divisors(g as u64)
        .into_iter()
        .map(|d| mobius(d) as f64 * table[m / d as usize] * table[n / d as usize])
        .sum()
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct VoronoiSides {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub dual_terms: usize,
    /// dual length in n₂
    pub n2_max: usize,
    /// bound on the omitted n₂ > n2_max terms
    pub tail_bound: f64,
    pub kernel_nodes: usize,
}

/// Σ_n A(m,n) e(n d̄/c) ψ(n), summed in the given order.
pub fn voronoi_lhs(table: &[f64], m: usize, c: u64, d: i64, psi: &TestFunction, reversed: bool) -> Result<Complex64> {
    let dbar = mod_inverse(d, c as i64).ok_or_else(|| Error::Precondition("gcd(d, c) must be 1".into()))?;
    let tc = ModTable::new(c as i64);
    let lo = psi.n.floor() as usize + 1;
    let hi = (2.0 * psi.n).ceil() as usize;
    if hi >= table.len() || m >= table.len() {
        return Err(Error::ExtendTable { prime: hi as u64, bound: table.len() as u64 - 1 });
    }
    let term = |n: usize| {
        let (a, b) = tc.e(n as i64 * dbar);
        Complex64::new(a, b) * (sym2_a(table, m, n) * psi.eval(n as f64))
    };
    Ok(if reversed { (lo..hi).rev().map(term).sum() } else { (lo..hi).map(term).sum() })
}

/// Both sides of the Voronoi formula with m = r:
/// c Σ_± Σ_{n₁ | c} Σ_{n₂} A(n₂, n₁)/(n₁n₂) S(md, ±n₂, c/n₁) Ψ±(n₂n₁²/(c³m)).
pub fn voronoi_sides(f: &HeckeEigenform, c: u64, d: i64, n: f64, r: u64, sigma: f64) -> Result<VoronoiSides> {
    let k = f.weight;
    let m = r as usize;
    let psi = TestFunction { kappa: k, n, c, r };
    let ker = PsiKernel::new(k, psi, sigma)?;
    let n1s: Vec<u64> = divisors(c);
    let big_x = |n2: usize, n1: u64| n2 as f64 * (n1 * n1) as f64 / ((c * c * c) as f64 * m as f64);
    let lhs_table = f.sym2_table((2 * n as usize + 2).max(m * c as usize))?;
    let lhs = voronoi_lhs(&lhs_table, m, c, d, &psi, false)?;
    // |A(n₂,n₁)| <= τ(n₁)²τ(n₂)² with τ(n₂) <= C_ε n₂^ε, |S| <= c/n₁ and |Ψ±(x)| <= C_σ x^{-σ}
    // from each shifted line; Σ_{n₂>M} n₂^{2ε-1-σ} <= M^{2ε-σ}/(σ - 2ε)
    let c_eps = divisor_bound_constant(DIVISOR_EPS).powi(2);
    let far = FAR_SIGMAS.iter().map(|&s| PsiKernel::new(k, psi, s)).collect::<Result<Vec<_>>>()?;
    let tail_at = |n2_max: usize| -> f64 {
        let mm = n2_max as f64;
        far.iter()
            .map(|kf| {
                n1s.iter()
                    .map(|&n1| {
                        let t1 = (tau(n1) * tau(n1)) as f64 / n1 as f64;
                        c as f64 * (c / n1) as f64 * t1 * c_eps * kf.line_bound(big_x(n2_max, n1))
                            * mm.powf(2.0 * DIVISOR_EPS)
                            / (kf.sigma - 2.0 * DIVISOR_EPS)
                    })
                    .sum::<f64>()
            })
            .fold(f64::INFINITY, f64::min)
    };
    let target = DUAL_TAIL_REL * lhs.norm().max(f64::MIN_POSITIVE);
    let mut n2_max = ((lemma32_scale(n, r, c) * (c * c * c) as f64 * m as f64).ceil() as usize).max(50);
    while tail_at(n2_max) > target {
        n2_max = n2_max * 5 / 4;
        if n2_max > MAX_DUAL {
            return Err(Error::InsufficientTerms { required: n2_max, given: MAX_DUAL });
        }
    }
    let tail = tail_at(n2_max);
    let table = f.sym2_table(n2_max.max(m * c as usize))?;
    let mut rhs = Complex64::new(0.0, 0.0);
    for &n1 in &n1s {
        let tq = ModTable::new((c / n1) as i64);
        let chunks: Vec<Complex64> = (0..n2_max.div_ceil(DUAL_CHUNK))
            .into_par_iter()
            .map(|j| {
                let mut acc = Complex64::new(0.0, 0.0);
                for n2 in j * DUAL_CHUNK + 1..=((j + 1) * DUAL_CHUNK).min(n2_max) {
                    let a = sym2_a(&table, n2, n1 as usize);
                    if a == 0.0 {
                        continue;
                    }
                    let (pp, pm) = ker.eval(big_x(n2, n1));
                    let (sp, _) = tq.kloosterman(m as i64 * d, n2 as i64);
                    let (sm, _) = tq.kloosterman(m as i64 * d, -(n2 as i64));
                    acc += (pp * sp + pm * sm) * (a / (n1 * n2 as u64) as f64);
                }
                acc
            })
            .collect();
        rhs += chunks.iter().sum::<Complex64>();
    }
    rhs *= c as f64;
    let terms = n1s.len() * n2_max;
    Ok(VoronoiSides { lhs, rhs, dual_terms: terms, n2_max, tail_bound: tail, kernel_nodes: ker.nodes() })
}

/// The Voronoi identity as a report.
pub fn voronoi_check(f: &HeckeEigenform, c: u64, d: i64, n: f64, r: u64, tol: Tolerance) -> Result<CheckReport> {
    let sides = voronoi_sides(f, c, d, n, r, -0.5)?;
    Ok(CheckReport::new(
        "voronoi",
        json!({"k": f.weight, "c": c, "d": d, "N": n, "r": r}),
        Side::Complex(sides.lhs),
        Side::Complex(sides.rhs),
        json!({"n2_max": sides.n2_max, "dual_terms": sides.dual_terms, "dual_tail_bound": sides.tail_bound,
               "kernel_nodes": sides.kernel_nodes, "abscissa": -0.5}),
        tol,
    ))
}
