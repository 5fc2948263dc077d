//! Central values L(1/2, g) and L(1/2, sym² f × g), and the mean value 𝓜_f(r).

use std::f64::consts::PI;

use rayon::prelude::*;

use super::cutoff::{root_number, CutoffW, GammaFactorSpec, DEFAULT_A};
use crate::eigen::HeckeEigenform;
use crate::error::{Error, Result};
use crate::numeric::ZETA2;
use crate::special::arith::{divisors, gcd, mobius, ModTable};
use crate::special::{bessel_j, incomplete_gamma_q};

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CentralValue {
    pub value: f64,
    /// the functional equation has sign -1 and the value vanishes identically
    pub odd_sign: bool,
    pub truncation: f64,
    pub tail_bound: f64,
    pub terms: usize,
}

impl CentralValue {
    fn odd() -> Self {
        CentralValue { value: 0.0, odd_sign: true, truncation: 0.0, tail_bound: 0.0, terms: 0 }
    }
}

/// 2 Σ_{n <= N} λ_g(n) n^{-1/2} Q(κ, 2πn) when (-1)^κ = 1.
pub fn l_half_g_truncated(g: &HeckeEigenform, n_terms: usize) -> Result<f64> {
    let kappa = (g.weight / 2) as f64;
    let mut s = 0.0;
    for n in (1..=n_terms as u64).rev() {
        s += g.lambda_extended(n)? / (n as f64).sqrt() * incomplete_gamma_q(kappa, 2.0 * PI * n as f64);
    }
    Ok(2.0 * s)
}

/// L(1/2, g) for g of weight 2κ, from the degree-2 approximate functional equation with
/// gamma factor (2π)^{-s}Γ(s + κ - 1/2).
pub fn l_half_g(g: &HeckeEigenform) -> Result<CentralValue> {
    let kappa = g.weight / 2;
    if kappa % 2 == 1 {
        return Ok(CentralValue::odd());
    }
    let a = kappa as f64;
    // Q(κ, 2πn) n^{3/2} < 1e-22 past n; tail <= Σ τ(n) n^{-1/2} Q <= ζ(2)² · 1e-22
    let mut n = 1usize;
    while incomplete_gamma_q(a, 2.0 * PI * n as f64) * (n as f64).powf(1.5) > 1e-22 {
        n += 1;
    }
    Ok(CentralValue {
        value: l_half_g_truncated(g, n)?,
        odd_sign: false,
        truncation: n as f64,
        tail_bound: 2.0 * ZETA2 * ZETA2 * 1e-22,
        terms: n,
    })
}

/// Default truncation constant: Σ over n m² <= C_W k².
pub const DEFAULT_C_W: f64 = 20.0;

/// Shared data for L(1/2, sym² f × g) over g ∈ B_{2κ}: the cutoff W tabulated on integers
/// up to the truncation point and the coefficients A(n, 1).
#[derive(Debug, Clone)]
pub struct SymSquareTwist<'a> {
    pub f: &'a HeckeEigenform,
    pub kappa: u32,
    pub w: CutoffW,
    pub x_cut: usize,
    pub tail_bound: f64,
    w_table: Vec<f64>,
    a_n1: Vec<f64>,
}

impl<'a> SymSquareTwist<'a> {
    pub fn new(f: &'a HeckeEigenform, kappa: u32, c_w: f64) -> Result<Self> {
        if c_w <= 0.0 {
            return Err(Error::Precondition("C_W must be positive".into()));
        }
        let w = CutoffW::new(GammaFactorSpec::new(f.weight, kappa), DEFAULT_A)?;
        let x_cut = (c_w * (f.weight as f64).powi(2)) as usize;
        let w_table: Vec<f64> = (0..=x_cut)
            .into_par_iter()
            .map(|x| if x == 0 { 0.0 } else { w.eval(x as f64) })
            .collect();
        let a_n1 = f.sym2_table(x_cut)?;
        let tail_bound = w.tail_certificate(x_cut as f64);
        Ok(SymSquareTwist { f, kappa, w, x_cut, tail_bound, w_table, a_n1 })
    }

    /// Tables of λ_f and λ_g this evaluation needs.
    pub fn required_length(k: u32, c_w: f64) -> usize {
        (c_w * (k as f64).powi(2)) as usize
    }

    pub fn root_number(&self) -> i32 {
        root_number(self.f.weight, self.kappa)
    }

    /// A(m, n) from the tabulated A(·, 1).
    pub fn a(&self, m: usize, n: usize) -> f64 {
        let g = gcd(m as i64, n as i64) as usize;
        if g == 1 {
            return self.a_n1[m] * self.a_n1[n];
        }
        divisors(g as u64)
            .into_iter()
            .map(|d| {
                let d = d as usize;
                mobius(d as u64) as f64 * self.a_n1[m / d] * self.a_n1[n / d]
            })
            .sum()
    }

    pub fn w_at(&self, x: usize) -> f64 {
        self.w_table[x]
    }

    fn check_g(&self, g: &HeckeEigenform) -> Result<()> {
        if g.weight != 2 * self.kappa {
            return Err(Error::Precondition(format!(
                "g has weight {}, expected {}",
                g.weight,
                2 * self.kappa
            )));
        }
        if g.table_len() <= self.x_cut {
            return Err(Error::ExtendTable { prime: g.prime_bound() + 1, bound: g.prime_bound() });
        }
        Ok(())
    }

    /// 2 Σ_{n m² <= X} λ_g(n) A(m, n) W(n m²) / (n^{1/2} m), summed m-outer.
    pub fn value(&self, g: &HeckeEigenform) -> Result<CentralValue> {
        self.check_g(g)?;
        if self.root_number() == -1 {
            return Ok(CentralValue::odd());
        }
        let lg = g.lambda_table();
        let mut total = 0.0;
        let mut terms = 0;
        let mut m = 1;
        while m * m <= self.x_cut {
            let mut inner = 0.0;
            for n in 1..=self.x_cut / (m * m) {
                inner += lg[n] * self.a(m, n) * self.w_table[n * m * m] / (n as f64).sqrt();
                terms += 1;
            }
            total += inner / m as f64;
            m += 1;
        }
        Ok(CentralValue {
            value: 2.0 * total,
            odd_sign: false,
            truncation: self.x_cut as f64,
            tail_bound: 2.0 * self.tail_bound,
            terms,
        })
    }

    /// The same sum taken n-outer (for order-independence checks).
    pub fn value_n_outer(&self, g: &HeckeEigenform) -> Result<f64> {
        self.check_g(g)?;
        if self.root_number() == -1 {
            return Ok(0.0);
        }
        let lg = g.lambda_table();
        let mut total = 0.0;
        for n in 1..=self.x_cut {
            let mut inner = 0.0;
            let mut m = 1;
            while n * m * m <= self.x_cut {
                inner += self.a(m, n) * self.w_table[n * m * m] / m as f64;
                m += 1;
            }
            total += lg[n] * inner / (n as f64).sqrt();
        }
        Ok(2.0 * total)
    }

    /// 𝓜^{(1)}_f(r) = (2/ζ(2)) Σ_m A(m, r) W(r m²) / (r^{1/2} m).
    pub fn mean_value_diagonal(&self, r: usize) -> f64 {
        let mut s = 0.0;
        let mut m = 1;
        while r * m * m <= self.x_cut {
            s += self.a(m, r) * self.w_table[r * m * m] / m as f64;
            m += 1;
        }
        2.0 / ZETA2 * s / (r as f64).sqrt()
    }

    /// 𝓜^{(2)}_f(r) through the Petersson formula for weight 2κ:
    /// (4π(-1)^κ/ζ(2)) Σ A(m,n) W(nm²)/(n^{1/2} m) Σ_c S(n, r, c)/c J_{2κ-1}(4π√(nr)/c).
    pub fn mean_value_offdiagonal_kloosterman(&self, r: usize) -> Result<f64> {
        if self.root_number() == -1 {
            return Ok(0.0);
        }
        let nu = 2 * self.kappa - 1;
        let ln_fact_nu = crate::special::ln_gamma(nu as f64 + 1.0);
        let c_max_for = |n: usize| -> usize {
            // J_ν(x) <= (x/2)^ν/ν!, |S| <= c: Σ_{c>C} (2π√(nr)/c)^ν/ν! <= (2π√(nr))^ν C^{1-ν}/((ν-1) ν!)
            let z = 2.0 * PI * ((n * r) as f64).sqrt();
            let lnc = (nu as f64 * z.ln() - ln_fact_nu - (nu as f64 - 1.0).ln() - (1e-20f64).ln())
                / (nu as f64 - 1.0);
            lnc.exp().ceil().max(1.0) as usize
        };
        let c_top = c_max_for(self.x_cut);
        let tables: Vec<ModTable> = (1..=c_top as i64).map(ModTable::new).collect();
        let kl: Vec<f64> = (0..=self.x_cut)
            .into_par_iter()
            .map(|n| {
                if n == 0 {
                    return 0.0;
                }
                let mut s = 0.0;
                for c in 1..=c_max_for(n) {
                    let sk = tables[c - 1].kloosterman(n as i64, r as i64).0;
                    let x = 4.0 * PI * ((n * r) as f64).sqrt() / c as f64;
                    s += sk / c as f64 * bessel_j(nu, x);
                }
                s
            })
            .collect();
        let mut total = 0.0;
        let mut m = 1;
        while m * m <= self.x_cut {
            let mut inner = 0.0;
            for n in 1..=self.x_cut / (m * m) {
                inner += self.a(m, n) * self.w_table[n * m * m] / (n as f64).sqrt() * kl[n];
            }
            total += inner / m as f64;
            m += 1;
        }
        let sign = if self.kappa % 2 == 0 { 1.0 } else { -1.0 };
        Ok(4.0 * PI * sign / ZETA2 * total)
    }
}

/// 𝓜_f(r) and its diagonal/off-diagonal split.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct MeanValue {
    pub k: u32,
    pub kappa: u32,
    pub r: usize,
    pub m: f64,
    pub m_diag: f64,
    pub m_offdiag: f64,
    pub odd_sign: bool,
}

/// 𝓜_f(r) = (12/(2κ-1)) Σ_{g ∈ B_{2κ}} λ_g(r) L(1/2, sym² f × g)/L(1, sym² g).
pub fn mean_value_m(twist: &SymSquareTwist, basis: &[HeckeEigenform], r: usize) -> Result<MeanValue> {
    let kappa = twist.kappa;
    let mut m = 0.0;
    for g in basis {
        let v = twist.value(g)?;
        m += g.lambda_extended(r as u64)? * v.value / g.sym2_l1;
    }
    m *= 12.0 / (2.0 * kappa as f64 - 1.0);
    let odd = twist.root_number() == -1;
    let m_diag = if odd { 0.0 } else { twist.mean_value_diagonal(r) };
    Ok(MeanValue {
        k: twist.f.weight,
        kappa,
        r,
        m,
        m_diag,
        m_offdiag: m - m_diag,
        odd_sign: odd,
    })
}

/// L(1/2, sym² f × g) with the default truncation C_W = 20.
pub fn l_half_sym2f_g(f: &HeckeEigenform, g: &HeckeEigenform) -> Result<CentralValue> {
    SymSquareTwist::new(f, g.weight / 2, DEFAULT_C_W)?.value(g)
}
