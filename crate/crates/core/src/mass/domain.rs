//! Quadrature on the standard fundamental domain {|x| <= 1/2, |z| >= 1}, truncated at y_max.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::field::FieldEvaluator;
use crate::eigen::HeckeEigenform;
use crate::error::{Error, Result};
use crate::numeric::{gauss_legendre, par_sum};
use crate::special::arith::tau;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum QuadratureRule {
    /// periodic trapezoid in x times graded Gauss panels in y above y = 1, Gauss × Gauss on the arc cells
    TrapezoidGauss,
}

/// One horizontal line of nodes: all share `y`; weights are for dx dy / y².
#[derive(Debug, Clone)]
pub struct Row {
    pub y: f64,
    pub xs: Vec<f64>,
    pub w: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct FundamentalDomainGrid {
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
    pub rule: QuadratureRule,
    pub rows: Vec<Row>,
}

/// Panel width cap above y = 1; resolves e^{-8πy} (the |F|⁴ cusp decay) with room to spare.
pub const PANEL_WIDTH: f64 = 0.2;

/// Graded panels covering [a, b]: width min(y/2, cap).
pub fn y_panels(a: f64, b: f64, cap: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    let mut lo = a;
    while lo < b {
        let hi = (lo + (0.5 * lo).min(cap)).min(b);
        let hi = if b - hi < 1e-3 * cap { b } else { hi };
        out.push((lo, hi));
        lo = hi;
    }
    out
}

/// Gauss nodes and weights mapped to [a, b].
pub fn gauss_on(a: f64, b: f64, nodes: &(Vec<f64>, Vec<f64>)) -> Vec<(f64, f64)> {
    let (h, m) = (0.5 * (b - a), 0.5 * (b + a));
    nodes.0.iter().zip(&nodes.1).map(|(t, w)| (m + h * t, h * w)).collect()
}

/// Trapezoid nodes on the unit period.
pub fn periodic_nodes(nx: usize) -> (Vec<f64>, Vec<f64>) {
    let xs = (0..nx).map(|j| -0.5 + (j as f64 + 0.5) / nx as f64).collect();
    (xs, vec![1.0 / nx as f64; nx])
}

impl FundamentalDomainGrid {
    pub fn new(y_max: f64, nx: usize, ny: usize) -> Result<Self> {
        if y_max <= 1.0 || nx < 2 || ny < 2 {
            return Err(Error::Precondition("grid needs y_max > 1 and nx, ny >= 2".into()));
        }
        let gl = gauss_legendre(ny);
        let (xs, wx) = periodic_nodes(nx);
        let mut rows = Vec::new();
        for (a, b) in y_panels(1.0, y_max, PANEL_WIDTH) {
            for (y, wy) in gauss_on(a, b, &gl) {
                rows.push(Row { y, xs: xs.clone(), w: wx.iter().map(|w| w * wy / (y * y)).collect() });
            }
        }
        // arc cells: x-outer so the boundary y = sqrt(1 - x²) stays smooth
        let glx = gauss_legendre(nx.max(ny));
        for (a, b) in [(-0.5, 0.0), (0.0, 0.5)] {
            for (x, wx) in gauss_on(a, b, &glx) {
                let lo = (1.0 - x * x).sqrt();
                for (y, wy) in gauss_on(lo, 1.0, &gl) {
                    rows.push(Row { y, xs: vec![x], w: vec![wx * wy / (y * y)] });
                }
            }
        }
        Ok(FundamentalDomainGrid { y_max, nx, ny, rule: QuadratureRule::TrapezoidGauss, rows })
    }

    /// Default truncation height 2k/(4π) + 10√k.
    pub fn default_y_max(k: u32) -> f64 {
        2.0 * k as f64 / (4.0 * PI) + 10.0 * (k as f64).sqrt()
    }

    /// Grid sized for weight k: x resolution at least four times the Fourier length at the arc.
    pub fn for_form(f: &HeckeEigenform) -> Self {
        let n = FieldEvaluator::new(f).terms_needed(0.75f64.sqrt());
        Self::new(Self::default_y_max(f.weight), (4 * n).max(32), 20).expect("valid defaults")
    }

    pub fn refined(&self) -> Self {
        Self::new(self.y_max, 2 * self.nx, self.ny + self.ny / 2).expect("valid refinement")
    }

    pub fn node_count(&self) -> usize {
        self.rows.iter().map(|r| r.xs.len()).sum()
    }

    /// ∫ g dμ over the truncated domain.
    pub fn integrate(&self, g: impl Fn(Complex64) -> f64 + Sync) -> f64 {
        par_sum(self.rows.len(), |i| {
            let r = &self.rows[i];
            r.xs.iter().zip(&r.w).map(|(&x, &w)| w * g(Complex64::new(x, r.y))).sum()
        })
    }

    /// ∫ |F|^p dμ, with the Fourier coefficients shared along each row.
    pub fn integrate_field_power(&self, ev: &FieldEvaluator, p: f64) -> Result<f64> {
        let n = ev.terms_needed(self.rows.iter().map(|r| r.y).fold(f64::INFINITY, f64::min));
        if ev.f.table_len() <= n {
            return Err(Error::InsufficientTerms { required: n, given: ev.f.table_len() - 1 });
        }
        Ok(par_sum(self.rows.len(), |i| {
            let r = &self.rows[i];
            let c = ev.coefficients(r.y, n).expect("table checked");
            r.xs.iter()
                .zip(&r.w)
                .map(|(&x, &w)| w * super::field::series_at(&c, x).norm().powf(p))
                .sum()
        }))
    }
}

/// Σ_n τ(n)·|n-th term| at height y, which dominates |F(x + iy)| for every x.
pub fn field_majorant(ev: &FieldEvaluator, y: f64) -> f64 {
    let n = ev.terms_needed(y);
    (1..=n).map(|m| tau(m as u64) as f64 * ev.ln_term(m, y).exp()).sum()
}

/// Bound on ∫_{y ≥ y_max} |F|^p dμ, valid once y_max is past the peak of the majorant.
pub fn cusp_tail_bound(ev: &FieldEvaluator, y_max: f64, p: f64) -> f64 {
    field_majorant(ev, y_max).powf(p) / y_max
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct NormResult {
    pub p: f64,
    /// (∫ |F|^p (3/π) dμ)^{1/p} with the probability normalisation of F
    pub value: f64,
    /// ∫ |F|^p dμ for F of unit norm in dμ
    pub raw_integral: f64,
    pub est_error: f64,
    pub tail: f64,
    pub nodes: usize,
}

/// L^p norm of √(π/3)·F against (3/π)dμ, so that p = 2 gives 1. The error estimate is the change
/// under one grid refinement plus the cusp tail.
pub fn lp_norm(f: &HeckeEigenform, p: f64, grid: &FundamentalDomainGrid) -> Result<NormResult> {
    if p < 2.0 {
        return Err(Error::Precondition(format!("p = {p} < 2")));
    }
    let ev = FieldEvaluator::new(f);
    let coarse = grid.integrate_field_power(&ev, p)?;
    let fine_grid = grid.refined();
    let fine = fine_grid.integrate_field_power(&ev, p)?;
    let tail = cusp_tail_bound(&ev, grid.y_max, p);
    let scale = (PI / 3.0).powf(p / 2.0) * 3.0 / PI;
    let raw = fine;
    let moment = scale * raw;
    let est = scale * ((fine - coarse).abs() + tail);
    if est > 1e-3 * moment {
        return Err(Error::Quadrature(format!(
            "L^{p} refinement moved the integral by {:.3e} relative",
            est / moment
        )));
    }
    let value = moment.powf(1.0 / p);
    Ok(NormResult {
        p,
        value,
        raw_integral: raw,
        est_error: value * est / (p * moment),
        tail,
        nodes: fine_grid.node_count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_area() {
        for y_max in [3.0, 36.6, 80.0] {
            let g = FundamentalDomainGrid::new(y_max, 16, 12).unwrap();
            let area = 3.0 / PI * g.integrate(|_| 1.0);
            assert!((area - (1.0 - 3.0 / PI / y_max)).abs() < 1e-12, "{y_max}: {area}");
        }
    }

    #[test]
    fn panels_cover_interval() {
        let p = y_panels(0.9, 37.3, 0.2);
        assert_eq!(p[0].0, 0.9);
        assert_eq!(p.last().unwrap().1, 37.3);
        assert!(p.windows(2).all(|w| w[0].1 == w[1].0));
    }

    #[test]
    fn rejects_bad_grid() {
        assert!(FundamentalDomainGrid::new(0.5, 16, 12).is_err());
    }
}
