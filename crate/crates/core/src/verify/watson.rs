//! The L⁴ norm three ways: fundamental-domain quadrature of |F|⁴, the spectral sum
//! Σ_g |⟨F², G⟩|² with quadrature inner products, and central L-values through Watson's formula.

use serde_json::json;
use std::f64::consts::PI;

use super::report::{CheckReport, Side, ToleranceTable};
use crate::eigen::HeckeEigenform;
use crate::error::{Error, Result};
use crate::lvalues::{l_half_g, SymSquareTwist};
use crate::mass::domain::{cusp_tail_bound, FundamentalDomainGrid};
use crate::mass::field::{series_at, FieldEvaluator};
use crate::numeric::par_sum;

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct WatsonTerm {
    pub g_index: usize,
    /// ⟨F², G⟩ by quadrature
    pub inner: f64,
    pub l_half_g: f64,
    pub l_half_sym2f_g: f64,
    pub sym2_l1_g: f64,
    /// π³/(2(2k-1)) L(1/2, g) L(1/2, sym² f × g)/(L(1, sym² f)² L(1, sym² g))
    pub watson_rhs: f64,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct WatsonL4 {
    pub k: u32,
    /// ∫ |F|⁴ dμ
    pub quadrature: f64,
    pub quadrature_error: f64,
    pub spectral: f64,
    pub lvalue: f64,
    pub terms: Vec<WatsonTerm>,
}

/// ∫ |F|⁴ dμ and each ⟨F², G⟩ on one grid.
fn quadratures(f: &HeckeEigenform, basis_2k: &[HeckeEigenform], grid: &FundamentalDomainGrid) -> Result<(f64, Vec<f64>)> {
    let ev = FieldEvaluator::new(f);
    let evs: Vec<FieldEvaluator> = basis_2k.iter().map(FieldEvaluator::new).collect();
    let y_lo = grid.rows.iter().map(|r| r.y).fold(f64::INFINITY, f64::min);
    let nf = ev.terms_needed(y_lo);
    let ng = evs.iter().map(|e| e.terms_needed(y_lo)).max().unwrap_or(1);
    ev.coefficients(y_lo, nf)?;
    for e in &evs {
        e.coefficients(y_lo, ng)?;
    }
    let row_f = |i: usize| ev.coefficients(grid.rows[i].y, nf).expect("length checked");
    let fourth = par_sum(grid.rows.len(), |i| {
        let r = &grid.rows[i];
        let cf = row_f(i);
        r.xs.iter().zip(&r.w).map(|(&x, &w)| w * series_at(&cf, x).norm_sqr().powi(2)).sum()
    });
    let inners = evs
        .iter()
        .map(|eg| {
            par_sum(grid.rows.len(), |i| {
                let r = &grid.rows[i];
                let cf = row_f(i);
                let cg = eg.coefficients(r.y, ng).expect("length checked");
                r.xs.iter()
                    .zip(&r.w)
                    .map(|(&x, &w)| {
                        let fz = series_at(&cf, x);
                        w * (fz * fz * series_at(&cg, x).conj()).re
                    })
                    .sum()
            })
        })
        .collect();
    Ok((fourth, inners))
}

/// Runs the three routes at weight k = f.weight with g over B_{2k}.
pub fn watson_l4(f: &HeckeEigenform, basis_2k: &[HeckeEigenform], c_w: f64) -> Result<WatsonL4> {
    let k = f.weight;
    if basis_2k.is_empty() || basis_2k.iter().any(|g| g.weight != 2 * k) {
        return Err(Error::Precondition(format!("need the eigenbasis of weight {}", 2 * k)));
    }
    let nf = FieldEvaluator::new(f).terms_needed(0.75f64.sqrt());
    let ng = basis_2k.iter().map(|g| FieldEvaluator::new(g).terms_needed(0.75f64.sqrt())).max().unwrap_or(1);
    let grid = FundamentalDomainGrid::new(FundamentalDomainGrid::default_y_max(k), (4 * (2 * nf + ng)).max(32), 20)?;
    let (q0, _) = quadratures(f, basis_2k, &grid)?;
    let (q1, i1) = quadratures(f, basis_2k, &grid.refined())?;
    let tail = cusp_tail_bound(&FieldEvaluator::new(f), grid.y_max, 4.0);
    let twist = SymSquareTwist::new(f, k, c_w)?;
    let lf = f.sym2_l1;
    let pref = PI.powi(3) / (2.0 * (2.0 * k as f64 - 1.0));
    let mut terms = Vec::with_capacity(basis_2k.len());
    for (j, g) in basis_2k.iter().enumerate() {
        let lg = l_half_g(g)?.value;
        let ls = twist.value(g)?.value;
        terms.push(WatsonTerm {
            g_index: g.index,
            inner: i1[j],
            l_half_g: lg,
            l_half_sym2f_g: ls,
            sym2_l1_g: g.sym2_l1,
            watson_rhs: pref * lg * ls / (lf * lf * g.sym2_l1),
        });
    }
    Ok(WatsonL4 {
        k,
        quadrature: q1,
        quadrature_error: (q1 - q0).abs() + tail,
        spectral: terms.iter().map(|t| t.inner * t.inner).sum(),
        lvalue: terms.iter().map(|t| t.watson_rhs).sum(),
        terms,
    })
}

/// The pairwise reports and one per-form Watson report per g.
pub fn watson_l4_check(f: &HeckeEigenform, basis_2k: &[HeckeEigenform], c_w: f64, tol: &ToleranceTable) -> Result<(WatsonL4, Vec<CheckReport>)> {
    let w = watson_l4(f, basis_2k, c_w)?;
    let k = w.k;
    let trunc = json!({"quadrature_error": w.quadrature_error, "c_w": c_w});
    let mut out = vec![
        CheckReport::new("watson_l4_quadrature_vs_spectral", json!({"k": k}), Side::Real(w.quadrature), Side::Real(w.spectral), trunc.clone(), tol.get("watson_l4_quadrature_vs_spectral")),
        CheckReport::new("watson_l4_spectral_vs_lvalue", json!({"k": k}), Side::Real(w.spectral), Side::Real(w.lvalue), trunc.clone(), tol.get("watson_l4_spectral_vs_lvalue")),
        CheckReport::new("watson_l4_quadrature_vs_lvalue", json!({"k": k}), Side::Real(w.quadrature), Side::Real(w.lvalue), trunc, tol.get("watson_l4_quadrature_vs_lvalue")),
    ];
    for t in &w.terms {
        out.push(CheckReport::new(
            "watson_per_form",
            json!({"k": k, "g_index": t.g_index}),
            Side::Real(t.inner * t.inner),
            Side::Real(t.watson_rhs),
            json!({"c_w": c_w}),
            tol.get("watson_per_form"),
        ));
    }
    Ok((w, out))
}
