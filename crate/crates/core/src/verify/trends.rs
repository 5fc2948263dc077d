//! Recorded trend tables with no pass/fail: the normalised fourth moment, 𝓜_f(1) across
//! weights, and partial sums of S_f(l)/l and S_f(l)²/l against their stated growth.

use crate::eigen::{hecke_eigenbasis, HeckeEigenform};
use crate::error::Result;
use crate::lvalues::MeanValue;
use crate::mass::{lp_norm, shifted_s, FundamentalDomainGrid};

use super::mean_value::mean_value_report;
use super::suite::with_basis;

/// The moment a random wave would have: E|Z|⁴ for a standard complex Gaussian.
pub const GAUSSIAN_FOURTH_MOMENT: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct FourthMomentRow {
    pub k: u32,
    pub form_index: usize,
    /// ‖F‖₄⁴ against (3/π) dμ
    pub moment: f64,
    pub est_error: f64,
}

/// ‖F‖₄⁴ for every form of every listed weight.
pub fn fourth_moment_trend(weights: &[u32]) -> Result<Vec<FourthMomentRow>> {
    let mut rows = Vec::new();
    for &k in weights {
        for f in hecke_eigenbasis(k, 1000)? {
            let r = lp_norm(&f, 4.0, &FundamentalDomainGrid::for_form(&f))?;
            rows.push(FourthMomentRow {
                k,
                form_index: f.index,
                moment: r.value.powi(4),
                est_error: 4.0 * r.value.powi(3) * r.est_error,
            });
        }
    }
    Ok(rows)
}

/// 𝓜_f(r) with κ = k for the first form of each weight.
pub fn mean_value_trend(weights: &[u32], c_w: f64, r: usize) -> Result<Vec<MeanValue>> {
    let mut rows = Vec::new();
    for &k in weights {
        let x = (c_w * (k * k) as f64) as usize + 1;
        let b2 = hecke_eigenbasis(2 * k, x)?;
        rows.extend(with_basis(k, x, |b| mean_value_report(&b[0], &b2, c_w, &[r]))?);
    }
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ShiftedSumRow {
    pub k: u32,
    pub n: u64,
    /// Σ_{l<=N} S(l)/l
    pub sum_s: f64,
    /// Σ_{l<=N} S(l)²/l
    pub sum_s2: f64,
    /// k^{1/4} + N/k
    pub shape_s: f64,
    /// k^{5/6} + N/k^{1/6} + N²/k^{3/2}
    pub shape_s2: f64,
}

/// Partial sums at each N in `ns` (ascending); f needs λ(n) tabulated up to max N.
pub fn shifted_partial_sums(f: &HeckeEigenform, ns: &[u64]) -> Result<Vec<ShiftedSumRow>> {
    let k = f.weight;
    let kf = k as f64;
    let (mut s1, mut s2) = (0.0, 0.0);
    let mut rows = Vec::with_capacity(ns.len());
    let mut l = 2u64;
    for &n in ns {
        while l <= n {
            let s = shifted_s(&f, l)?;
            s1 += s / l as f64;
            s2 += s * s / l as f64;
            l += 1;
        }
        let nf = n as f64;
        rows.push(ShiftedSumRow {
            k,
            n,
            sum_s: s1,
            sum_s2: s2,
            shape_s: kf.powf(0.25) + nf / kf,
            shape_s2: kf.powf(5.0 / 6.0) + nf / kf.powf(1.0 / 6.0) + nf * nf / kf.powf(1.5),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_sums_are_cumulative() {
        let f = hecke_eigenbasis(12, 60).unwrap().remove(0);
        let rows = shifted_partial_sums(&f, &[10, 50]).unwrap();
        let direct: f64 = (2..=50).map(|l| shifted_s(&f, l).unwrap() / l as f64).sum();
        assert!((rows[1].sum_s - direct).abs() < 1e-12);
        assert!(rows[0].sum_s2 <= rows[1].sum_s2);
    }
}
