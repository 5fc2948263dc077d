//! The twisted Kloosterman character sum Σ*_{d (c)} e(dr/c) S(md, ±n₂, c/n₁) and its bound
//! τ(c)·c·(c, m).

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::json;

use super::report::{CheckReport, Side, Tolerance};
use crate::error::{Error, Result};
use crate::special::arith::{divisors, gcd, ramanujan_sum, tau, ModTable};

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct CharSum {
    /// direct double sum
    pub exact: Complex64,
    /// the same sum through Ramanujan sums
    pub ramanujan: Complex64,
    pub bound: f64,
    pub ok: bool,
}

/// Evaluates the sum with sign `sign` = ±1 on n₂, both directly and through
/// Σ*_{h (c/n₁)} e(±n₂h̄/(c/n₁)) r_c(r + m h n₁).
pub fn char_sum_lemma33(r: i64, m: i64, n2: i64, c: i64, n1: i64, sign: i32) -> Result<CharSum> {
    if c < 1 || n1 < 1 || c % n1 != 0 {
        return Err(Error::Domain(format!("n1 = {n1} must divide c = {c}")));
    }
    let q = c / n1;
    let tc = ModTable::new(c);
    let tq = ModTable::new(q);
    let s = sign.signum() as i64;
    // S(md, ±n₂, q) = Σ*_x e((md x + ±n₂ x̄)/q) = Σ*_x e(n₁(md x + ±n₂ x̄)/c)
    let mut exact = Complex64::new(0.0, 0.0);
    for &(d, _) in &tc.units {
        for &(x, xb) in &tq.units {
            let (a, b) = tc.e(d * r + n1 * (m * d * x + s * n2 * xb));
            exact += Complex64::new(a, b);
        }
    }
    let mut ramanujan = Complex64::new(0.0, 0.0);
    for &(h, hb) in &tq.units {
        let (a, b) = tq.e(s * n2 * hb);
        ramanujan += Complex64::new(a, b) * ramanujan_sum(r + m * h * n1, c) as f64;
    }
    let bound = (tau(c as u64) * c as u64) as f64 * gcd(c, m.abs().max(1)) as f64;
    Ok(CharSum { exact, ramanujan, bound, ok: exact.norm() <= bound * (1.0 + 1e-12) })
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Lemma33Sweep {
    pub cases: usize,
    pub violations: Vec<(i64, i64, i64, i64, i64, i32)>,
    /// largest |direct - Ramanujan route|
    pub max_route_gap: f64,
    /// largest |exact| / bound
    pub max_ratio: f64,
}

/// Exhaustive grid c <= c_max, n₁ | c, 1 <= m, r, n₂ <= small, both signs.
pub fn lemma33_sweep(c_max: i64, small: i64) -> Lemma33Sweep {
    let mut grid = Vec::new();
    for c in 1..=c_max {
        for n1 in divisors(c as u64) {
            grid.push((c, n1 as i64));
        }
    }
    let parts: Vec<Lemma33Sweep> = grid
        .par_iter()
        .map(|&(c, n1)| {
            let mut out = Lemma33Sweep { cases: 0, violations: vec![], max_route_gap: 0.0, max_ratio: 0.0 };
            for m in 1..=small {
                for r in 1..=small {
                    for n2 in 1..=small {
                        for sign in [1, -1] {
                            let v = char_sum_lemma33(r, m, n2, c, n1, sign).expect("n1 | c");
                            out.cases += 1;
                            out.max_route_gap = out.max_route_gap.max((v.exact - v.ramanujan).norm());
                            out.max_ratio = out.max_ratio.max(v.exact.norm() / v.bound);
                            if !v.ok {
                                out.violations.push((r, m, n2, c, n1, sign));
                            }
                        }
                    }
                }
            }
            out
        })
        .collect();
    parts.into_iter().fold(
        Lemma33Sweep { cases: 0, violations: vec![], max_route_gap: 0.0, max_ratio: 0.0 },
        |mut a, b| {
            a.cases += b.cases;
            a.violations.extend(b.violations);
            a.max_route_gap = a.max_route_gap.max(b.max_route_gap);
            a.max_ratio = a.max_ratio.max(b.max_ratio);
            a
        },
    )
}

/// Reports for the sweep: the bound (zero violations) and the route agreement.
pub fn lemma33_reports(c_max: i64, small: i64, tol: Tolerance) -> Vec<CheckReport> {
    let s = lemma33_sweep(c_max, small);
    let params = json!({"c_max": c_max, "m_r_n2_max": small, "signs": [1, -1]});
    vec![
        CheckReport::new(
            "lemma33_bound",
            params.clone(),
            Side::Real(s.violations.len() as f64),
            Side::Real(0.0),
            json!({"cases": s.cases, "max_ratio": s.max_ratio}),
            Tolerance::abs(0.0),
        ),
        CheckReport::new(
            "lemma33_ramanujan",
            params,
            Side::Real(s.max_route_gap),
            Side::Real(0.0),
            json!({"cases": s.cases}),
            tol,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_modulus() {
        let v = char_sum_lemma33(3, 2, 5, 1, 1, 1).unwrap();
        assert!((v.exact - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(v.bound, 1.0);
        assert!(v.ok);
    }

    #[test]
    fn rejects_non_divisor() {
        assert!(char_sum_lemma33(1, 1, 1, 6, 4, 1).is_err());
    }

    #[test]
    fn routes_agree_small() {
        let s = lemma33_sweep(12, 4);
        assert!(s.violations.is_empty());
        assert!(s.max_route_gap < 1e-10);
    }
}
