//! The mean value 𝓜_f(r) over B_{2κ} with its diagonal/off-diagonal split.

use serde_json::json;

use super::report::{CheckReport, Side, ToleranceTable};
use crate::eigen::HeckeEigenform;
use crate::error::{Error, Result};
use crate::lvalues::{mean_value_m, MeanValue, SymSquareTwist};
use crate::numeric::ZETA2;
use crate::special::arith::{divisors, gcd, mobius};

/// One row per r: (k, κ, r, 𝓜, 𝓜_diag, 𝓜_offdiag); rows with root number -1 carry `odd_sign`.
pub fn mean_value_report(f: &HeckeEigenform, basis_2kappa: &[HeckeEigenform], c_w: f64, r_list: &[usize]) -> Result<Vec<MeanValue>> {
    let kappa = basis_2kappa
        .first()
        .map(|g| g.weight / 2)
        .ok_or_else(|| Error::Precondition("empty basis B_{2κ}".into()))?;
    let twist = SymSquareTwist::new(f, kappa, c_w)?;
    r_list.iter().map(|&r| mean_value_m(&twist, basis_2kappa, r)).collect()
}

fn sym2_coefficient(f: &HeckeEigenform, n: u64) -> Result<f64> {
    let mut s = 0.0;
    let mut d = 1;
    while d * d <= n {
        if n % (d * d) == 0 {
            let q = n / (d * d);
            s += f.lambda_extended(q * q)?;
        }
        d += 1;
    }
    Ok(s)
}

/// 𝓜_diag(r) recomputed from λ_f(n) and pointwise W, independent of the tabulated twist.
pub fn mean_value_diagonal_direct(twist: &SymSquareTwist, r: usize) -> Result<f64> {
    let f = twist.f;
    let a = |m: u64, n: u64| -> Result<f64> {
        let mut s = 0.0;
        for d in divisors(gcd(m as i64, n as i64) as u64) {
            let mu = mobius(d);
            if mu != 0 {
                s += mu as f64 * sym2_coefficient(f, m / d)? * sym2_coefficient(f, n / d)?;
            }
        }
        Ok(s)
    };
    let mut total = 0.0;
    let mut m = 1usize;
    while r * m * m <= twist.x_cut {
        total += a(m as u64, r as u64)? * twist.w.eval((r * m * m) as f64) / m as f64;
        m += 1;
    }
    Ok(2.0 / ZETA2 * total / (r as f64).sqrt())
}

/// The diagonal against its direct evaluation and 𝓜 - 𝓜_diag against the Kloosterman form
/// of the off-diagonal.
pub fn mean_value_checks(f: &HeckeEigenform, basis_2kappa: &[HeckeEigenform], c_w: f64, r_list: &[usize], tol: &ToleranceTable) -> Result<Vec<CheckReport>> {
    let rows = mean_value_report(f, basis_2kappa, c_w, r_list)?;
    let kappa = basis_2kappa[0].weight / 2;
    let twist = SymSquareTwist::new(f, kappa, c_w)?;
    let mut out = Vec::new();
    for row in rows {
        let params = json!({"k": row.k, "kappa": row.kappa, "r": row.r});
        let trunc = json!({"x_cut": twist.x_cut, "c_w": c_w, "odd_sign": row.odd_sign});
        let direct = if row.odd_sign { 0.0 } else { mean_value_diagonal_direct(&twist, row.r)? };
        out.push(CheckReport::new("mean_value_diagonal", params.clone(), Side::Real(row.m_diag), Side::Real(direct), trunc.clone(), tol.get("mean_value_diagonal")));
        let kl = twist.mean_value_offdiagonal_kloosterman(row.r)?;
        out.push(CheckReport::new("mean_value_offdiagonal", params, Side::Real(row.m_offdiag), Side::Real(kl), trunc, tol.get("mean_value_offdiagonal")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::hecke_eigenbasis;

    #[test]
    fn split_is_consistent_at_weight_twelve() {
        let f = &hecke_eigenbasis(12, 3000).unwrap()[0];
        let b24 = hecke_eigenbasis(24, 3000).unwrap();
        let reps = mean_value_checks(f, &b24, 20.0, &[1, 2], &ToleranceTable::default()).unwrap();
        assert_eq!(reps.len(), 4);
        for r in &reps {
            assert!(r.passed, "{}", r.to_json_line());
        }
        let rows = mean_value_report(f, &b24, 20.0, &[1]).unwrap();
        assert!(rows[0].m >= 0.0 && !rows[0].odd_sign);
    }
}
