//! The Petersson formula on B_k.

use serde_json::json;
use std::f64::consts::PI;

use super::report::{CheckReport, Side, Tolerance};
use crate::eigen::HeckeEigenform;
use crate::error::{Error, Result};
use crate::numeric::ZETA2;
use crate::special::arith::{kloosterman, KloostermanQuery};
use crate::special::{bessel_j, ln_gamma};

/// Spectral side ζ(2)/((k-1)/12) Σ_g λ_g(m)λ_g(n)/L(1, sym² g).
pub fn petersson_spectral(basis: &[HeckeEigenform], m: u64, n: u64) -> Result<f64> {
    let k = basis.first().ok_or_else(|| Error::Precondition("empty basis".into()))?.weight as f64;
    let mut s = 0.0;
    for g in basis {
        s += g.lambda_extended(m)? * g.lambda_extended(n)? / g.sym2_l1;
    }
    Ok(ZETA2 * 12.0 / (k - 1.0) * s)
}

/// Bound on 2π Σ_{c > C} |S(m,n,c)|/c |J_{k-1}(4π√(mn)/c)| using |S| <= c and
/// |J_ν(x)| <= (x/2)^ν/ν!.
pub fn petersson_tail(k: u32, m: u64, n: u64, c_max: u64) -> f64 {
    let nu = k as f64 - 1.0;
    let a = 2.0 * PI * ((m * n) as f64).sqrt();
    let c = c_max as f64;
    if a >= c {
        return f64::INFINITY;
    }
    // Σ_{c>C} (a/c)^ν <= (a/C)^ν C/(ν-1)
    2.0 * PI * (nu * (a / c).ln() - ln_gamma(nu + 1.0)).exp() * c / (nu - 1.0)
}

/// Smallest C with the Bessel tail below `eps`.
pub fn petersson_c_max(k: u32, m: u64, n: u64, eps: f64) -> u64 {
    let mut c = (2.0 * PI * ((m * n) as f64).sqrt()).ceil() as u64 + 1;
    while petersson_tail(k, m, n, c) > eps {
        c += 1;
    }
    c
}

/// Geometric side δ_{m,n} + 2π i^{-k} Σ_{c <= C} S(m,n,c)/c J_{k-1}(4π√(mn)/c).
pub fn petersson_geometric(k: u32, m: u64, n: u64, c_max: u64) -> f64 {
    let sign = if k % 4 == 0 { 1.0 } else { -1.0 };
    let x = 4.0 * PI * ((m * n) as f64).sqrt();
    let mut s = 0.0;
    for c in (1..=c_max).rev() {
        let kl = kloosterman(KloostermanQuery { m: m as i64, n: n as i64, c: c as i64 });
        s += kl / c as f64 * bessel_j(k - 1, x / c as f64);
    }
    (if m == n { 1.0 } else { 0.0 }) + 2.0 * PI * sign * s
}

/// Both sides of the Petersson formula; `c_max = None` picks the cutoff for a 1e-12 tail.
pub fn petersson_check(basis: &[HeckeEigenform], m: u64, n: u64, c_max: Option<u64>, tol: Tolerance) -> Result<CheckReport> {
    let k = basis.first().ok_or_else(|| Error::Precondition("empty basis".into()))?.weight;
    let c_max = c_max.unwrap_or_else(|| petersson_c_max(k, m, n, 1e-12));
    let lhs = petersson_spectral(basis, m, n)?;
    let rhs = petersson_geometric(k, m, n, c_max);
    Ok(CheckReport::new(
        "petersson",
        json!({"k": k, "m": m, "n": n}),
        Side::Real(lhs),
        Side::Real(rhs),
        json!({"c_max": c_max, "bessel_tail_bound": petersson_tail(k, m, n, c_max)}),
        tol,
    ))
}
