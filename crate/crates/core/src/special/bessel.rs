//! Bessel functions of the first kind of integer order.
//!
//! Three regimes:
//! - ascending series when `x² / 4` is small against `ν + 1` (no cancellation,
//!   tiny values evaluated in log space so they never underflow prematurely),
//! - Miller backward recurrence normalised by `J_0 + 2 Σ J_{2m} = 1` for the
//!   bulk, including the transition region `x ≈ ν`,
//! - Hankel's asymptotic expansion once `x` dominates both `ν²` and 2·10⁴.

use std::f64::consts::PI;

use super::gamma::ln_gamma;

/// J_ν(x) for integer ν >= 0 and real x >= 0.
pub fn bessel_j(order: u32, x: f64) -> f64 {
    assert!(x >= 0.0 && x.is_finite(), "bessel_j needs a finite x >= 0, got {x}");
    let nu = order as f64;
    if x == 0.0 {
        return if order == 0 { 1.0 } else { 0.0 };
    }
    if x * x < 0.25 * (nu + 1.0) || (x < 1.0) {
        return ascending_series(order, x);
    }
    if x > 2.0e4 && x > nu * nu {
        if let Some(v) = hankel(nu, x) {
            return v;
        }
    }
    miller(order, x)
}

/// Σ (-1)^m (x/2)^{2m+ν} / (m! (m+ν)!)
fn ascending_series(order: u32, x: f64) -> f64 {
    let nu = order as f64;
    let half = 0.5 * x;
    let log_lead = nu * half.ln() - ln_gamma(nu + 1.0);
    if log_lead < -745.0 {
        return 0.0;
    }
    let q = -half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut m = 1.0;
    loop {
        term *= q / (m * (m + nu));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
        m += 1.0;
        if m > 500.0 {
            break;
        }
    }
    log_lead.exp() * sum
}

fn miller(order: u32, x: f64) -> f64 {
    let nmax = (order as f64).max(x);
    let start = nmax + 30.0 + (50.0 * nmax).sqrt();
    let mut m = start.ceil() as u64;
    if m % 2 == 1 {
        m += 1;
    }
    let two_over_x = 2.0 / x;
    let mut j_next = 0.0f64; // J_{m+1}
    let mut j_cur = 1e-300f64; // J_m
    let mut norm = 0.0f64;
    let mut result = 0.0f64;
    let mut k = m;
    while k > 0 {
        if k == order as u64 {
            result = j_cur;
        }
        if k % 2 == 0 {
            norm += 2.0 * j_cur;
        }
        let j_prev = (k as f64) * two_over_x * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        k -= 1;
        if j_cur.abs() > 1e250 {
            j_cur *= 1e-250;
            j_next *= 1e-250;
            norm *= 1e-250;
            result *= 1e-250;
        }
    }
    // j_cur now holds the unnormalised J_0
    if order == 0 {
        result = j_cur;
    }
    norm += j_cur;
    result / norm
}

/// Hankel expansion; `None` when the series does not reach full precision.
fn hankel(nu: f64, x: f64) -> Option<f64> {
    let mu = 4.0 * nu * nu;
    let z8 = 8.0 * x;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term = 1.0;
    let mut k: f64 = 1.0;
    let mut last = f64::INFINITY;
    loop {
        term *= (mu - (2.0 * k - 1.0).powi(2)) / (k * z8);
        if term.abs() > last {
            return None;
        }
        last = term.abs();
        if (k as u64) % 2 == 1 {
            q += if (k as u64) % 4 == 1 { term } else { -term };
        } else {
            p += if (k as u64) % 4 == 2 { -term } else { term };
        }
        if term.abs() < 1e-17 {
            break;
        }
        k += 1.0;
        if k > 60.0 {
            return None;
        }
    }
    let chi = x - (0.5 * nu + 0.25) * PI;
    Some((2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_argument() {
        assert_eq!(bessel_j(0, 0.0), 1.0);
        for nu in 1..30 {
            assert_eq!(bessel_j(nu, 0.0), 0.0);
        }
    }

    #[test]
    fn recurrence_residual_on_grid() {
        let mut worst = 0.0f64;
        for nu in 1..100u32 {
            let mut x = 0.1;
            while x <= 1000.0 {
                let r = bessel_j(nu - 1, x) + bessel_j(nu + 1, x)
                    - 2.0 * nu as f64 / x * bessel_j(nu, x);
                worst = worst.max(r.abs());
                x *= 1.37;
            }
        }
        assert!(worst <= 1e-10, "worst recurrence residual {worst}");
    }

    #[test]
    fn bounded_by_one() {
        for nu in [0u32, 1, 5, 23, 47, 100, 200] {
            for i in 0..400 {
                let x = 0.05 + i as f64 * 2.5;
                assert!(bessel_j(nu, x).abs() <= 1.0);
            }
        }
    }

    #[test]
    fn hankel_agrees_with_recurrence() {
        for &(nu, x) in &[(0u32, 25000.0), (3, 30000.0), (100, 40000.0)] {
            let a = hankel(nu as f64, x).unwrap();
            let b = miller(nu, x);
            assert!((a - b).abs() < 1e-13, "{nu} {x}: {a} {b}");
        }
    }
}
