//! Regularized upper incomplete gamma Q(a, x) = Γ(a, x) / Γ(a).

use super::gamma::{ln_gamma, stirling_correction};

const MAX_ITER: usize = 100_000;

/// log of x^a e^{-x} / Γ(a), arranged to avoid cancellation for large a with x ≈ a.
fn log_prefactor(a: f64, x: f64) -> f64 {
    if a < 10.0 {
        return a * x.ln() - x - ln_gamma(a);
    }
    // a ln x - x - ln Γ(a) = a (ln(1+t) - t) + ½ ln a - ln √(2π) - corr(a),  t = (x-a)/a
    let t = (x - a) / a;
    a * (t.ln_1p() - t) + 0.5 * a.ln() - 0.918_938_533_204_672_8 - stirling_correction(a)
}

/// Q(a, x) for a > 0, x >= 0. Series for the lower function when x < a + 1,
/// Lentz continued fraction for the upper one otherwise.
pub fn incomplete_gamma_q(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0, "incomplete_gamma_q needs a > 0, x >= 0");
    if x == 0.0 {
        return 1.0;
    }
    if x.is_infinite() {
        return 0.0;
    }
    let lp = log_prefactor(a, x);
    if x < a + 1.0 {
        1.0 - lower_series(a, x, lp)
    } else {
        upper_fraction(a, x, lp)
    }
}

/// P(a, x) = 1 - Q(a, x), computed directly where that is the accurate side.
pub fn incomplete_gamma_p(a: f64, x: f64) -> f64 {
    assert!(a > 0.0 && x >= 0.0);
    if x == 0.0 {
        return 0.0;
    }
    let lp = log_prefactor(a, x);
    if x < a + 1.0 {
        lower_series(a, x, lp)
    } else {
        1.0 - upper_fraction(a, x, lp)
    }
}

fn lower_series(a: f64, x: f64, lp: f64) -> f64 {
    if lp < -745.0 {
        return 0.0;
    }
    let mut term = 1.0 / a;
    let mut sum = term;
    let mut ap = a;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
    }
    (lp.exp() * sum).min(1.0)
}

fn upper_fraction(a: f64, x: f64, lp: f64) -> f64 {
    if lp < -745.0 {
        return 0.0;
    }
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (lp.exp() * h).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_and_closed_form() {
        for a in [0.5, 1.0, 23.0, 1e4] {
            assert_eq!(incomplete_gamma_q(a, 0.0), 1.0);
        }
        for x in [0.001, 0.3, 1.0, 2.0, 7.5, 40.0, 300.0] {
            let q = incomplete_gamma_q(1.0, x);
            assert!((q - (-x).exp()).abs() <= 1e-13 * (-x).exp(), "{x}");
        }
    }

    #[test]
    fn monotone_decreasing_in_x() {
        for a in [0.7, 11.0, 23.0, 47.0, 95.0, 2000.0] {
            let mut prev = 1.0;
            for i in 1..400 {
                let x = i as f64 * a / 100.0;
                let q = incomplete_gamma_q(a, x);
                assert!((0.0..=1.0).contains(&q));
                assert!(q <= prev + 1e-15, "a={a} x={x}");
                prev = q;
            }
        }
    }
}
