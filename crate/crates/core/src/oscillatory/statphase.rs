//! Integration-by-parts certificate, the weighted stationary-phase expansion and the
//! short-window truncation.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::jet::Jet;
use super::spec::{PhaseSpec, Smooth, WeightSpec};
use crate::error::{Error, Result};

pub const DEFAULT_DELTA: f64 = 0.05;
pub const DEFAULT_A: f64 = 2.0;

/// N = min(8, ⌊3A/δ⌋).
pub fn default_terms(a: f64, delta: f64) -> usize {
    ((3.0 * a / delta).floor() as usize).min(8)
}

/// (β-α) X [(QR/√Y)^{-A} + (RU)^{-A}] with unit implied constants.
pub fn ibp_bound(w: &WeightSpec, h: &PhaseSpec, a: u32) -> Result<f64> {
    let r = h.r.filter(|r| *r > 0.0).ok_or_else(|| Error::Precondition("ibp_bound needs a lower bound R > 0 on |h'|".into()))?;
    let need = 2 * a as usize;
    for available in [w.w.max_order(), h.h.max_order()] {
        if available < need {
            return Err(Error::DerivativeOrder { order: need, available });
        }
    }
    let a = a as i32;
    Ok((w.beta - w.alpha) * w.x * ((h.q * r / h.y.sqrt()).powi(-a) + (r * w.u).powi(-a)))
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct StationaryPhaseResult {
    pub value: Complex64,
    /// e^{ih(t₀)} h''(t₀)^{-1/2} p_n(t₀) for n = 0..=n_used
    pub terms: Vec<Complex64>,
    pub n_used: usize,
    /// |first dropped term|
    pub error_estimate: f64,
    /// Z^{-A} with A = Nδ/3 and unit constant; reported, not added to the estimate
    pub remainder_scale: f64,
    pub z: f64,
    pub t0: f64,
}

/// Which hypothesis on the scales fails, if any.
pub fn check_hypotheses(w: &WeightSpec, h: &PhaseSpec, delta: f64) -> Result<f64> {
    let z = h.q + w.x + h.y + w.v1 + 1.0;
    if h.y < z.powf(3.0 * delta) {
        return Err(Error::Precondition(format!("Y >= Z^(3δ) fails: Y = {}, Z^(3δ) = {}", h.y, z.powf(3.0 * delta))));
    }
    if w.v1 < w.u {
        return Err(Error::Precondition(format!("V₁ >= V fails: V₁ = {}, V = {}", w.v1, w.u)));
    }
    let lower = h.q * z.powf(delta / 2.0) / h.y.sqrt();
    if w.u < lower {
        return Err(Error::Precondition(format!("V >= Q Z^(δ/2)/√Y fails: V = {}, bound = {lower}", w.u)));
    }
    Ok(z)
}

/// A zero of h' in (α, β) by bisection on a sign change over 256 cells.
fn locate_stationary_point(w: &WeightSpec, h: &PhaseSpec) -> Result<f64> {
    let cells = 256;
    let at = |i: usize| w.alpha + (w.beta - w.alpha) * i as f64 / cells as f64;
    for i in 0..cells {
        let (mut a, mut b) = (at(i), at(i + 1));
        let (mut fa, fb) = (h.derivative(a)?, h.derivative(b)?);
        if fa == 0.0 {
            return Ok(a);
        }
        if fa * fb < 0.0 {
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                let fm = h.derivative(m)?;
                if fm * fa <= 0.0 {
                    b = m;
                } else {
                    a = m;
                    fa = fm;
                }
            }
            return Ok(0.5 * (a + b));
        }
    }
    Err(Error::Precondition("no stationary point in the support; use ibp_bound".into()))
}

/// (t₀, [e^{ih(t₀)} h''(t₀)^{-1/2} p_n(t₀) for n = 0..=n]) with
/// p_n = √(2π) e^{iπ/4}/n! (i/(2h''(t₀)))^n G^{(2n)}(t₀), G = w e^{iH},
/// H(t) = h(t) - h(t₀) - h''(t₀)(t - t₀)²/2. No truncation or hypothesis checks.
pub fn stationary_phase_terms(w: &WeightSpec, h: &PhaseSpec, n: usize) -> Result<(f64, Vec<Complex64>)> {
    let t0 = match h.t0 {
        Some(t) => t,
        None => locate_stationary_point(w, h)?,
    };
    if !(t0 > w.alpha && t0 < w.beta) {
        return Err(Error::Precondition(format!("t₀ = {t0} is not interior to [{}, {}]", w.alpha, w.beta)));
    }
    let order = 2 * n;
    let step = w.u.min(h.q) / 100.0;
    let hj = h.h.jet(t0, order.max(2), step)?;
    let wj = w.w.jet(t0, order, step)?;
    let h1 = hj.derivative(1);
    if h1.abs() > 1e-10 * h.y / h.q {
        return Err(Error::Precondition(format!("h'(t₀) = {h1:e} is not zero")));
    }
    let h2 = hj.derivative(2);
    if h2 <= 0.0 {
        return Err(Error::Precondition(format!("h''(t₀) = {h2} must be positive")));
    }
    let big_h = hj.map_coefficients(|j, c| if j <= 2 { 0.0 } else { c });
    let (s, c) = big_h.sin_cos();
    let (g_re, g_im) = (&wj * &c, &wj * &s);
    let lead = Complex64::from_polar((2.0 * PI).sqrt(), PI / 4.0) * Complex64::from_polar(1.0 / h2.sqrt(), hj.value());
    let step_factor = Complex64::new(0.0, 1.0 / (2.0 * h2));
    let mut out = Vec::with_capacity(n + 1);
    let mut pow = Complex64::new(1.0, 0.0);
    let mut fact_n = 1.0;
    let mut fact_2n = 1.0;
    for m in 0..=n {
        if m > 0 {
            pow *= step_factor;
            fact_n *= m as f64;
            fact_2n *= (2 * m - 1) as f64 * (2 * m) as f64;
        }
        let g2m = Complex64::new(g_re.coefficient(2 * m), g_im.coefficient(2 * m)) * fact_2n;
        out.push(lead * pow * g2m / fact_n);
    }
    Ok((t0, out))
}

/// e^{ih(t₀)} h''(t₀)^{-1/2} Σ_{n <= N} p_n(t₀), keeping terms only while they decrease.
pub fn stationary_phase_expand(w: &WeightSpec, h: &PhaseSpec, n: usize, delta: f64) -> Result<StationaryPhaseResult> {
    let z = check_hypotheses(w, h, delta)?;
    let (t0, all) = stationary_phase_terms(w, h, n + 1)?;
    // keep terms while they do not grow past the last nonzero one
    let mut n_used = 0;
    let mut last = all[0].norm();
    for (m, t) in all.iter().enumerate().take(n + 1).skip(1) {
        let a = t.norm();
        if last > 0.0 && a > last {
            break;
        }
        n_used = m;
        if a > 0.0 {
            last = a;
        }
    }
    let terms: Vec<Complex64> = all[..=n_used].to_vec();
    Ok(StationaryPhaseResult {
        value: terms.iter().sum(),
        error_estimate: all[n_used + 1].norm(),
        remainder_scale: z.powf(-(n as f64) * delta / 3.0),
        terms,
        n_used,
        z,
        t0,
    })
}

/// C_n = |p_n/p_0| / b^n with b = max((V²Y/Q²)^{-1}, Y^{-1/3}), for n = 0..=n.
pub fn term_decay_constants(w: &WeightSpec, h: &PhaseSpec, n: usize) -> Result<Vec<f64>> {
    let (_, terms) = stationary_phase_terms(w, h, n)?;
    let b = (h.q * h.q / (w.u * w.u * h.y)).max(h.y.powf(-1.0 / 3.0));
    let p0 = terms[0].norm();
    Ok(terms.iter().enumerate().map(|(j, t)| t.norm() / p0 / b.powi(j as i32)).collect())
}

/// One row of the Gaussian benchmark: the N-term expansion against quadrature and the
/// closed form, errors relative to |I|.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct StatPhaseRow {
    pub lambda: f64,
    pub n: usize,
    pub expansion: Complex64,
    pub quadrature: Complex64,
    pub exact: Complex64,
    pub err_vs_quadrature: f64,
    pub err_vs_exact: f64,
    pub first_dropped: f64,
    pub quadrature_error: f64,
}

/// The expansion for N = 0..=n_max on [`gaussian_family`] with μ = 0, for each λ.
pub fn gaussian_benchmark(lambdas: &[f64], n_max: usize, tol: f64) -> Result<Vec<StatPhaseRow>> {
    let mut rows = Vec::new();
    for &lambda in lambdas {
        let (w, h) = gaussian_family(lambda, 0.0)?;
        let q = super::quadrature::oscillatory_quadrature(&w, &h, tol)?;
        let exact = gaussian_exact(lambda);
        let scale = q.value.norm();
        for n in 0..=n_max {
            let r = stationary_phase_expand(&w, &h, n, DEFAULT_DELTA)?;
            rows.push(StatPhaseRow {
                lambda,
                n,
                expansion: r.value,
                quadrature: q.value,
                exact,
                err_vs_quadrature: (r.value - q.value).norm() / scale,
                err_vs_exact: (r.value - exact).norm() / scale,
                first_dropped: r.error_estimate / scale,
                quadrature_error: q.est_error / scale,
            });
        }
    }
    Ok(rows)
}

/// φ(x)/(φ(x) + φ(1-x)) with φ(x) = e^{-1/x}: 0 for x <= 0, 1 for x >= 1.
fn smooth_step(x: &Jet) -> Jet {
    let v = x.value();
    if v <= 0.0 {
        return Jet::constant(0.0, x.order());
    }
    if v >= 1.0 {
        return Jet::constant(1.0, x.order());
    }
    let a = x.recip().scale(-1.0).exp();
    let b = x.scale(-1.0).shift(1.0).recip().scale(-1.0).exp();
    &a * &(&a + &b).recip()
}

/// The fixed bump w₀: 1 on [-1/2, 1/2], 0 outside [-1, 1], smooth step in between.
pub fn window_bump(u: &Jet) -> Jet {
    let a = if u.value() < 0.0 { u.scale(-1.0) } else { u.clone() };
    smooth_step(&a.scale(-2.0).shift(2.0))
}

pub fn window_bump_value(u: f64) -> f64 {
    window_bump(&Jet::constant(u, 0)).value()
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct WindowCertificate {
    pub t0: f64,
    pub width: f64,
    /// ibp_bound for the complement weight w (1 - w₀)
    pub complement_bound: f64,
    /// min |h'| on the complement inside [α, β]
    pub r: f64,
    pub warning: Option<String>,
}

/// Integration-by-parts order used for the complement certificate.
pub const WINDOW_A: u32 = 4;

/// w(t) w₀((t - t₀)/T) together with a certificate for the discarded part.
pub fn short_window(w: &WeightSpec, h: &PhaseSpec, width: f64) -> Result<(WeightSpec, WindowCertificate)> {
    if !(width > 0.0) {
        return Err(Error::Precondition("window width must be positive".into()));
    }
    let t0 = match h.t0 {
        Some(t) => t,
        None => locate_stationary_point(w, h)?,
    };
    let inner = w.w.clone();
    let windowed = if w.w.is_analytic() {
        Smooth::analytic(move |x| {
            let base = inner.apply(x).expect("analytic weight");
            &base * &window_bump(&x.shift(-t0).scale(1.0 / width))
        })
    } else {
        Smooth::plain(move |t| inner.eval(t) * window_bump_value((t - t0) / width))
    };
    let (alpha, beta) = (w.alpha.max(t0 - width), w.beta.min(t0 + width));
    let h2 = h.h.jet(t0, 2, h.q / 100.0)?.derivative(2);
    let mut warning = None;
    if h2 > 0.0 && width < 1.0 / h2.sqrt() {
        warning = Some(format!("window {width} is shorter than h''(t₀)^(-1/2) = {}", 1.0 / h2.sqrt()));
    }
    // the complement lives on |t - t₀| >= T/2 inside [α, β]
    let mut r = f64::INFINITY;
    let samples = 400;
    for (lo, hi) in [(w.alpha, t0 - 0.5 * width), (t0 + 0.5 * width, w.beta)] {
        if hi <= lo {
            continue;
        }
        for i in 0..=samples {
            let t = lo + (hi - lo) * i as f64 / samples as f64;
            r = r.min(h.derivative(t)?.abs());
        }
    }
    let complement_bound = if r.is_infinite() {
        0.0
    } else {
        let comp = WeightSpec { w: w.w.clone(), alpha: w.alpha, beta: w.beta, x: w.x, u: w.u.min(0.5 * width), v1: w.v1 };
        let hc = PhaseSpec { r: Some(r), ..h.clone() };
        ibp_bound(&comp, &hc, WINDOW_A)?
    };
    let out = WeightSpec { w: windowed, alpha, beta, x: w.x, u: w.u.min(0.5 * width), v1: beta - alpha };
    Ok((out, WindowCertificate { t0, width, complement_bound, r, warning }))
}

/// The test family w = e^{-(t-3)²} on [-5, 11], h = λ(t-3)²/2 + μ(t-3)³/6, with scales
/// X = 1, V = 1, Y = λ, Q = 1 and stationary point 3.
pub fn gaussian_family(lambda: f64, mu: f64) -> Result<(WeightSpec, PhaseSpec)> {
    let w = WeightSpec::new(
        Smooth::with_value(
            |t| (-(t - 3.0) * (t - 3.0)).exp(),
            |x| {
                let u = x.shift(-3.0);
                (&u * &u).scale(-1.0).exp()
            },
        ),
        -5.0,
        11.0,
        1.0,
        1.0,
        16.0,
    )?;
    let h = PhaseSpec::new(
        Smooth::with_value(
            move |t| {
                let u = t - 3.0;
                u * u * (0.5 * lambda + u * mu / 6.0)
            },
            move |x| {
                let u = x.shift(-3.0);
                let u2 = &u * &u;
                &u2.scale(0.5 * lambda) + &(&u2 * &u).scale(mu / 6.0)
            },
        ),
        lambda,
        1.0,
    )?
    .with_t0(3.0);
    Ok((w, h))
}

/// ∫_ℝ e^{-u²} e^{iλu²/2} du = √(π/(1 - iλ/2)).
pub fn gaussian_exact(lambda: f64) -> Complex64 {
    (Complex64::new(PI, 0.0) / Complex64::new(1.0, -0.5 * lambda)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ibp_plug_in_values() {
        // R U = 10, Q R/√Y = 10, (β - α) X = 1
        let w = WeightSpec::new(Smooth::analytic(|x| x.clone()), 0.0, 1.0, 1.0, 1.0, 1.0).unwrap();
        let h = PhaseSpec::new(Smooth::analytic(|x| x.scale(10.0)), 1.0, 1.0).unwrap().with_r(10.0);
        assert!((ibp_bound(&w, &h, 6).unwrap() - 2e-6).abs() < 1e-18);
        assert_eq!(ibp_bound(&w, &h, 0).unwrap(), 2.0);
        let no_r = PhaseSpec::new(Smooth::analytic(|x| x.clone()), 1.0, 1.0).unwrap();
        assert!(ibp_bound(&w, &no_r, 2).is_err());
        let plain = PhaseSpec::new(Smooth::plain(|t| t), 1.0, 1.0).unwrap().with_r(1.0);
        assert!(matches!(ibp_bound(&w, &plain, 9), Err(Error::DerivativeOrder { .. })));
    }

    #[test]
    fn gaussian_terms_are_closed_form() {
        // G = w, G^{(2n)}(3) = (-1)^n (2n)!/n!
        let lambda = 1e3;
        let (w, h) = gaussian_family(lambda, 0.0).unwrap();
        let r = stationary_phase_expand(&w, &h, 3, DEFAULT_DELTA).unwrap();
        assert_eq!(r.n_used, 3);
        let lead = Complex64::from_polar((2.0 * PI / lambda).sqrt(), PI / 4.0);
        let mut ratio = Complex64::new(1.0, 0.0);
        for (n, t) in r.terms.iter().enumerate() {
            if n > 0 {
                // p_n/p_{n-1} = (i/(2λ)) (-1) (2n)(2n-1)/n²
                ratio *= Complex64::new(0.0, -(((2 * n) * (2 * n - 1)) as f64) / (2.0 * lambda * (n * n) as f64));
            }
            assert!((t - lead * ratio).norm() < 1e-15 * lead.norm(), "{n}");
        }
        assert!((r.value - gaussian_exact(lambda)).norm() < 1e-11);
    }

    #[test]
    fn flat_weight_kills_the_first_correction() {
        let w = WeightSpec::new(
            Smooth::analytic(|x| {
                let u2 = &x.shift(-1.0) * &x.shift(-1.0);
                (&u2 * &u2).scale(-1.0).exp()
            }),
            -3.0,
            5.0,
            1.0,
            1.0,
            8.0,
        )
        .unwrap();
        let h = PhaseSpec::new(
            Smooth::analytic(|x| {
                let u2 = &x.shift(-1.0) * &x.shift(-1.0);
                &u2.scale(200.0) + &(&u2 * &u2).scale(3.0)
            }),
            400.0,
            1.0,
        )
        .unwrap();
        let r = stationary_phase_expand(&w, &h, 2, DEFAULT_DELTA).unwrap();
        assert!((r.t0 - 1.0).abs() < 1e-12);
        assert_eq!(r.terms[1], Complex64::new(0.0, 0.0));
        let lead = Complex64::from_polar((2.0 * PI).sqrt(), PI / 4.0) / 400f64.sqrt();
        assert!((r.terms[0] - lead).norm() < 1e-15);
    }

    #[test]
    fn hypotheses_are_named() {
        let (w, h) = gaussian_family(1e3, 0.0).unwrap();
        let tiny = PhaseSpec { y: 1.0, ..h.clone() };
        let e = stationary_phase_expand(&w, &tiny, 2, DEFAULT_DELTA).unwrap_err().to_string();
        assert!(e.contains("Y >= Z^(3δ)"), "{e}");
        let wide = WeightSpec { u: 20.0, ..w.clone() };
        let e = stationary_phase_expand(&wide, &h, 2, DEFAULT_DELTA).unwrap_err().to_string();
        assert!(e.contains("V₁ >= V"), "{e}");
        let off = h.clone().with_t0(3.1);
        assert!(stationary_phase_expand(&w, &off, 2, DEFAULT_DELTA).is_err());
        assert_eq!(default_terms(DEFAULT_A, DEFAULT_DELTA), 8);
    }

    #[test]
    fn bump_profile() {
        assert_eq!(window_bump_value(0.0), 1.0);
        assert_eq!(window_bump_value(0.5), 1.0);
        assert_eq!(window_bump_value(-1.0), 0.0);
        let v = window_bump_value(0.75);
        assert!((v - 0.5).abs() < 1e-15);
        let j = window_bump(&Jet::variable(0.2, 5));
        assert!(j.coefficients()[1..].iter().all(|c| *c == 0.0));
    }
}
