//! Adaptive Gauss-Legendre panels for ∫ w(t) e^{i h(t)} dt, with panel widths tied to the
//! local period 2π/|h'|.

use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

use super::spec::{PhaseSpec, WeightSpec};
use crate::error::{Error, Result};
use crate::numeric::gauss_legendre;

const GL_NODES: usize = 16;
/// Panel width as a fraction of the local period.
const PERIOD_FRACTION: f64 = 1.0;
const MAX_PANELS: usize = 20_000_000;
const MAX_DEPTH: u32 = 30;
const ROUNDING: f64 = 64.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct QuadratureValue {
    pub value: Complex64,
    /// Σ over panels of |one panel - two half panels|
    pub est_error: f64,
    pub panels: usize,
}

struct Panels<'a> {
    w: &'a WeightSpec,
    h: &'a PhaseSpec,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Panels<'_> {
    /// The panel integral and its rounding floor ∫|w| (1 + Y + max|h|) ε.
    fn gl(&self, a: f64, b: f64) -> (Complex64, f64) {
        let (m, r) = (0.5 * (a + b), 0.5 * (b - a));
        let mut acc = Complex64::new(0.0, 0.0);
        let mut abs = 0.0;
        let mut hmax = 0.0f64;
        for (x, wt) in self.nodes.iter().zip(&self.weights) {
            let t = m + r * x;
            let v = self.w.w.eval(t);
            let ph = self.h.h.eval(t);
            acc += Complex64::from_polar(v, ph) * *wt;
            abs += v.abs() * wt;
            hmax = hmax.max(ph.abs());
        }
        (acc * r, ROUNDING * abs * r * (1.0 + self.h.y + hmax))
    }

    fn adaptive(&self, a: f64, b: f64, whole: Complex64, tol: f64, depth: u32) -> Result<(Complex64, f64)> {
        let mid = 0.5 * (a + b);
        let ((l, al), (r, ar)) = (self.gl(a, mid), self.gl(mid, b));
        let err = (l + r - whole).norm();
        // differences at the rounding level of the panel are not refinable
        if err <= tol.max(al + ar) {
            return Ok((l + r, err));
        }
        if depth >= MAX_DEPTH {
            return Err(Error::Quadrature(format!("refinement limit on [{a}, {b}], error {err:e}")));
        }
        let (vl, el) = self.adaptive(a, mid, l, 0.5 * tol, depth + 1)?;
        let (vr, er) = self.adaptive(mid, b, r, 0.5 * tol, depth + 1)?;
        Ok((vl + vr, el + er))
    }
}

/// Panel break points from α to β.
fn partition(w: &WeightSpec, h: &PhaseSpec) -> Result<Vec<f64>> {
    let span = w.beta - w.alpha;
    let cap = span / 16.0;
    let mut pts = vec![w.alpha];
    let mut t = w.alpha;
    while t < w.beta {
        let mut width = cap;
        for _ in 0..4 {
            let d = h.derivative(t)?.abs().max(h.derivative((t + width).min(w.beta))?.abs());
            let want = if d > 0.0 { PERIOD_FRACTION * 2.0 * PI / d } else { cap };
            if want >= width {
                break;
            }
            width = want;
        }
        t = (t + width).min(w.beta);
        if w.beta - t < 1e-12 * span {
            t = w.beta;
        }
        pts.push(t);
        if pts.len() > MAX_PANELS {
            return Err(Error::Quadrature(format!("more than {MAX_PANELS} panels")));
        }
    }
    Ok(pts)
}

/// ∫_α^β w(t) e^{i h(t)} dt to absolute tolerance `tol`.
pub fn oscillatory_quadrature(w: &WeightSpec, h: &PhaseSpec, tol: f64) -> Result<QuadratureValue> {
    if !(tol > 0.0) {
        return Err(Error::Precondition("tolerance must be positive".into()));
    }
    let pts = partition(w, h)?;
    let (nodes, weights) = gauss_legendre(GL_NODES);
    let p = Panels { w, h, nodes, weights };
    let span = w.beta - w.alpha;
    let parts: Vec<Result<(Complex64, f64)>> = pts
        .par_windows(2)
        .map(|ab| {
            let (a, b) = (ab[0], ab[1]);
            p.adaptive(a, b, p.gl(a, b).0, tol * (b - a) / span, 0)
        })
        .collect();
    let mut value = Complex64::new(0.0, 0.0);
    let mut est = 0.0;
    for r in parts {
        let (v, e) = r?;
        value += v;
        est += e;
    }
    Ok(QuadratureValue { value, est_error: est, panels: pts.len() - 1 })
}
