//! Weights and phases with their derivative oracles and scale parameters.

use std::fmt;
use std::sync::Arc;

use super::jet::Jet;
use crate::error::{Error, Result};

type ValueFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type JetFn = Arc<dyn Fn(&Jet) -> Jet + Send + Sync>;

/// Highest derivative order the finite-difference fallback will produce.
pub const FD_MAX_ORDER: usize = 16;
/// Accuracy order of the central difference stencils.
const FD_ACCURACY: usize = 8;

/// A smooth real function, with exact derivatives when built from a jet map and central
/// finite differences otherwise.
#[derive(Clone)]
pub struct Smooth {
    value: ValueFn,
    jet: Option<JetFn>,
}

impl fmt::Debug for Smooth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Smooth").field("analytic", &self.jet.is_some()).finish()
    }
}

impl Smooth {
    /// From a map on jets; any derivative order is available.
    pub fn analytic(f: impl Fn(&Jet) -> Jet + Send + Sync + 'static) -> Self {
        let f: JetFn = Arc::new(f);
        let g = f.clone();
        Smooth { value: Arc::new(move |t| g(&Jet::constant(t, 0)).value()), jet: Some(f) }
    }

    /// A jet map together with a faster pointwise evaluation of the same function.
    pub fn with_value(value: impl Fn(f64) -> f64 + Send + Sync + 'static, f: impl Fn(&Jet) -> Jet + Send + Sync + 'static) -> Self {
        Smooth { value: Arc::new(value), jet: Some(Arc::new(f)) }
    }

    /// From point values alone; derivatives come from finite differences.
    pub fn plain(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Smooth { value: Arc::new(f), jet: None }
    }

    pub fn is_analytic(&self) -> bool {
        self.jet.is_some()
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.value)(t)
    }

    /// The jet map applied to an arbitrary jet, when there is one.
    pub fn apply(&self, x: &Jet) -> Option<Jet> {
        self.jet.as_ref().map(|f| f(x))
    }

    pub fn max_order(&self) -> usize {
        if self.jet.is_some() {
            usize::MAX
        } else {
            FD_MAX_ORDER
        }
    }

    /// Taylor jet at t to the given order; `fd_step` is used only without a jet map.
    pub fn jet(&self, t: f64, order: usize, fd_step: f64) -> Result<Jet> {
        if let Some(f) = &self.jet {
            return Ok(f(&Jet::variable(t, order)));
        }
        if order > FD_MAX_ORDER {
            return Err(Error::DerivativeOrder { order, available: FD_MAX_ORDER });
        }
        let half = order.div_ceil(2) + FD_ACCURACY / 2;
        let xs: Vec<f64> = (-(half as i64)..=half as i64).map(|i| i as f64).collect();
        let w = fornberg(&xs, order);
        let ys: Vec<f64> = xs.iter().map(|&x| self.eval(t + x * fd_step)).collect();
        let mut c = Vec::with_capacity(order + 1);
        let mut fact = 1.0;
        for (m, wm) in w.iter().enumerate() {
            if m > 0 {
                fact *= m as f64;
            }
            let d: f64 = wm.iter().zip(&ys).map(|(a, b)| a * b).sum::<f64>() / fd_step.powi(m as i32);
            c.push(d / fact);
        }
        Ok(Jet::from_coefficients(c))
    }
}

/// Weights w[m][i] with f^{(m)}(0) ≈ Σ_i w[m][i] f(x_i), for m <= order.
fn fornberg(xs: &[f64], order: usize) -> Vec<Vec<f64>> {
    let n = xs.len();
    let mut c = vec![vec![0.0; n]; order + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    for i in 1..n {
        let mut c2 = 1.0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            for m in (0..=order.min(i)).rev() {
                let prev = if m > 0 { c[m - 1][i - 1] } else { 0.0 };
                c[m][i] = c1 * (m as f64 * prev - xs[i - 1] * c[m][i - 1]) / c2;
            }
            for m in (0..=order.min(i)).rev() {
                let prev = if m > 0 { c[m - 1][j] } else { 0.0 };
                c[m][j] = (xs[i] * c[m][j] - m as f64 * prev) / c3;
            }
        }
        c1 = c2;
    }
    c
}

/// A weight w on [α, β] with |w^{(j)}| ≲ X U^{-j} and support length V₁.
#[derive(Debug, Clone)]
pub struct WeightSpec {
    pub w: Smooth,
    pub alpha: f64,
    pub beta: f64,
    /// size X
    pub x: f64,
    /// flatness: U in the integration-by-parts bound, V in the stationary expansion
    pub u: f64,
    /// support length V₁
    pub v1: f64,
}

impl WeightSpec {
    pub fn new(w: Smooth, alpha: f64, beta: f64, x: f64, u: f64, v1: f64) -> Result<Self> {
        if !(alpha < beta) {
            return Err(Error::Precondition(format!("empty support [{alpha}, {beta}]")));
        }
        if !(x > 0.0 && u > 0.0 && v1 > 0.0) {
            return Err(Error::Precondition("scales X, U, V₁ must be positive".into()));
        }
        Ok(WeightSpec { w, alpha, beta, x, u, v1 })
    }

    /// Empirical constants c_j = max |w^{(j)}| U^j / X over `samples` equispaced points.
    pub fn calibrate(&self, j_max: usize, samples: usize) -> Result<Vec<f64>> {
        let mut c = vec![0.0f64; j_max + 1];
        let step = self.u / 100.0;
        for i in 0..samples {
            let t = self.alpha + (self.beta - self.alpha) * (i as f64 + 0.5) / samples as f64;
            let jet = self.w.jet(t, j_max, step)?;
            for (j, cj) in c.iter_mut().enumerate() {
                *cj = cj.max(jet.derivative(j).abs() * self.u.powi(j as i32) / self.x);
            }
        }
        Ok(c)
    }
}

/// A phase h with |h^{(j)}| ≲ Y Q^{-j}, an optional lower bound R on |h'| and an optional
/// stationary point t₀.
#[derive(Debug, Clone)]
pub struct PhaseSpec {
    pub h: Smooth,
    pub y: f64,
    pub q: f64,
    pub r: Option<f64>,
    pub t0: Option<f64>,
}

impl PhaseSpec {
    pub fn new(h: Smooth, y: f64, q: f64) -> Result<Self> {
        if !(y > 0.0 && q > 0.0) {
            return Err(Error::Precondition("scales Y, Q must be positive".into()));
        }
        Ok(PhaseSpec { h, y, q, r: None, t0: None })
    }

    pub fn with_r(mut self, r: f64) -> Self {
        self.r = Some(r);
        self
    }

    pub fn with_t0(mut self, t0: f64) -> Self {
        self.t0 = Some(t0);
        self
    }

    /// h'(t), exact or by finite differences with step Q/100.
    pub fn derivative(&self, t: f64) -> Result<f64> {
        Ok(self.h.jet(t, 1, self.q / 100.0)?.derivative(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_differences_match_jets() {
        let a = Smooth::analytic(|x| (x * x).scale(-1.0).exp());
        let p = Smooth::plain(|t| (-t * t).exp());
        let t = 0.4;
        let ja = a.jet(t, 4, 0.0).unwrap();
        let jp = p.jet(t, 4, 0.05).unwrap();
        for j in 0..=4 {
            assert!((ja.derivative(j) - jp.derivative(j)).abs() < 1e-7, "{j}");
        }
        assert!(matches!(p.jet(t, 17, 0.01), Err(Error::DerivativeOrder { .. })));
    }

    #[test]
    fn calibration_of_a_gaussian() {
        let w = WeightSpec::new(Smooth::analytic(|x| (x * x).scale(-1.0).exp()), -6.0, 6.0, 1.0, 1.0, 12.0).unwrap();
        let c = w.calibrate(2, 1200).unwrap();
        assert!((c[0] - 1.0).abs() < 1e-4);
        // max |(e^{-t²})''| = 2 at t = 0
        assert!((c[2] - 2.0).abs() < 1e-3);
    }
}
