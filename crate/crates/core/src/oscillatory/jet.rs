//! Truncated Taylor series at a point, for exact derivatives of composed functions.

use std::ops::{Add, Mul, Neg, Sub};

/// Taylor coefficients c_j = f^{(j)}(t)/j! for j <= order.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    c: Vec<f64>,
}

impl Jet {
    pub fn constant(v: f64, order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        c[0] = v;
        Jet { c }
    }

    /// The identity function at t.
    pub fn variable(t: f64, order: usize) -> Self {
        let mut j = Jet::constant(t, order);
        if order >= 1 {
            j.c[1] = 1.0;
        }
        j
    }

    pub fn from_coefficients(c: Vec<f64>) -> Self {
        assert!(!c.is_empty(), "a jet needs at least one coefficient");
        Jet { c }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.c
    }

    pub fn coefficient(&self, j: usize) -> f64 {
        self.c.get(j).copied().unwrap_or(0.0)
    }

    /// f^{(j)}(t).
    pub fn derivative(&self, j: usize) -> f64 {
        self.coefficient(j) * (1..=j).map(|i| i as f64).product::<f64>()
    }

    pub fn map_coefficients(&self, f: impl Fn(usize, f64) -> f64) -> Jet {
        Jet { c: self.c.iter().enumerate().map(|(j, &v)| f(j, v)).collect() }
    }

    pub fn exp(&self) -> Jet {
        let n = self.c.len();
        let mut e = vec![0.0; n];
        e[0] = self.c[0].exp();
        for m in 1..n {
            let s: f64 = (1..=m).map(|j| j as f64 * self.c[j] * e[m - j]).sum();
            e[m] = s / m as f64;
        }
        Jet { c: e }
    }

    pub fn sin_cos(&self) -> (Jet, Jet) {
        let n = self.c.len();
        let (mut s, mut c) = (vec![0.0; n], vec![0.0; n]);
        (s[0], c[0]) = self.c[0].sin_cos();
        for m in 1..n {
            let (mut a, mut b) = (0.0, 0.0);
            for j in 1..=m {
                a += j as f64 * self.c[j] * c[m - j];
                b += j as f64 * self.c[j] * s[m - j];
            }
            s[m] = a / m as f64;
            c[m] = -b / m as f64;
        }
        (Jet { c: s }, Jet { c })
    }

    pub fn recip(&self) -> Jet {
        let n = self.c.len();
        let mut r = vec![0.0; n];
        r[0] = 1.0 / self.c[0];
        for m in 1..n {
            let s: f64 = (1..=m).map(|j| self.c[j] * r[m - j]).sum();
            r[m] = -s * r[0];
        }
        Jet { c: r }
    }

    pub fn powi(&self, p: u32) -> Jet {
        let mut out = Jet::constant(1.0, self.order());
        for _ in 0..p {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, a: f64) -> Jet {
        self.map_coefficients(|_, v| a * v)
    }

    pub fn shift(&self, a: f64) -> Jet {
        let mut j = self.clone();
        j.c[0] += a;
        j
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, o: &Jet) -> Jet {
        let n = self.c.len().min(o.c.len());
        Jet { c: (0..n).map(|j| self.c[j] + o.c[j]).collect() }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, o: &Jet) -> Jet {
        let n = self.c.len().min(o.c.len());
        Jet { c: (0..n).map(|j| self.c[j] - o.c[j]).collect() }
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        let n = self.c.len().min(o.c.len());
        Jet { c: (0..n).map(|m| (0..=m).map(|j| self.c[j] * o.c[m - j]).sum()).collect() }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        &self + &o
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        &self - &o
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        &self * &o
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivatives_of_compositions() {
        let t = 0.7;
        let x = Jet::variable(t, 6);
        // d^j/dt^j e^{2t} = 2^j e^{2t}
        let e = x.scale(2.0).exp();
        for j in 0..=6 {
            assert!((e.derivative(j) - 2f64.powi(j as i32) * (2.0 * t).exp()).abs() < 1e-12 * e.derivative(j));
        }
        let (s, c) = x.sin_cos();
        let want_s = [t.sin(), t.cos(), -t.sin(), -t.cos()];
        for (j, w) in want_s.iter().enumerate() {
            assert!((s.derivative(j) - w).abs() < 1e-14);
            assert!((c.derivative(j + 1) + want_s[j]).abs() < 1e-14);
        }
        // 1/t: (-1)^j j! t^{-j-1}
        let r = x.recip();
        assert!((r.derivative(3) + 6.0 / t.powi(4)).abs() < 1e-10);
        let p = x.powi(3);
        assert!((p.derivative(2) - 6.0 * t).abs() < 1e-14);
        assert_eq!(p.derivative(4), 0.0);
    }
}
