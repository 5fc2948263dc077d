//! Normalised Hecke eigenforms and the coefficients of their symmetric square lift.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::special::arith::{divisors, factorize, gcd, mobius, spf_table, tau};

/// Whether the eigenvalues were produced from rational data or through a numeric root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum CoefficientField {
    Rational,
    Numeric { degree: usize },
}

#[derive(Debug, Clone)]
pub struct HeckeEigenform {
    pub weight: u32,
    /// position within the eigenbasis (ascending λ(2))
    pub index: usize,
    pub coefficient_field_tag: CoefficientField,
    /// λ(p) for primes p <= prime_bound, indexed by p (zero elsewhere)
    lambda_p: Vec<f64>,
    /// λ(n) for n <= table length - 1
    lambda: Vec<f64>,
    pub sym2_l1: f64,
    pub a1_squared: f64,
}

/// λ(p^a) from λ(p) by the Hecke recursion.
pub fn prime_power_lambda(lp: f64, a: u32) -> f64 {
    let (mut prev, mut cur) = (1.0, lp);
    if a == 0 {
        return 1.0;
    }
    for _ in 1..a {
        let next = lp * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Completes a table of prime values into a multiplicative table on [0, n]: `f(p, a)` gives
/// the value at p^a.
fn multiplicative_table(n: usize, spf: &[u32], f: impl Fn(u64, u32) -> f64) -> Vec<f64> {
    let mut t = vec![0.0; n + 1];
    if n >= 1 {
        t[1] = 1.0;
    }
    for m in 2..=n {
        let p = spf[m] as usize;
        let mut rest = m / p;
        let mut a = 1;
        while rest % p == 0 {
            rest /= p;
            a += 1;
        }
        t[m] = t[rest] * f(p as u64, a);
    }
    t
}

impl HeckeEigenform {
    /// Builds the eigenvalue tables from λ(p) for every prime p <= bound. The L-value fields
    /// are left at zero and filled in by the eigenbasis builder.
    pub fn from_prime_lambdas(
        weight: u32,
        index: usize,
        bound: usize,
        primes: &[u64],
        values: &[f64],
        tag: CoefficientField,
    ) -> Self {
        let mut lambda_p = vec![0.0; bound + 1];
        for (&p, &v) in primes.iter().zip(values) {
            lambda_p[p as usize] = v;
        }
        let spf = spf_table(bound);
        let lambda = multiplicative_table(bound, &spf, |p, a| {
            prime_power_lambda(lambda_p[p as usize], a)
        });
        HeckeEigenform {
            weight,
            index,
            coefficient_field_tag: tag,
            lambda_p,
            lambda,
            sym2_l1: 0.0,
            a1_squared: 0.0,
        }
    }

    pub fn set_sym2_l1(&mut self, l1: f64) {
        self.sym2_l1 = l1;
        self.a1_squared = 2.0 * std::f64::consts::PI.powi(2)
            / (l1 * crate::special::ln_gamma(self.weight as f64).exp());
    }

    /// ln |a_f(1)|² = ln(2π²) - ln L(1, sym² f) - ln Γ(k), safe for large k.
    pub fn ln_a1_squared(&self) -> f64 {
        (2.0 * std::f64::consts::PI.powi(2)).ln()
            - self.sym2_l1.ln()
            - crate::special::ln_gamma(self.weight as f64)
    }

    /// Every prime up to this bound has stored data.
    pub fn prime_bound(&self) -> u64 {
        self.lambda_p.len() as u64 - 1
    }

    pub fn table_len(&self) -> usize {
        self.lambda.len()
    }

    /// λ(p) for prime p.
    pub fn lambda_prime(&self, p: u64) -> Result<f64> {
        self.lambda_p
            .get(p as usize)
            .copied()
            .ok_or(Error::ExtendTable { prime: p, bound: self.prime_bound() })
    }

    /// λ(n) through multiplicativity and the prime-power recursion.
    pub fn lambda_extended(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return Err(Error::Domain("λ(0) undefined".into()));
        }
        if let Some(&v) = self.lambda.get(n as usize) {
            return Ok(v);
        }
        let mut v = 1.0;
        for (p, a) in factorize(n) {
            v *= prime_power_lambda(self.lambda_prime(p)?, a);
        }
        Ok(v)
    }

    /// Dense λ(n) slice (index n), for hot loops.
    pub fn lambda_table(&self) -> &[f64] {
        &self.lambda
    }

    /// Dense table of λ(n²) for n <= x.
    pub fn lambda_square_table(&self, x: usize) -> Result<Vec<f64>> {
        self.check_bound(x as u64)?;
        let spf = spf_table(x);
        Ok(multiplicative_table(x, &spf, |p, a| {
            prime_power_lambda(self.lambda_p[p as usize], 2 * a)
        }))
    }

    /// Dense table of A(n, 1) = Σ_{d² | n} λ((n/d²)²) for n <= x.
    pub fn sym2_table(&self, x: usize) -> Result<Vec<f64>> {
        self.check_bound(x as u64)?;
        let spf = spf_table(x);
        Ok(multiplicative_table(x, &spf, |p, a| {
            let lp = self.lambda_p[p as usize];
            (0..=a / 2)
                .map(|j| prime_power_lambda(lp, 2 * (a - 2 * j)))
                .sum()
        }))
    }

    fn check_bound(&self, x: u64) -> Result<()> {
        if x > self.prime_bound() {
            let p = crate::special::arith::primes_up_to(x as usize)
                .into_iter()
                .find(|&p| p > self.prime_bound())
                .unwrap_or(x);
            return Err(Error::ExtendTable { prime: p, bound: self.prime_bound() });
        }
        Ok(())
    }

    /// Largest residual |λ(m)λ(n) - Σ_{d|(m,n)} λ(mn/d²)| / (τ(m)τ(n)) over mn <= limit.
    pub fn hecke_relation_residual(&self, limit: u64) -> Result<f64> {
        let mut worst = 0.0f64;
        for m in 1..=limit {
            for n in m..=limit / m {
                let lhs = self.lambda_extended(m)? * self.lambda_extended(n)?;
                let mut rhs = 0.0;
                for d in divisors(gcd(m as i64, n as i64) as u64) {
                    rhs += self.lambda_extended(m * n / (d * d))?;
                }
                worst = worst.max((lhs - rhs).abs() / (tau(m) * tau(n)) as f64);
            }
        }
        Ok(worst)
    }

    /// Largest |λ(n)| / τ(n) over the dense table; at most 1 by Deligne.
    pub fn deligne_ratio(&self) -> f64 {
        self.lambda
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, v)| v.abs() / tau(n as u64) as f64)
            .fold(0.0, f64::max)
    }
}

/// The coefficients A(m, n) of sym² f, cached on demand.
#[derive(Debug)]
pub struct SymSquareCoefficients<'a> {
    pub parent: &'a HeckeEigenform,
    cache: RwLock<HashMap<(u64, u64), f64>>,
}

impl<'a> SymSquareCoefficients<'a> {
    pub fn new(parent: &'a HeckeEigenform) -> Self {
        SymSquareCoefficients { parent, cache: RwLock::new(HashMap::new()) }
    }

    fn a_n1(&self, n: u64) -> Result<f64> {
        let mut v = 1.0;
        for (p, a) in factorize(n) {
            let lp = self.parent.lambda_prime(p)?;
            v *= (0..=a / 2)
                .map(|j| prime_power_lambda(lp, 2 * (a - 2 * j)))
                .sum::<f64>();
        }
        Ok(v)
    }

    /// A(m, n) = Σ_{d | (m,n)} μ(d) A(m/d, 1) A(1, n/d).
    pub fn get(&self, m: u64, n: u64) -> Result<f64> {
        let key = (m.min(n), m.max(n));
        if let Some(&v) = self.cache.read().unwrap().get(&key) {
            return Ok(v);
        }
        let g = gcd(m as i64, n as i64) as u64;
        let mut v = 0.0;
        for d in divisors(g) {
            let mu = mobius(d);
            if mu != 0 {
                v += mu as f64 * self.a_n1(m / d)? * self.a_n1(n / d)?;
            }
        }
        self.cache.write().unwrap().insert(key, v);
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> HeckeEigenform {
        let primes = crate::special::arith::primes_up_to(50);
        let vals: Vec<f64> = primes.iter().map(|&p| ((p as f64).sin()) * 1.5).collect();
        HeckeEigenform::from_prime_lambdas(12, 0, 50, &primes, &vals, CoefficientField::Rational)
    }

    #[test]
    fn recursion_and_tables() {
        let f = toy();
        let l2 = f.lambda_extended(2).unwrap();
        assert_eq!(f.lambda_extended(1).unwrap(), 1.0);
        assert!((f.lambda_extended(4).unwrap() - (l2 * l2 - 1.0)).abs() < 1e-15);
        assert!(f.hecke_relation_residual(50).unwrap() < 1e-12);
        let big = f.lambda_extended(47 * 47 * 43).unwrap();
        let want = prime_power_lambda(f.lambda_prime(47).unwrap(), 2) * f.lambda_prime(43).unwrap();
        assert!((big - want).abs() < 1e-14);
        assert!(matches!(f.lambda_extended(53), Err(Error::ExtendTable { prime: 53, .. })));
    }

    #[test]
    fn sym2_coefficients() {
        let f = toy();
        let a = SymSquareCoefficients::new(&f);
        assert_eq!(a.get(1, 1).unwrap(), 1.0);
        let l16 = f.lambda_extended(16).unwrap();
        assert!((a.get(4, 1).unwrap() - (l16 + 1.0)).abs() < 1e-14);
        let t = f.sym2_table(40).unwrap();
        for n in 1..=40u64 {
            assert!((t[n as usize] - a.get(n, 1).unwrap()).abs() < 1e-12);
            assert!((a.get(n, 6).unwrap() - a.get(6, n).unwrap()).abs() == 0.0);
        }
        let sq = f.lambda_square_table(40).unwrap();
        for n in 1..=40u64 {
            assert!((sq[n as usize] - f.lambda_extended(n * n).unwrap()).abs() < 1e-10);
        }
    }
}
