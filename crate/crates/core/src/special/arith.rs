//! Elementary arithmetic functions and exponential sums.

use num_integer::Integer;
use std::f64::consts::PI;

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Inverse of `a` modulo `m` (m >= 1), if it exists. Result in [0, m).
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let e = a.rem_euclid(m).extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m))
}

/// Prime factorisation by trial division, as (prime, exponent) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1);
    let mut s = 1;
    for (_, e) in factorize(n) {
        if e > 1 {
            return 0;
        }
        s = -s;
    }
    s
}

/// Number of divisors τ(n).
pub fn tau(n: u64) -> u64 {
    factorize(n).iter().map(|&(_, e)| e as u64 + 1).product()
}

/// The least C with τ(n) <= C n^ε for all n: Π_p max_a (a+1) p^{-aε}, where only
/// p < 2^{1/ε} contribute a factor above one.
pub fn divisor_bound_constant(eps: f64) -> f64 {
    assert!(eps > 0.0 && eps <= 1.0, "divisor_bound_constant needs 0 < eps <= 1");
    let p_max = 2f64.powf(1.0 / eps).ceil() as usize;
    primes_up_to(p_max)
        .into_iter()
        .map(|p| {
            (0..200)
                .map(|a| (a as f64 + 1.0) * (p as f64).powf(-(a as f64) * eps))
                .fold(1.0, f64::max)
        })
        .product()
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Sorted list of positive divisors.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize(n) {
        let len = ds.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                ds.push(ds[i] * pk);
            }
        }
    }
    ds.sort_unstable();
    ds
}

/// Primes up to `n` (inclusive) by the sieve of Eratosthenes.
pub fn primes_up_to(n: usize) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let mut is = vec![true; n + 1];
    is[0] = false;
    is[1] = false;
    let mut i = 2;
    while i * i <= n {
        if is[i] {
            let mut j = i * i;
            while j <= n {
                is[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    is.iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i as u64))
        .collect()
}

/// Smallest-prime-factor table on [0, n].
pub fn spf_table(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// e(r / c) = exp(2πi r/c) with exact reduction of r modulo c.
pub fn e_frac(r: i64, c: i64) -> (f64, f64) {
    let t = 2.0 * PI * (r.rem_euclid(c) as f64) / c as f64;
    (t.cos(), t.sin())
}

/// Kloosterman sum arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KloostermanQuery {
    pub m: i64,
    pub n: i64,
    pub c: i64,
}

/// S(m, n; c) = Σ_{d mod c, (d,c)=1} e((m d + n d̄)/c), evaluated by direct summation.
/// The sum is real; the imaginary part is checked against 1e-12 in debug builds.
pub fn kloosterman(q: KloostermanQuery) -> f64 {
    assert!(q.c >= 1, "modulus must be positive");
    let c = q.c;
    if c == 1 {
        return 1.0;
    }
    let (mut re, mut im) = (0.0, 0.0);
    for d in 1..c {
        if let Some(dbar) = mod_inverse(d, c) {
            let r = (q.m.rem_euclid(c) * d + q.n.rem_euclid(c) * dbar).rem_euclid(c);
            let (a, b) = e_frac(r, c);
            re += a;
            im += b;
        }
    }
    debug_assert!(im.abs() < 1e-9 * (c as f64), "imaginary part {im}");
    re
}

/// Exponential sums modulo a fixed c with cached unit-circle table and inverses.
#[derive(Debug, Clone)]
pub struct ModTable {
    pub c: i64,
    cos: Vec<f64>,
    sin: Vec<f64>,
    /// (d, d̄) for d coprime to c
    pub units: Vec<(i64, i64)>,
}

impl ModTable {
    pub fn new(c: i64) -> Self {
        assert!(c >= 1);
        let (cos, sin) = (0..c)
            .map(|r| {
                let t = 2.0 * PI * r as f64 / c as f64;
                (t.cos(), t.sin())
            })
            .unzip();
        let units = (0..c)
            .filter_map(|d| mod_inverse(d, c).map(|db| (d, db)))
            .filter(|&(d, _)| c == 1 || d != 0)
            .collect();
        ModTable { c, cos, sin, units }
    }

    #[inline]
    pub fn e(&self, r: i64) -> (f64, f64) {
        let i = r.rem_euclid(self.c) as usize;
        (self.cos[i], self.sin[i])
    }

    /// Complex Kloosterman sum S(m, n; c) (imaginary part vanishes up to rounding).
    pub fn kloosterman(&self, m: i64, n: i64) -> (f64, f64) {
        let c = self.c;
        let (m, n) = (m.rem_euclid(c), n.rem_euclid(c));
        self.units.iter().fold((0.0, 0.0), |(re, im), &(d, db)| {
            let (a, b) = self.e(m * d + n * db);
            (re + a, im + b)
        })
    }
}

/// Ramanujan sum r_c(r) = Σ_{f | (c, r)} f μ(c/f).
pub fn ramanujan_sum(r: i64, c: i64) -> i64 {
    assert!(c >= 1);
    let g = if r == 0 { c } else { gcd(r.abs(), c) };
    divisors(g as u64)
        .into_iter()
        .map(|f| f as i64 * mobius(c as u64 / f))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(tau(12), 6);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(36), 12);
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(2, 4), None);
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }

    #[test]
    fn divisor_bound_holds() {
        for eps in [0.25, 1.0 / 3.0, 0.5] {
            let c = divisor_bound_constant(eps);
            let worst = (1..200_000u64).map(|n| tau(n) as f64 / (n as f64).powf(eps)).fold(0.0, f64::max);
            assert!(worst <= c * (1.0 + 1e-12) && worst > 0.9 * c, "{eps}: {worst} {c}");
        }
        assert!((divisor_bound_constant(0.5) - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn kloosterman_examples() {
        assert_eq!(kloosterman(KloostermanQuery { m: 5, n: -3, c: 1 }), 1.0);
        let s = kloosterman(KloostermanQuery { m: 1, n: 1, c: 3 });
        assert!((s + 1.0).abs() < 1e-14);
        for c in 1..40 {
            for m in -3..5 {
                for n in 0..6 {
                    let a = kloosterman(KloostermanQuery { m, n, c });
                    let b = kloosterman(KloostermanQuery { m: n, n: m, c });
                    assert!(a.abs() <= c as f64 + 1e-9);
                    assert!((a - b).abs() < 1e-10);
                    let (re, im) = ModTable::new(c).kloosterman(m, n);
                    assert!((re - a).abs() < 1e-10 && im.abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn kloosterman_twisted_multiplicativity() {
        for c1 in 1..=60i64 {
            for c2 in 1..=60 / c1 {
                if gcd(c1, c2) != 1 {
                    continue;
                }
                let c1b = mod_inverse(c1, c2).unwrap();
                let c2b = mod_inverse(c2, c1).unwrap();
                for (m, n) in [(1, 1), (2, 3), (5, -7), (0, 4)] {
                    let lhs = kloosterman(KloostermanQuery { m, n, c: c1 * c2 });
                    let a = kloosterman(KloostermanQuery { m: m * c2b * c2b, n, c: c1 });
                    let b = kloosterman(KloostermanQuery { m: m * c1b * c1b, n, c: c2 });
                    assert!((lhs - a * b).abs() < 1e-9, "{c1} {c2} {m} {n}");
                }
            }
        }
    }

    #[test]
    fn ramanujan_examples() {
        for r in -5..10 {
            assert_eq!(ramanujan_sum(r, 1), 1);
        }
        assert_eq!(ramanujan_sum(2, 4), -2);
        for c in 1..=100 {
            assert_eq!(ramanujan_sum(0, c), euler_phi(c as u64) as i64);
        }
        // direct summation
        for c in 1..30i64 {
            for r in -4..12 {
                let t = ModTable::new(c);
                let direct: f64 = t.units.iter().map(|&(d, _)| t.e(d * r).0).sum();
                assert!((direct - ramanujan_sum(r, c) as f64).abs() < 1e-10);
            }
        }
    }
}
