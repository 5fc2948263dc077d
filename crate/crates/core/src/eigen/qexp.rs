//! Exact integer q-expansions: eta powers, Eisenstein series, the Victor-Miller basis.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Truncated q-expansion with exact coefficients; `coeffs[n]` is the coefficient of q^n
/// for 0 <= n <= length.
#[derive(Debug, Clone, PartialEq)]
pub struct QExpansion {
    pub weight: u32,
    pub coeffs: Vec<BigInt>,
}

impl QExpansion {
    pub fn length(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }
}

/// dim S_k for SL2(Z).
pub fn cusp_dimension(k: u32) -> usize {
    if k % 2 == 1 || k < 12 {
        return 0;
    }
    let d = (k / 12) as usize;
    if k % 12 == 2 {
        d - 1
    } else {
        d
    }
}

/// Sparse Euler product Π(1 - q^m) up to q^n as (exponent, sign) pairs.
pub fn pentagonal_terms(n: usize) -> Vec<(usize, i64)> {
    let mut out = vec![(0, 1)];
    let mut j = 1i64;
    loop {
        let a = (j * (3 * j - 1) / 2) as usize;
        if a > n {
            break;
        }
        let s = if j % 2 == 0 { 1 } else { -1 };
        out.push((a, s));
        let b = (j * (3 * j + 1) / 2) as usize;
        if b <= n {
            out.push((b, s));
        }
        j += 1;
    }
    out.sort_unstable();
    out
}

/// Coefficients of Π(1 - q^m)^alpha up to q^n, by the power recurrence on the sparse
/// pentagonal series: n g_n = Σ_j ((alpha+1) j - n) p_j g_{n-j}.
pub fn eta_product_power(alpha: u32, n: usize) -> Vec<BigInt> {
    let p = pentagonal_terms(n);
    let a1 = BigInt::from(alpha + 1);
    let mut g: Vec<BigInt> = Vec::with_capacity(n + 1);
    g.push(BigInt::one());
    for m in 1..=n {
        let mut acc = BigInt::zero();
        for &(j, s) in p.iter().skip(1) {
            if j > m {
                break;
            }
            let w = &a1 * j - m;
            let t = &w * &g[m - j];
            if s > 0 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        debug_assert!((&acc % m).is_zero());
        g.push(acc / m);
    }
    g
}

/// Ramanujan τ(n) for 1 <= n <= len, with τ at index n (index 0 unused), in i128.
/// Exact for len up to a few 10^5.
pub fn delta_tau_i128(len: usize) -> Vec<i128> {
    let n = len.saturating_sub(1);
    let p = pentagonal_terms(n);
    let mut g = vec![0i128; n + 1];
    g[0] = 1;
    for m in 1..=n {
        let mut acc: i128 = 0;
        for &(j, s) in p.iter().skip(1) {
            if j > m {
                break;
            }
            let w = 25 * j as i128 - m as i128;
            let t = w * g[m - j];
            acc = if s > 0 { acc + t } else { acc - t };
        }
        debug_assert_eq!(acc % m as i128, 0);
        g[m] = acc / m as i128;
    }
    let mut tau = vec![0i128; len + 1];
    tau[1..=len].copy_from_slice(&g[..len]);
    tau
}

fn divisor_power_sums(e: u32, n: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::zero(); n + 1];
    for d in 1..=n {
        let pd = BigInt::from(d).pow(e);
        let mut m = d;
        while m <= n {
            s[m] += &pd;
            m += d;
        }
    }
    s
}

/// E_4 = 1 + 240 Σ σ_3(n) q^n.
pub fn eisenstein_e4(n: usize) -> Vec<BigInt> {
    let mut s = divisor_power_sums(3, n);
    s.iter_mut().for_each(|c| *c *= 240);
    s[0] = BigInt::one();
    s
}

/// E_6 = 1 - 504 Σ σ_5(n) q^n.
pub fn eisenstein_e6(n: usize) -> Vec<BigInt> {
    let mut s = divisor_power_sums(5, n);
    s.iter_mut().for_each(|c| *c *= -504);
    s[0] = BigInt::one();
    s
}

/// Product of two series truncated at q^n.
pub fn mul_trunc(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); n + 1];
    for (i, ai) in a.iter().enumerate().take(n + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

const WORD: u64 = 32;

/// Product of two series truncated at q^n by Kronecker substitution: both series are packed
/// into single integers with fixed-width slots and multiplied once.
pub fn mul_kronecker(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let a = &a[..a.len().min(n + 1)];
    let b = &b[..b.len().min(n + 1)];
    if a.is_empty() || b.is_empty() {
        return vec![BigInt::zero(); n + 1];
    }
    let ba = a.iter().map(|x| x.bits()).max().unwrap_or(0);
    let bb = b.iter().map(|x| x.bits()).max().unwrap_or(0);
    let terms = a.len().min(b.len()) as u64;
    let need = ba + bb + (64 - terms.leading_zeros() as u64) + 2;
    let words = need.div_ceil(WORD) as usize;
    let pa = pack(a, words);
    let pb = pack(b, words);
    let prod = pa * pb;
    unpack(&prod, words, n + 1)
}

fn pack(c: &[BigInt], words: usize) -> BigInt {
    let mut pos = vec![0u32; c.len() * words];
    let mut neg = vec![0u32; c.len() * words];
    for (i, x) in c.iter().enumerate() {
        let (sign, digits) = x.to_u32_digits();
        let dst = if sign == Sign::Minus { &mut neg } else { &mut pos };
        dst[i * words..i * words + digits.len()].copy_from_slice(&digits);
    }
    BigInt::from_biguint(Sign::Plus, BigUint::new(pos)) - BigInt::from_biguint(Sign::Plus, BigUint::new(neg))
}

fn unpack(x: &BigInt, words: usize, count: usize) -> Vec<BigInt> {
    let total = count * words;
    let neg = x.sign() == Sign::Minus;
    // two's complement digits of x, long enough for `count` slots
    let mut d = x.magnitude().to_u32_digits();
    d.resize(total.max(d.len()), 0);
    if neg {
        let mut carry = 1u64;
        for w in d.iter_mut() {
            let v = (!*w) as u64 + carry;
            *w = v as u32;
            carry = v >> 32;
        }
    }
    let half = 1u32 << 31;
    let mut out = Vec::with_capacity(count);
    let mut borrow = 0u32;
    for i in 0..count {
        let mut slot: Vec<u32> = d[i * words..(i + 1) * words].to_vec();
        // add the carry from the previous slot (balanced digits)
        let mut c = borrow as u64;
        for w in slot.iter_mut() {
            if c == 0 {
                break;
            }
            let v = *w as u64 + c;
            *w = v as u32;
            c = v >> 32;
        }
        let top_set = slot[words - 1] >= half || c > 0;
        let v = BigInt::from_biguint(Sign::Plus, BigUint::new(slot));
        if top_set && c == 0 {
            out.push(v - (BigInt::one() << (words as u64 * WORD)));
            borrow = 1;
        } else if c > 0 {
            // slot overflowed to exactly 2^width: value 0 with carry
            out.push(v);
            borrow = 1;
        } else {
            out.push(v);
            borrow = 0;
        }
    }
    out
}

/// base^e truncated at q^n by repeated squaring.
pub fn pow_kronecker(base: &[BigInt], e: u32, n: usize) -> Vec<BigInt> {
    let mut result = vec![BigInt::zero(); n + 1];
    result[0] = BigInt::one();
    let mut b: Vec<BigInt> = base[..base.len().min(n + 1)].to_vec();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_kronecker(&result, &b, n);
        }
        e >>= 1;
        if e > 0 {
            b = mul_kronecker(&b, &b, n);
        }
    }
    result
}

/// g = base^a truncated at q^n for a series with base[0] = 1.
pub fn series_power(base: &[BigInt], a: u32, n: usize) -> Vec<BigInt> {
    assert!(base[0].is_one());
    let mut g = Vec::with_capacity(n + 1);
    g.push(BigInt::one());
    let a1 = BigInt::from(a + 1);
    for m in 1..=n {
        let mut acc = BigInt::zero();
        for j in 1..=m.min(base.len() - 1) {
            if base[j].is_zero() {
                continue;
            }
            let w = &a1 * j - m;
            acc += w * &base[j] * &g[m - j];
        }
        let (q, r) = acc.div_rem(&BigInt::from(m));
        debug_assert!(r.is_zero());
        g.push(q);
    }
    g
}

/// Echelon basis of S_k to precision q^n: element i has coefficient δ_{ij} at q^j for
/// 1 <= j <= dim S_k.
pub fn victor_miller_basis(k: u32, n: usize) -> Result<Vec<QExpansion>> {
    if k % 2 == 1 || k < 12 || cusp_dimension(k) == 0 {
        return Err(Error::InvalidWeight(k as i64));
    }
    let d = cusp_dimension(k);
    if n < d {
        return Err(Error::InsufficientPrecision { needed: d, given: n });
    }
    let e4 = eisenstein_e4(n);
    let e6 = eisenstein_e6(n);
    let tau = delta_tau_i128(n);
    let mut delta: Vec<BigInt> = tau.iter().map(|&t| BigInt::from(t)).collect();
    delta[0] = BigInt::zero();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(d);
    let mut delta_j = delta.clone();
    for j in 1..=d {
        if j > 1 {
            delta_j = mul_kronecker(&delta_j, &delta, n);
        }
        let w = k as usize - 12 * j;
        let (a, b) = match w % 4 {
            0 => (w / 4, 0),
            _ => ((w - 6) / 4, 1),
        };
        let mut eis = pow_kronecker(&e4, a as u32, n);
        if b == 1 {
            eis = mul_kronecker(&eis, &e6, n);
        }
        rows.push(mul_kronecker(&delta_j, &eis, n));
    }
    // rows are unitriangular at q^1..q^d; clear the entries above the diagonal
    for i in (0..d).rev() {
        for r in 0..i {
            let f = rows[r][i + 1].clone();
            if f.is_zero() {
                continue;
            }
            let (lo, hi) = rows.split_at_mut(i);
            for (x, y) in lo[r].iter_mut().zip(hi[0].iter()) {
                *x -= &f * y;
            }
        }
    }
    Ok(rows
        .into_iter()
        .map(|coeffs| QExpansion { weight: k, coeffs })
        .collect())
}

/// Coefficient n of T_p applied to a weight-k expansion: a(pn) + p^{k-1} a(n/p).
pub fn hecke_tp_coeff(f: &QExpansion, p: u64, n: usize) -> BigInt {
    let p_us = p as usize;
    let mut v = f.coeffs[p_us * n].clone();
    if n % p_us == 0 {
        v += BigInt::from(p).pow(f.weight - 1) * &f.coeffs[n / p_us];
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let dims: Vec<usize> = (12..=40).step_by(2).map(cusp_dimension).collect();
        assert_eq!(dims, vec![1, 0, 1, 1, 1, 1, 2, 1, 2, 2, 2, 2, 3, 2, 3]);
    }

    #[test]
    fn delta_first_coefficients() {
        let b = victor_miller_basis(12, 10).unwrap();
        assert_eq!(b.len(), 1);
        let want = [0i64, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920];
        for (c, w) in b[0].coeffs.iter().zip(want) {
            assert_eq!(*c, BigInt::from(w));
        }
        let t = delta_tau_i128(10);
        for n in 1..=10 {
            assert_eq!(BigInt::from(t[n]), b[0].coeffs[n]);
        }
    }

    #[test]
    fn e4_squared_is_e8() {
        let e4 = eisenstein_e4(30);
        let sq = mul_trunc(&e4, &e4, 30);
        let e8 = divisor_power_sums(7, 30);
        for n in 1..=30 {
            assert_eq!(sq[n], &e8[n] * 480);
        }
        assert_eq!(series_power(&e4, 2, 30), sq);
    }

    #[test]
    fn kronecker_matches_schoolbook() {
        let e4 = eisenstein_e4(40);
        let e6 = eisenstein_e6(40);
        let eta = eta_product_power(24, 40);
        for (x, y) in [(&e4, &e6), (&eta, &e6), (&eta, &eta), (&e6, &e6)] {
            assert_eq!(mul_kronecker(x, y, 40), mul_trunc(x, y, 40));
        }
        let neg: Vec<BigInt> = (0..30).map(|i| BigInt::from(if i % 3 == 0 { -1 } else { 1 }) << (i * 7)).collect();
        assert_eq!(mul_kronecker(&neg, &e6, 29), mul_trunc(&neg, &e6, 29));
        assert_eq!(pow_kronecker(&e4, 5, 40), series_power(&e4, 5, 40));
    }

    #[test]
    fn echelon_form() {
        for k in [24u32, 36, 48] {
            let b = victor_miller_basis(k, 20).unwrap();
            let d = cusp_dimension(k);
            assert_eq!(b.len(), d);
            for (i, f) in b.iter().enumerate() {
                assert!(f.coeffs[0].is_zero());
                for j in 1..=d {
                    let want = if i + 1 == j { 1 } else { 0 };
                    assert_eq!(f.coeffs[j], BigInt::from(want));
                }
            }
        }
    }

    #[test]
    fn invalid_weights() {
        assert!(matches!(victor_miller_basis(10, 10), Err(Error::InvalidWeight(10))));
        assert!(matches!(victor_miller_basis(13, 10), Err(Error::InvalidWeight(13))));
        assert!(matches!(victor_miller_basis(14, 10), Err(Error::InvalidWeight(14))));
        assert!(matches!(
            victor_miller_basis(24, 1),
            Err(Error::InsufficientPrecision { needed: 2, given: 1 })
        ));
    }
}
