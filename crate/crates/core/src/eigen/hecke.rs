//! Hecke matrices on the echelon basis and their exact diagonalisation.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::qexp::{hecke_tp_coeff, QExpansion};
use crate::error::{Error, Result};

/// Bits of precision to which eigenvalues of T_p are isolated.
pub const ROOT_BITS: u64 = 200;

type Poly = Vec<BigRational>;

/// Matrix of T_p on an echelon basis: entry (i, j) is the coefficient of q^{i+1} in T_p b_j.
pub fn hecke_matrix(basis: &[QExpansion], p: u64) -> Result<Vec<Vec<BigInt>>> {
    let d = basis.len();
    let need = p as usize * d;
    if basis.iter().any(|b| b.length() < need) {
        return Err(Error::InsufficientPrecision {
            needed: need,
            given: basis.iter().map(|b| b.length()).min().unwrap_or(0),
        });
    }
    Ok((1..=d)
        .map(|i| basis.iter().map(|b| hecke_tp_coeff(b, p, i)).collect())
        .collect())
}

/// Monic characteristic polynomial, coefficients from constant term upwards (Faddeev-LeVerrier).
pub fn char_poly(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = m.len();
    let a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::one();
    let mut mk: Vec<Vec<BigRational>> = identity(n);
    for k in 1..=n {
        let am = matmul(&a, &mk);
        let tr: BigRational = (0..n).map(|i| am[i][i].clone()).sum();
        c[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
        mk = am;
        for i in 0..n {
            mk[i][i] += &c[n - k];
        }
    }
    c.into_iter()
        .map(|x| {
            assert!(x.is_integer());
            x.to_integer()
        })
        .collect()
}

fn identity(n: usize) -> Vec<Vec<BigRational>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect()
}

fn matmul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|l| &a[i][l] * &b[l][j]).sum())
                .collect()
        })
        .collect()
}

fn eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn trim(p: &mut Poly) {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
}

fn poly_rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - 1 - db;
        let f = r.last().unwrap() / lead;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &f * bi;
        }
        r.pop();
        if r.is_empty() {
            r.push(BigRational::zero());
        }
        trim(&mut r);
    }
    trim(&mut r);
    r
}

fn derivative(p: &Poly) -> Poly {
    let mut d: Poly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    if d.is_empty() {
        d.push(BigRational::zero());
    }
    d
}

fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), derivative(p)];
    loop {
        let n = seq.len();
        let r = poly_rem(&seq[n - 2], &seq[n - 1]);
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq
}

fn sign_changes(seq: &[Poly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in seq {
        let v = eval(p, x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// All real roots of a squarefree integer polynomial, isolated by Sturm sequences and
/// refined by bisection to width 2^-bits. Returned ascending as dyadic rationals.
pub fn real_roots(coeffs: &[BigInt], bits: u64) -> Result<Vec<BigRational>> {
    let p: Poly = coeffs
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let deg = p.len() - 1;
    let seq = sturm_sequence(&p);
    if seq.last().map(|g| g.len() > 1).unwrap_or(false) {
        return Err(Error::EigenSolver {
            k: 0,
            reason: "repeated eigenvalue".into(),
            condition: f64::INFINITY,
        });
    }
    let lead = p[deg].abs();
    let bound = p[..deg]
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a })
        + BigRational::one();
    let mut stack = vec![(-bound.clone(), bound)];
    let mut isolated = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        let n = sign_changes(&seq, &lo) - sign_changes(&seq, &hi);
        match n {
            0 => {}
            1 => isolated.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    let eps = BigRational::new(BigInt::one(), BigInt::one() << bits);
    let two = BigRational::from_integer(BigInt::from(2));
    let mut roots: Vec<BigRational> = isolated
        .into_iter()
        .map(|(mut lo, mut hi)| {
            let slo = eval(&p, &lo).is_positive();
            while &hi - &lo > eps {
                let mid = (&lo + &hi) / &two;
                let v = eval(&p, &mid);
                if v.is_zero() {
                    return mid;
                }
                if v.is_positive() == slo {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            (lo + hi) / &two
        })
        .collect();
    roots.sort();
    if roots.len() != deg {
        return Err(Error::EigenSolver {
            k: 0,
            reason: format!("{} real roots for degree {deg}", roots.len()),
            condition: f64::INFINITY,
        });
    }
    Ok(roots)
}

/// Eigenvector of `m` for the (approximate) eigenvalue `lambda`, normalised with first entry 1.
pub fn eigenvector(m: &[Vec<BigInt>], lambda: &BigRational) -> Result<Vec<BigRational>> {
    let d = m.len();
    if d == 1 {
        return Ok(vec![BigRational::one()]);
    }
    let r = |x: &BigInt| BigRational::from_integer(x.clone());
    // rows 1..d of (M - λ) restricted to unknowns v_1..v_{d-1}, with v_0 = 1
    let mut a: Vec<Vec<BigRational>> = (1..d)
        .map(|i| {
            let mut row: Vec<BigRational> = (1..d)
                .map(|j| if i == j { r(&m[i][j]) - lambda } else { r(&m[i][j]) })
                .collect();
            row.push(-r(&m[i][0]));
            row
        })
        .collect();
    let n = d - 1;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| a[x][col].abs().cmp(&a[y][col].abs()))
            .unwrap();
        if a[piv][col].is_zero() {
            return Err(Error::EigenSolver {
                k: 0,
                reason: "singular eigenvector system".into(),
                condition: f64::INFINITY,
            });
        }
        a.swap(col, piv);
        for row in 0..n {
            if row != col && !a[row][col].is_zero() {
                let f = &a[row][col] / &a[col][col];
                for c in col..=n {
                    let t = &f * &a[col][c];
                    a[row][c] -= t;
                }
            }
        }
    }
    let mut v = vec![BigRational::one()];
    v.extend((0..n).map(|i| &a[i][n] / &a[i][i]));
    Ok(v)
}

/// Nearest f64 to a rational.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let (n, d) = (x.numer(), x.denom());
    let shift = 64i64 - (n.bits() as i64 - d.bits() as i64);
    let q = if shift >= 0 {
        (n << shift as u64).div_floor(d)
    } else {
        n.div_floor(&(d << (-shift) as u64))
    };
    q.to_f64().unwrap() * 2f64.powi(-shift as i32)
}

/// floor(10^digits · a / p^{(k-1)/2}) toward zero, as a decimal string with `digits` places.
pub fn normalized_decimal(a: &BigRational, p: u64, k: u32, digits: u32) -> String {
    let num = a.numer().abs();
    let den = a.denom().clone();
    let scale = BigInt::from(10).pow(2 * digits);
    let top = &num * &num * scale;
    let bottom = &den * &den * BigInt::from(p).pow(k - 1);
    let v = (top / bottom).sqrt();
    let neg = a.numer().sign() == Sign::Minus;
    let s = v.to_string();
    let digits = digits as usize;
    let s = if s.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
    } else {
        s
    };
    let (int, frac) = s.split_at(s.len() - digits);
    format!("{}{}.{}", if neg { "-" } else { "" }, int, frac)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::qexp::victor_miller_basis;

    #[test]
    fn weight_24_t2() {
        let b = victor_miller_basis(24, 10).unwrap();
        let m = hecke_matrix(&b, 2).unwrap();
        let cp = char_poly(&m);
        // x^2 - 1080 x - 20468736
        assert_eq!(cp[2], BigInt::from(1));
        assert_eq!(cp[1], BigInt::from(-1080));
        assert_eq!(cp[0], BigInt::from(-20_468_736i64));
        let roots = real_roots(&cp, ROOT_BITS).unwrap();
        let disc = (1080f64 * 1080.0 + 4.0 * 20_468_736.0).sqrt();
        let want = [(1080.0 - disc) / 2.0, (1080.0 + disc) / 2.0];
        for (r, w) in roots.iter().zip(want) {
            assert!((rational_to_f64(r) - w).abs() < 1e-9 * w.abs());
        }
        for r in &roots {
            let v = eigenvector(&m, r).unwrap();
            // (M v)_0 = λ v_0
            let mv: BigRational = (0..2)
                .map(|j| BigRational::from_integer(m[0][j].clone()) * &v[j])
                .sum();
            let res = rational_to_f64(&(mv - r));
            assert!(res.abs() < 1e-40);
        }
    }

    #[test]
    fn decimal_formatting() {
        let a = BigRational::from_integer(BigInt::from(-24));
        let s = normalized_decimal(&a, 2, 12, 30);
        assert!(s.starts_with("-0.5303300858899106"), "{s}");
        assert_eq!(s.len(), 33);
        let x = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(rational_to_f64(&x), 1.0 / 3.0);
    }

    #[test]
    fn repeated_roots_rejected() {
        let p = vec![BigInt::from(1), BigInt::from(-2), BigInt::from(1)];
        assert!(matches!(real_roots(&p, 50), Err(Error::EigenSolver { .. })));
    }
}
