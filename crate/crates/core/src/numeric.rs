//! Deterministic summation and small numeric helpers shared across modules.

use rayon::prelude::*;

pub const ZETA2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;

/// Terms per chunk in [`par_sum`]; chunk boundaries do not depend on the thread count.
pub const CHUNK: usize = 2048;

/// Pairwise (cascade) summation.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 16 {
        return xs.iter().sum();
    }
    let (a, b) = xs.split_at(xs.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

/// Σ_{i < n} f(i), evaluated in parallel with a reduction order fixed by `CHUNK` alone.
pub fn par_sum<F>(n: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let chunks: Vec<f64> = (0..n.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(n);
            let v: Vec<f64> = (lo..hi).map(&f).collect();
            pairwise_sum(&v)
        })
        .collect();
    pairwise_sum(&chunks)
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * z * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * pn - pn1) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// exp(4 - 1/((y-1)(2-y))) on (1, 2), zero elsewhere; equals 1 at y = 3/2.
pub fn omega2(y: f64) -> f64 {
    if y <= 1.0 || y >= 2.0 {
        return 0.0;
    }
    (4.0 - 1.0 / ((y - 1.0) * (2.0 - y))).exp()
}

/// Solves a small dense system by Gaussian elimination with partial pivoting.
pub fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> crate::Result<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("nonempty");
        if a[piv][col].abs() < 1e-300 {
            return Err(crate::Error::Precondition("singular linear system".into()));
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let m = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= m * a[col][c];
            }
            b[r] -= m * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_system() {
        let x = solve_linear(vec![vec![0.0, 2.0], vec![3.0, 1.0]], vec![4.0, 5.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-15 && (x[1] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        for n in [1usize, 2, 5, 16, 33] {
            let (x, w) = gauss_legendre(n);
            for deg in 0..(2 * n) {
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg as i32)).sum();
                let exact = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
                assert!((q - exact).abs() < 1e-13, "n={n} deg={deg}");
            }
        }
    }

    #[test]
    fn par_sum_matches_serial_and_is_thread_independent() {
        let f = |i: usize| 1.0 / ((i + 1) as f64).powi(2);
        let a = par_sum(100_000, f);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let b = pool.install(|| par_sum(100_000, f));
        assert_eq!(a.to_bits(), b.to_bits());
        assert!((a - (ZETA2 - 1.0 / 100_000.0)).abs() < 1e-9);
    }

    #[test]
    fn bump_shape() {
        assert_eq!(omega2(1.5), 1.0);
        assert_eq!(omega2(1.0), 0.0);
        assert_eq!(omega2(2.5), 0.0);
        assert!(omega2(1.01) < 1e-40);
    }
}
