use cuspmass::eigen::qexp::delta_tau_i128;
use cuspmass::eigen::{hecke_eigenbasis, hecke_eigenbasis_cached, victor_miller_basis, SymSquareCoefficients};
use cuspmass::special::arith::tau;
use cuspmass::Error;

// L(s, sym² Δ) and ζ(s) from independent high-precision evaluations
const L_SYM2_1_6: f64 = 0.747606473107400523;
const L_SYM2_3: f64 = 0.901719803150885511;
const ZETA_1_6: f64 = 2.28576566568012963583;
const ZETA_3: f64 = 1.20205690315959428540;
const ZETA_3_2: f64 = 1.16677337098446699260;
const ZETA_6: f64 = 1.01734306198444913971;

#[test]
fn delta_eigenvalues_reproduce_ramanujan_tau() {
    let n = 100_000usize;
    let f = hecke_eigenbasis(12, n).unwrap().remove(0);
    let exact = delta_tau_i128(n + 1);
    for m in 1..=n {
        let got = f.lambda_extended(m as u64).unwrap() * (m as f64).powf(5.5);
        let t = exact[m] as f64;
        assert!((got - t).abs() <= 1e-12 * t.abs().max(1.0) + 1e-13 * (m as f64).powf(5.5), "n={m}: {got} vs {t}");
    }
}

#[test]
fn hecke_relations_and_deligne_for_several_weights() {
    for k in [12u32, 16, 18, 20, 22, 24, 26, 36] {
        for f in hecke_eigenbasis(k, 2000).unwrap() {
            assert!(f.hecke_relation_residual(2000).unwrap() <= 1e-10, "k={k}");
            assert!(f.deligne_ratio() <= 1.0 + 1e-12, "k={k}");
            let l2 = f.lambda_extended(2).unwrap();
            assert!((f.lambda_extended(4).unwrap() - (l2 * l2 - 1.0)).abs() < 1e-14);
        }
    }
}

#[test]
fn weight_24_has_two_conjugate_forms() {
    let b = hecke_eigenbasis(24, 100).unwrap();
    assert_eq!(b.len(), 2);
    // T_2 on S_24 has characteristic polynomial x² - 1080x - 20468736
    let (s, p) = (1080.0, -20468736.0);
    let a: Vec<f64> = b.iter().map(|f| f.lambda_extended(2).unwrap() * 2f64.powf(11.5)).collect();
    assert!(((a[0] + a[1]) / s - 1.0).abs() < 1e-12);
    assert!(((a[0] * a[1]) / p - 1.0).abs() < 1e-12);
}

#[test]
fn basis_errors() {
    assert_eq!(victor_miller_basis(10, 20).unwrap_err(), Error::InvalidWeight(10));
    assert!(matches!(victor_miller_basis(24, 1), Err(Error::InsufficientPrecision { .. })));
    let f = hecke_eigenbasis(12, 100).unwrap().remove(0);
    let big = f.prime_bound() * 10 + 1;
    // a prime far above the table
    let p = (big..).find(|&n| cuspmass::special::arith::factorize(n).len() == 1 && cuspmass::special::arith::factorize(n)[0].1 == 1).unwrap();
    assert!(matches!(f.lambda_extended(p), Err(Error::ExtendTable { prime, .. }) if prime == p));
}

fn d3(n: u64) -> f64 {
    cuspmass::special::arith::factorize(n).iter().map(|&(_, a)| ((a + 1) * (a + 2) / 2) as f64).product()
}

/// Σ_{m,n <= M} A(m,n) m^{-s1} n^{-s2} and a bound for the rest, from |A(m,n)| <= d₃(m) d₃(n).
fn truncated_double_series(a: &SymSquareCoefficients, m_max: u64, s1: f64, s2: f64, zeta1: f64, zeta2: f64) -> (f64, f64) {
    let mut sum = 0.0;
    for m in 1..=m_max {
        for n in 1..=m_max {
            sum += a.get(m, n).unwrap() * (m as f64).powf(-s1) * (n as f64).powf(-s2);
        }
    }
    let p1: f64 = (1..=m_max).map(|m| d3(m) * (m as f64).powf(-s1)).sum();
    let p2: f64 = (1..=m_max).map(|n| d3(n) * (n as f64).powf(-s2)).sum();
    (sum, zeta1.powi(3) * zeta2.powi(3) - p1 * p2)
}

#[test]
fn sym_square_dirichlet_series_identity() {
    let f = hecke_eigenbasis(12, 40_000).unwrap().remove(0);
    let a = SymSquareCoefficients::new(&f);
    assert_eq!(a.get(1, 1).unwrap(), 1.0);
    for (m, n) in [(2, 3), (4, 6), (12, 18), (9, 27)] {
        assert_eq!(a.get(m, n).unwrap(), a.get(n, m).unwrap());
    }
    let l = |n| f.lambda_extended(n).unwrap();
    assert!((a.get(4, 1).unwrap() - (l(16) + 1.0)).abs() < 1e-13);

    // α = β = 0.3: L(1.6)² / ζ(3.2)
    let (sum, tail) = truncated_double_series(&a, 200, 1.6, 1.6, ZETA_1_6, ZETA_1_6);
    let want = L_SYM2_1_6 * L_SYM2_1_6 / ZETA_3_2;
    assert!((sum - want).abs() <= tail, "{sum} vs {want}, tail {tail}");

    // α = β = 1: L(3)² / ζ(6), where the certificate is tight enough to bite
    let (sum, tail) = truncated_double_series(&a, 200, 3.0, 3.0, ZETA_3, ZETA_3);
    let want = L_SYM2_3 * L_SYM2_3 / ZETA_6;
    assert!(tail < 2e-3, "{tail}");
    assert!((sum - want).abs() <= tail, "{sum} vs {want}, tail {tail}");
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let a = hecke_eigenbasis_cached(16, 500, dir.path()).unwrap();
    let path = dir.path().join("eigen_k16.tsv");
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().any(|l| l.starts_with("2\t")));
    let b = hecke_eigenbasis_cached(16, 500, dir.path()).unwrap();
    let fresh = hecke_eigenbasis(16, 500).unwrap();
    for n in 1..500u64 {
        let x = a[0].lambda_extended(n).unwrap();
        assert_eq!(x, b[0].lambda_extended(n).unwrap());
        assert_eq!(x, fresh[0].lambda_extended(n).unwrap());
    }
    assert_eq!(tau(12), 6);
}
