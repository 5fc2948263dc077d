use cuspmass::eigen::hecke_eigenbasis;
use cuspmass::lvalues::{l_standard, l_sym2_at_1, l_sym2_at_1_afe, l_sym2_real};
use num_complex::Complex64;

fn delta() -> cuspmass::eigen::HeckeEigenform {
    hecke_eigenbasis(12, 5000).unwrap().remove(0)
}

#[test]
fn standard_l_function_of_delta_on_the_critical_line() {
    let f = delta();
    let oracle = [
        (0.0, Complex64::new(0.79212283864603056936, 0.0)),
        (1.0, Complex64::new(0.81290310053139189587, 0.10325777388687251225)),
        (3.0, Complex64::new(0.99891679538803463015, 0.26479466065969544889)),
        (7.5, Complex64::new(1.0192385987853726786, -0.7038066252680172356)),
    ];
    for (t, want) in oracle {
        let got = l_standard(&f, Complex64::new(0.5, t)).unwrap();
        assert!((got - want).norm() < 1e-10, "t={t}: {got} vs {want}");
    }
}

#[test]
fn sym_square_at_one() {
    let f = delta();
    let want = 0.631792945727883203;
    let afe = l_sym2_at_1_afe(&f).unwrap();
    assert!((afe.value - want).abs() < 1e-12, "{}", afe.value);
    assert!(afe.estimate < 1e-14);
    assert!((f.sym2_l1 - want).abs() < 1e-12);
    let smoothed = l_sym2_at_1(&f, 60.0).unwrap();
    assert!((smoothed.value - want).abs() < 0.05, "{}", smoothed.value);
}

#[test]
fn sym_square_at_real_points() {
    let f = delta();
    for (s, want) in [(1.6, 0.747606473107400523), (1.9, 0.792571985598117359), (3.0, 0.901719803150885511)] {
        let got = l_sym2_real(&f, s).unwrap();
        assert!((got.value - want).abs() < 1e-10, "s={s}: {}", got.value);
    }
    assert!(l_sym2_real(&f, 0.5).is_err());
}

fn d3(n: u64) -> f64 {
    cuspmass::special::arith::factorize(n).iter().map(|&(_, a)| ((a + 1) * (a + 2) / 2) as f64).product()
}

#[test]
fn sym_square_matches_its_dirichlet_series() {
    // γ(1-s) has a pole at s = 2 and is negative on (2, 4)
    let f = hecke_eigenbasis(12, 40_000).unwrap().remove(0);
    let b = f.sym2_table(40_000).unwrap();
    let pi = std::f64::consts::PI;
    for (s, zeta_s) in [(2.0, pi.powi(2) / 6.0), (2.5, 1.3414872572509171798), (4.0, pi.powi(4) / 90.0)] {
        let partial: f64 = b.iter().enumerate().skip(1).map(|(n, x)| x * (n as f64).powf(-s)).sum();
        // |A(n,1)| <= d₃(n)
        let tail = zeta_s.powi(3) - (1..=40_000u64).map(|n| d3(n) * (n as f64).powf(-s)).sum::<f64>();
        let got = l_sym2_real(&f, s).unwrap().value;
        assert!((got - partial).abs() <= tail, "s={s}: {got} vs {partial} ± {tail}");
    }
}

#[test]
fn normalisation_of_the_first_coefficient() {
    for k in [12u32, 16, 24] {
        for f in hecke_eigenbasis(k, 100).unwrap() {
            let want = 2.0 * std::f64::consts::PI.powi(2) / (f.sym2_l1 * cuspmass::special::ln_gamma(k as f64).exp());
            assert!((f.a1_squared / want - 1.0).abs() < 1e-12);
            assert!((f.ln_a1_squared() - want.ln()).abs() < 1e-10);
        }
    }
}
