use cuspmass::eigen::{hecke_eigenbasis, HeckeEigenform};
use cuspmass::mass::shifted::t_from_poincare;
use cuspmass::mass::*;
use num_complex::Complex64;

fn form(k: u32) -> HeckeEigenform {
    hecke_eigenbasis(k, 3000).unwrap().remove(0)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn l2_norm_is_one() {
    for k in [12u32, 16, 18, 20, 22, 26] {
        let f = form(k);
        let r = lp_norm(&f, 2.0, &FundamentalDomainGrid::for_form(&f)).unwrap();
        assert!((r.value - 1.0).abs() <= 1e-3, "k={k}: {}", r.value);
    }
}

#[test]
fn fourth_moment_exceeds_one() {
    let f = form(12);
    let r = lp_norm(&f, 4.0, &FundamentalDomainGrid::for_form(&f)).unwrap();
    assert!(r.value >= 1.0, "{}", r.value);
    assert!(lp_norm(&f, 1.5, &FundamentalDomainGrid::for_form(&f)).is_err());
}

#[test]
fn field_is_periodic_and_modular() {
    let f = form(12);
    let ev = FieldEvaluator::new(&f);
    let z = Complex64::new(0.3, 1.2);
    let a = ev.evaluate(z).unwrap();
    assert!((ev.evaluate(z + 1.0).unwrap() - a).norm() < 1e-12 * a.norm().max(1.0));
    let b = ev.evaluate(-1.0 / z).unwrap();
    assert!((a.norm() - b.norm()).abs() < 1e-10 * a.norm().max(1e-3), "{} {}", a.norm(), b.norm());
    assert!(ev.evaluate(Complex64::new(0.1, 40.0)).unwrap().norm() < 1e-50);
}

#[test]
fn cusp_and_geodesic_integrals_match_their_sums() {
    for k in [12u32, 16] {
        let f = form(k);
        let mut last_p = f64::INFINITY;
        for y0 in [0.9, 2.0, 10.0] {
            let p = cusp_integral_p(&f, y0).unwrap();
            let ps = cusp_integral_p_sum(&f, y0, p_sum_length(k, y0)).unwrap();
            assert!(rel(p.value, ps.value) <= 1e-6, "P k={k} y0={y0}: {} {}", p.value, ps.value);
            let r = geodesic_r(&f, y0).unwrap();
            let rs = geodesic_r_sum(&f, y0, r_sum_length(k, y0)).unwrap();
            assert!(rel(r.value, rs.value) <= 1e-6, "R k={k} y0={y0}: {} {}", r.value, rs.value);
            assert!(p.value < last_p);
            last_p = p.value;
        }
    }
}

#[test]
fn geodesic_routes_agree() {
    let f = form(12);
    let basis = hecke_eigenbasis(24, 3000).unwrap();
    let d = geodesic_i(&f, GeodesicMethod::Direct, None).unwrap();
    let m = geodesic_i(&f, GeodesicMethod::Moment, None).unwrap();
    let s = geodesic_i(&f, GeodesicMethod::Spectral, Some(&basis)).unwrap();
    assert!(rel(m.value, d.value) <= 1e-3 && rel(s.value, d.value) <= 1e-3, "{} {} {}", d.value, m.value, s.value);
    let r1 = geodesic_r(&f, 1.0).unwrap();
    assert!(d.value >= r1.value);
    assert!(geodesic_i(&f, GeodesicMethod::Spectral, None).is_err());
}

#[test]
fn shifted_convolution_small_cases() {
    for k in [12u32, 20] {
        let f = form(k);
        assert!((shifted_t(&f, 2).unwrap() - 1.0).abs() < 1e-15);
        let l2 = f.lambda_extended(2).unwrap();
        let want = 2.0 * l2 * (2.0 * 2f64.sqrt() / 3.0).powi(k as i32 - 1);
        assert!(rel(shifted_t(&f, 3).unwrap(), want) < 1e-13);
        for l in [2u64, 5, 17, 100] {
            let inner = poincare_inner(&f, l).unwrap();
            assert!(rel(t_from_poincare(&f, l, inner), shifted_t(&f, l).unwrap()) < 1e-12);
        }
    }
    assert!(poincare_inner(&form(12), 2).unwrap() > 0.0);
    let t = ShiftedConvolutionTable::new(&form(12), 200).unwrap();
    assert!((t.t[2] - t.s[2]).abs() < 1e-12);
    assert!(t.diff_c.is_finite() && t.t_bound_c > 0.0);
}
