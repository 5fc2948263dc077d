use cuspmass::eigen::hecke_eigenbasis;
use cuspmass::lvalues::DEFAULT_C_W;
use cuspmass::verify::voronoi::voronoi_lhs;
use cuspmass::verify::*;
use std::time::Instant;

#[test]
fn petersson_at_weight_twelve() {
    let start = Instant::now();
    let basis = hecke_eigenbasis(12, 1000).unwrap();
    for (m, n) in [(1, 1), (2, 1), (2, 3)] {
        let r = petersson_check(&basis, m, n, None, Tolerance::abs(1e-6)).unwrap();
        assert!(r.passed && r.abs_residual <= 1e-6, "({m},{n}): {}", r.abs_residual);
    }
    assert!(start.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn petersson_with_a_two_dimensional_space() {
    let basis = hecke_eigenbasis(24, 1000).unwrap();
    for (m, n) in [(1, 1), (3, 2), (5, 7)] {
        let r = petersson_check(&basis, m, n, None, Tolerance::abs(1e-6)).unwrap();
        assert!(r.passed, "({m},{n}): {}", r.abs_residual);
    }
}

#[test]
fn voronoi_for_small_moduli() {
    for c in [1u64, 2] {
        let r = with_basis(12, 60_000, |b| voronoi_check(&b[0], c, 1, 200.0, 1, Tolerance::rel(1e-3))).unwrap();
        assert!(r.passed, "c={c}: {}", r.rel_residual);
        let tail = r.truncation["dual_tail_bound"].as_f64().unwrap();
        assert!(tail <= 1e-3 * r.lhs.as_complex().norm());
    }
}

#[test]
fn voronoi_kernel_is_independent_of_the_abscissa() {
    let psi = TestFunction { kappa: 12, n: 200.0, c: 2, r: 1 };
    let lo = PsiKernel::new(12, psi, -0.5).unwrap();
    let hi = PsiKernel::new(12, psi, 0.5).unwrap();
    let xs = [0.05, 0.1, 0.3, 1.0, 2.0, 5.0];
    let peak = xs.iter().map(|&x| lo.eval(x).0.norm()).fold(0.0, f64::max);
    for x in xs {
        let ((a, am), (b, bm)) = (lo.eval(x), hi.eval(x));
        assert!((a - b).norm() <= 1e-6 * peak && (am - bm).norm() <= 1e-6 * peak, "x={x}: {a} {b}");
        assert!((am - a.conj()).norm() <= 1e-12 * peak);
    }
    // decay far beyond the transition scale
    let near = voronoi_psi_kernel(12, 12, 200.0, 1, 1, 1.0, 1, 2.5).unwrap().norm();
    let far = voronoi_psi_kernel(12, 12, 200.0, 1, 1, 1e4, 1, 2.5).unwrap().norm();
    assert!(far < 1e-6 * near.max(1e-30), "{near} {far}");
    assert!(voronoi_psi_kernel(12, 12, 200.0, 1, 1, 1.0, 1, -1.5).is_err());
}

#[test]
fn voronoi_left_side_is_order_independent() {
    let f = hecke_eigenbasis(12, 1000).unwrap().remove(0);
    let table = f.sym2_table(500).unwrap();
    let psi = TestFunction { kappa: 12, n: 200.0, c: 3, r: 1 };
    let a = voronoi_lhs(&table, 1, 3, 2, &psi, false).unwrap();
    let b = voronoi_lhs(&table, 1, 3, 2, &psi, true).unwrap();
    assert!((a - b).norm() <= 1e-12 * a.norm());
    assert!(voronoi_lhs(&table, 1, 3, 3, &psi, false).is_err());
}

#[test]
fn lemma33_bound_holds_on_the_default_grid() {
    let s = lemma33_sweep(60, 8);
    assert!(s.violations.is_empty(), "{:?}", &s.violations[..s.violations.len().min(5)]);
    assert!(s.max_route_gap <= 1e-10);
    assert!(s.cases > 10_000);
    let r = lemma33_reports(60, 8, Tolerance::abs(1e-10));
    assert!(r.iter().all(|x| x.passed));
}

#[test]
fn watson_three_routes_at_weight_twelve() {
    let start = Instant::now();
    let f = hecke_eigenbasis(12, 3000).unwrap().remove(0);
    let basis = hecke_eigenbasis(24, 3000).unwrap();
    let (w, reports) = watson_l4_check(&f, &basis, DEFAULT_C_W, &ToleranceTable::default()).unwrap();
    for r in &reports {
        assert!(r.passed, "{}: {}", r.identity, r.rel_residual);
    }
    let pairs = [(w.quadrature, w.spectral), (w.spectral, w.lvalue), (w.quadrature, w.lvalue)];
    for (a, b) in pairs {
        assert!((a - b).abs() <= 1e-2 * a.abs().max(b.abs()));
    }
    assert!(start.elapsed().as_secs() < 600);
}

#[test]
fn watson_per_form_at_weight_sixteen() {
    let x = (DEFAULT_C_W * 256.0) as usize + 1;
    let basis = hecke_eigenbasis(32, x).unwrap();
    let (w, reports) =
        with_basis(16, x, |b| watson_l4_check(&b[0], &basis, DEFAULT_C_W, &ToleranceTable::default())).unwrap();
    assert_eq!(w.terms.len(), basis.len());
    for r in reports.iter().filter(|r| r.identity == "watson_per_form") {
        assert!(r.passed, "{:?}: {}", r.params, r.rel_residual);
    }
}

#[test]
fn suite_reports_are_sorted_json_lines() {
    let cfg = SuiteConfig {
        identities: Some(vec!["petersson".into(), "lemma33".into()]),
        lemma33_c_max: 12,
        lemma33_small: 3,
        ..SuiteConfig::default()
    };
    let mut reports = run_suite(&cfg).unwrap();
    assert!(reports.iter().all(|r| r.passed));
    let text = to_jsonl(&mut reports);
    let keys: Vec<String> = text
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["identity"].as_str().unwrap().to_string())
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(keys.iter().any(|k| k == "petersson"));
}
