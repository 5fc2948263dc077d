//! One function per subcommand, each rendering its table as text.

use std::path::PathBuf;

use serde_json::json;

use cuspmass::eigen::{cusp_dimension, hecke_eigenbasis, hecke_eigenbasis_cached, HeckeEigenform};
use cuspmass::lvalues::{l_half_g, l_sym2_at_1_afe, SymSquareTwist};
use cuspmass::mass::*;
use cuspmass::oscillatory::gaussian_benchmark;
use cuspmass::verify::{
    fourth_moment_trend, mean_value_report, run_suite, shifted_partial_sums, to_jsonl, Tolerance, SuiteConfig,
    GAUSSIAN_FOURTH_MOMENT,
};
use cuspmass::{Error, Result};

use crate::*;

pub struct Context {
    pub cache_dir: Option<PathBuf>,
}

pub struct Outcome {
    pub text: String,
    pub failed: usize,
}

impl Context {
    fn basis(&self, k: u32, n: usize) -> Result<Vec<HeckeEigenform>> {
        match &self.cache_dir {
            Some(dir) => {
                std::fs::create_dir_all(dir).map_err(|e| Error::Cache(format!("{}: {e}", dir.display())))?;
                hecke_eigenbasis_cached(k, n, dir)
            }
            None => hecke_eigenbasis(k, n),
        }
    }

    /// Runs `job` on B_k, growing the table whenever the job runs past it.
    fn with_basis<T>(&self, k: u32, start: usize, job: impl Fn(&[HeckeEigenform]) -> Result<T>) -> Result<T> {
        let mut n = start;
        loop {
            let b = self.basis(k, n)?;
            match job(&b) {
                Err(Error::ExtendTable { prime, .. }) if prime as usize > n => n = (prime as usize).max(2 * n),
                other => return other,
            }
        }
    }
}

pub fn run(cmd: &Command, ctx: &Context) -> Result<Outcome> {
    let rows = match cmd {
        Command::Eigen(a) => eigen(a, ctx)?,
        Command::Norms(a) => norms(a, ctx)?,
        Command::Geodesic(a) => geodesic(a, ctx)?,
        Command::Cusp(a) => cusp(a, ctx)?,
        Command::Shifted(a) => shifted(a, ctx)?,
        Command::Lvalues(a) => lvalues(a, ctx)?,
        Command::FourthMoment(a) => fourth_moment(a)?,
        Command::Check(a) => return check(a),
        Command::Statphase(a) => return statphase(a),
    };
    let mut buf = Vec::new();
    write_csv(&mut buf, &rows).expect("writing to memory");
    Ok(Outcome { text: String::from_utf8(buf).expect("utf-8 rows"), failed: 0 })
}

fn eigen(a: &EigenArgs, ctx: &Context) -> Result<Vec<MassRow>> {
    let mut rows = Vec::new();
    for &k in &a.k {
        for f in ctx.basis(k, a.n)? {
            let p = json!({"form_index": f.index, "n": a.n});
            let residual_limit = (a.n as u64).min(2000);
            rows.push(MassRow::new(k, "lambda_2", "hecke", f.lambda_extended(2)?, 0.0, p.clone()));
            rows.push(MassRow::new(k, "sym2_l1", "afe", f.sym2_l1, l_sym2_at_1_afe(&f)?.estimate, p.clone()));
            rows.push(MassRow::new(k, "a1_squared", "formula", f.a1_squared, 0.0, p.clone()));
            rows.push(MassRow::new(k, "hecke_residual", "direct", f.hecke_relation_residual(residual_limit)?, 0.0, p.clone()));
            rows.push(MassRow::new(k, "deligne_ratio", "direct", f.deligne_ratio(), 0.0, p));
        }
    }
    Ok(rows)
}

fn norms(a: &NormsArgs, ctx: &Context) -> Result<Vec<MassRow>> {
    let mut rows = Vec::new();
    for &k in &a.k {
        for f in ctx.basis(k, 1000)? {
            let grid = FundamentalDomainGrid::for_form(&f);
            for &p in &a.p {
                let r = lp_norm(&f, p, &grid)?;
                let params = json!({"p": p, "form_index": f.index, "nodes": r.nodes, "tail": r.tail});
                rows.push(MassRow::new(k, "lp_norm", "quadrature", r.value, r.est_error, params));
            }
        }
    }
    Ok(rows)
}

fn geodesic(a: &GeodesicArgs, ctx: &Context) -> Result<Vec<MassRow>> {
    let mut rows = Vec::new();
    for &k in &a.k {
        rows.extend(ctx.with_basis(2 * k, 1000, |b2| {
            ctx.with_basis(k, 1000, |b| {
                let mut out = Vec::new();
                for f in b {
                    for m in [GeodesicMethod::Direct, GeodesicMethod::Moment, GeodesicMethod::Spectral] {
                        let v = geodesic_i(f, m, Some(b2))?;
                        let p = json!({"form_index": f.index});
                        out.push(MassRow::new(k, "geodesic_i", &m.to_string(), v.value, v.est_error, p));
                    }
                    for &y0 in &a.y0 {
                        let q = geodesic_r(f, y0)?;
                        let l = r_sum_length(k, y0);
                        let s = geodesic_r_sum(f, y0, l)?;
                        let pq = json!({"form_index": f.index, "y0": y0, "y_end": q.cutoff});
                        let ps = json!({"form_index": f.index, "y0": y0, "l_max": l});
                        out.push(MassRow::new(k, "geodesic_r", "quadrature", q.value, q.est_error, pq));
                        out.push(MassRow::new(k, "geodesic_r", "sum", s.value, s.est_error, ps));
                    }
                }
                Ok(out)
            })
        })?);
    }
    Ok(rows)
}

fn cusp(a: &CuspArgs, ctx: &Context) -> Result<Vec<MassRow>> {
    let mut rows = Vec::new();
    for &k in &a.k {
        rows.extend(ctx.with_basis(k, 1000, |b| {
            let mut out = Vec::new();
            for f in b {
                for &y0 in &a.y0 {
                    let q = cusp_integral_p(f, y0)?;
                    let l = p_sum_length(k, y0);
                    let s = cusp_integral_p_sum(f, y0, l)?;
                    let pq = json!({"form_index": f.index, "y0": y0, "y_end": q.cutoff});
                    let ps = json!({"form_index": f.index, "y0": y0, "l_max": l});
                    out.push(MassRow::new(k, "cusp_integral_p", "quadrature", q.value, q.est_error, pq));
                    out.push(MassRow::new(k, "cusp_integral_p", "sum", s.value, s.est_error, ps));
                }
            }
            Ok(out)
        })?);
    }
    Ok(rows)
}

fn shifted(a: &ShiftedArgs, ctx: &Context) -> Result<Vec<MassRow>> {
    let mut ns = a.n.clone();
    ns.sort_unstable();
    ns.dedup();
    let top = a.l_max.max(*ns.last().unwrap_or(&2)) as usize + 1;
    let mut rows = Vec::new();
    for &k in &a.k {
        for f in ctx.basis(k, top)? {
            for l in 2..=a.l_max {
                let p = json!({"form_index": f.index, "l": l});
                rows.push(MassRow::new(k, "shifted_t", "direct", shifted_t(&f, l)?, 0.0, p.clone()));
                rows.push(MassRow::new(k, "shifted_s", "direct", shifted_s(&f, l)?, 0.0, p));
            }
            for r in shifted_partial_sums(&f, &ns)? {
                let p1 = json!({"form_index": f.index, "N": r.n, "shape": r.shape_s});
                let p2 = json!({"form_index": f.index, "N": r.n, "shape": r.shape_s2});
                rows.push(MassRow::new(k, "sum_s_over_l", "partial_sum", r.sum_s, 0.0, p1));
                rows.push(MassRow::new(k, "sum_s2_over_l", "partial_sum", r.sum_s2, 0.0, p2));
            }
        }
    }
    Ok(rows)
}

fn lvalues(a: &LvaluesArgs, ctx: &Context) -> Result<Vec<MassRow>> {
    let mut rows = Vec::new();
    for &k in &a.k {
        let x = (a.c_w * (k * k) as f64) as usize + 1;
        let b2 = ctx.basis(2 * k, x)?;
        rows.extend(ctx.with_basis(k, x, |b| {
            let mut out = Vec::new();
            for f in b {
                let l1 = l_sym2_at_1_afe(f)?;
                out.push(MassRow::new(k, "l_sym2_at_1", "afe", l1.value, l1.estimate, json!({"form_index": f.index, "terms": l1.terms})));
                let c = l_half_g(f)?;
                out.push(MassRow::new(k, "l_half", "afe", c.value, c.tail_bound, json!({"form_index": f.index, "odd_sign": c.odd_sign})));
                let twist = SymSquareTwist::new(f, k, a.c_w)?;
                for g in &b2 {
                    let v = twist.value(g)?;
                    let p = json!({"form_index": f.index, "g_index": g.index, "weight_g": g.weight, "odd_sign": v.odd_sign, "c_w": a.c_w});
                    out.push(MassRow::new(k, "l_half_sym2f_g", "afe", v.value, v.tail_bound, p));
                }
                for m in mean_value_report(f, &b2, a.c_w, &a.r)? {
                    let p = json!({"form_index": f.index, "kappa": m.kappa, "r": m.r, "odd_sign": m.odd_sign});
                    out.push(MassRow::new(k, "mean_value_m", "spectral", m.m, 0.0, p.clone()));
                    out.push(MassRow::new(k, "mean_value_m", "diagonal", m.m_diag, 0.0, p.clone()));
                    out.push(MassRow::new(k, "mean_value_m", "offdiagonal", m.m_offdiag, 0.0, p));
                }
            }
            Ok(out)
        })?);
    }
    Ok(rows)
}

fn fourth_moment(a: &FourthMomentArgs) -> Result<Vec<MassRow>> {
    let weights: Vec<u32> = (a.k_min..=a.k_max).filter(|&k| k % 2 == 0 && cusp_dimension(k) > 0).collect();
    if weights.is_empty() {
        return Err(Error::InvalidWeight(a.k_min as i64));
    }
    Ok(fourth_moment_trend(&weights)?
        .into_iter()
        .map(|r| {
            let p = json!({"form_index": r.form_index, "gaussian": GAUSSIAN_FOURTH_MOMENT});
            MassRow::new(r.k, "fourth_moment", "quadrature", r.moment, r.est_error, p)
        })
        .collect())
}

fn check(a: &CheckArgs) -> Result<Outcome> {
    let mut cfg = SuiteConfig {
        weights: a.k.clone(),
        identities: if a.identity.is_empty() { None } else { Some(a.identity.clone()) },
        c_w: a.c_w,
        ..SuiteConfig::default()
    };
    for entry in &a.tolerance {
        let (name, value) = entry
            .split_once('=')
            .ok_or_else(|| Error::Precondition(format!("tolerance override `{entry}` is not NAME=VALUE")))?;
        let value: f64 = value
            .trim()
            .parse()
            .ok()
            .filter(|v: &f64| *v > 0.0)
            .ok_or_else(|| Error::Precondition(format!("tolerance `{entry}` needs a positive number")))?;
        let name = name.trim();
        let known = cfg.tolerances.iter().any(|(n, _)| n == name);
        if !known {
            return Err(Error::Precondition(format!("unknown tolerance `{name}`")));
        }
        let kind = cfg.tolerances.get(name).kind;
        cfg.tolerances.set(name, Tolerance { kind, value });
    }
    let mut reports = run_suite(&cfg)?;
    let failed = reports.iter().filter(|r| !r.passed).count();
    Ok(Outcome { text: to_jsonl(&mut reports), failed })
}

fn statphase(a: &StatphaseArgs) -> Result<Outcome> {
    let rows = gaussian_benchmark(&a.lambda, a.n_max, a.tol)?;
    let mut text = format!("# cuspmass v{}\n", cuspmass::VERSION);
    text.push_str("lambda,n,expansion_re,expansion_im,quadrature_re,quadrature_im,err_vs_quadrature,err_vs_exact,first_dropped,quadrature_error\n");
    for r in rows {
        text.push_str(&format!(
            "{:e},{},{:.17e},{:.17e},{:.17e},{:.17e},{:.3e},{:.3e},{:.3e},{:.3e}\n",
            r.lambda,
            r.n,
            r.expansion.re,
            r.expansion.im,
            r.quadrature.re,
            r.quadrature.im,
            r.err_vs_quadrature,
            r.err_vs_exact,
            r.first_dropped,
            r.quadrature_error
        ));
    }
    Ok(Outcome { text, failed: 0 })
}
