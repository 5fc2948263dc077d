//! Runs the identity checks in parallel and returns reports in a fixed order.

use rayon::prelude::*;

use super::lemma33::lemma33_reports;
use super::mean_value::mean_value_checks;
use super::petersson::petersson_check;
use super::report::{CheckReport, ToleranceTable};
use super::voronoi::voronoi_check;
use super::watson::watson_l4_check;
use crate::eigen::{hecke_eigenbasis, HeckeEigenform};
use crate::error::{Error, Result};
use crate::lvalues::DEFAULT_C_W;

pub const IDENTITIES: [&str; 5] = ["petersson", "watson_l4", "voronoi", "lemma33", "mean_value"];

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub weights: Vec<u32>,
    /// identity families to run; `None` runs all of [`IDENTITIES`]
    pub identities: Option<Vec<String>>,
    pub tolerances: ToleranceTable,
    pub c_w: f64,
    pub petersson_pairs: Vec<(u64, u64)>,
    pub voronoi_n: f64,
    pub voronoi_c: Vec<u64>,
    pub lemma33_c_max: i64,
    pub lemma33_small: i64,
    pub mean_value_r: Vec<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            weights: vec![12],
            identities: None,
            tolerances: ToleranceTable::default(),
            c_w: DEFAULT_C_W,
            petersson_pairs: vec![(1, 1), (2, 1), (2, 3)],
            voronoi_n: 200.0,
            voronoi_c: vec![1, 2],
            lemma33_c_max: 60,
            lemma33_small: 8,
            mean_value_r: vec![1, 2, 3],
        }
    }
}

impl SuiteConfig {
    pub fn wants(&self, identity: &str) -> bool {
        self.identities.as_ref().is_none_or(|ids| ids.iter().any(|i| i == identity))
    }
}

/// Runs `job` on the eigenbasis of weight k, rebuilding with a larger prime bound whenever the
/// job asks for more coefficients.
pub fn with_basis<T>(k: u32, start: usize, job: impl Fn(&[HeckeEigenform]) -> Result<T>) -> Result<T> {
    let mut bound = start;
    loop {
        let basis = hecke_eigenbasis(k, bound)?;
        match job(&basis) {
            Err(Error::ExtendTable { prime, .. }) if (prime as usize) > bound => {
                bound = (prime as usize).max(bound * 2);
            }
            other => return other,
        }
    }
}

enum Job {
    Petersson(u32),
    Watson(u32),
    Voronoi(u32, u64),
    Lemma33,
    MeanValue(u32),
}

fn run_job(job: &Job, cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let tol = &cfg.tolerances;
    let x_cut = |k: u32| (cfg.c_w * (k * k) as f64) as usize + 1;
    match *job {
        Job::Petersson(k) => with_basis(k, 1000, |b| {
            cfg.petersson_pairs
                .iter()
                .map(|&(m, n)| petersson_check(b, m, n, None, tol.get("petersson")))
                .collect()
        }),
        Job::Watson(k) => {
            let b2 = hecke_eigenbasis(2 * k, x_cut(k))?;
            with_basis(k, x_cut(k), |b| Ok(watson_l4_check(&b[0], &b2, cfg.c_w, tol)?.1))
        }
        Job::Voronoi(k, c) => with_basis(k, 1000, |b| {
            Ok(vec![voronoi_check(&b[0], c, 1, cfg.voronoi_n, 1, tol.get("voronoi"))?])
        }),
        Job::Lemma33 => Ok(lemma33_reports(cfg.lemma33_c_max, cfg.lemma33_small, tol.get("lemma33_ramanujan"))),
        Job::MeanValue(k) => {
            let b2 = hecke_eigenbasis(2 * k, x_cut(k))?;
            with_basis(k, x_cut(k), |b| mean_value_checks(&b[0], &b2, cfg.c_w, &cfg.mean_value_r, tol))
        }
    }
}

/// All requested checks, sorted by identity name and then parameters.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    if let Some(ids) = &cfg.identities {
        if let Some(bad) = ids.iter().find(|i| !IDENTITIES.contains(&i.as_str())) {
            return Err(Error::Precondition(format!("unknown identity {bad}; known: {}", IDENTITIES.join(", "))));
        }
    }
    let mut jobs = Vec::new();
    for &k in &cfg.weights {
        if cfg.wants("petersson") {
            jobs.push(Job::Petersson(k));
        }
        if cfg.wants("watson_l4") {
            jobs.push(Job::Watson(k));
        }
        if cfg.wants("voronoi") {
            jobs.extend(cfg.voronoi_c.iter().map(|&c| Job::Voronoi(k, c)));
        }
        if cfg.wants("mean_value") {
            jobs.push(Job::MeanValue(k));
        }
    }
    if cfg.wants("lemma33") {
        jobs.push(Job::Lemma33);
    }
    let results: Vec<Result<Vec<CheckReport>>> = jobs.par_iter().map(|j| run_job(j, cfg)).collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    out.sort_by_key(|r| r.sort_key());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_and_order() {
        let cfg = SuiteConfig {
            identities: Some(vec!["petersson".into(), "lemma33".into()]),
            lemma33_c_max: 12,
            lemma33_small: 3,
            ..SuiteConfig::default()
        };
        let a = run_suite(&cfg).unwrap();
        let b = run_suite(&cfg).unwrap();
        assert_eq!(a.len(), 5);
        assert!(a.iter().all(|r| r.passed));
        let lines = |v: &[CheckReport]| v.iter().map(|r| r.to_json_line()).collect::<Vec<_>>();
        assert_eq!(lines(&a), lines(&b));
        assert!(a.windows(2).all(|w| w[0].sort_key() <= w[1].sort_key()));
    }

    #[test]
    fn unknown_identity_rejected() {
        let cfg = SuiteConfig { identities: Some(vec!["nope".into()]), ..SuiteConfig::default() };
        assert!(run_suite(&cfg).is_err());
    }
}
