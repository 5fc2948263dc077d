//! Plain-text cache of prime Hecke eigenvalues, one file per weight.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::EigenData;
use crate::error::{Error, Result};

pub const GENERATOR: &str = concat!("cuspmass-", env!("CARGO_PKG_VERSION"), "/t2-sturm-200");

pub fn cache_path(dir: &Path, k: u32) -> PathBuf {
    dir.join(format!("eigen_k{k}.tsv"))
}

pub fn write(dir: &Path, data: &EigenData) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| Error::Cache(e.to_string()))?;
    let path = cache_path(dir, data.k);
    let mut s = String::new();
    s.push_str(&format!("# k\t{}\n# dim\t{}\n# N\t{}\n# generator\t{}\n", data.k, data.dim, data.n, GENERATOR));
    for (i, p) in data.primes.iter().enumerate() {
        s.push_str(&p.to_string());
        for form in &data.decimals {
            s.push('\t');
            s.push_str(&form[i]);
        }
        s.push('\n');
    }
    let tmp = path.with_extension("tsv.tmp");
    let mut f = fs::File::create(&tmp).map_err(|e| Error::Cache(e.to_string()))?;
    f.write_all(s.as_bytes()).map_err(|e| Error::Cache(e.to_string()))?;
    fs::rename(&tmp, &path).map_err(|e| Error::Cache(e.to_string()))?;
    Ok(path)
}

/// Reads a cache file; `Ok(None)` when absent, stale, or too short for `n`.
pub fn read(dir: &Path, k: u32, n: usize) -> Result<Option<EigenData>> {
    let path = cache_path(dir, k);
    let Ok(text) = fs::read_to_string(&path) else {
        return Ok(None);
    };
    let bad = |m: &str| Error::Cache(format!("{}: {m}", path.display()));
    let mut header = std::collections::HashMap::new();
    let mut primes = Vec::new();
    let mut decimals: Vec<Vec<String>> = Vec::new();
    for line in text.lines() {
        if let Some(h) = line.strip_prefix("# ") {
            let mut it = h.splitn(2, '\t');
            if let (Some(key), Some(v)) = (it.next(), it.next()) {
                header.insert(key.to_string(), v.to_string());
            }
            continue;
        }
        let mut fields = line.split('\t');
        let p: u64 = fields
            .next()
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| bad("bad prime field"))?;
        primes.push(p);
        for (i, v) in fields.enumerate() {
            if decimals.len() <= i {
                decimals.push(Vec::new());
            }
            v.parse::<f64>().map_err(|_| bad("bad eigenvalue"))?;
            decimals[i].push(v.to_string());
        }
    }
    let get = |key: &str| header.get(key).ok_or_else(|| bad(&format!("missing {key}")));
    if get("generator")? != GENERATOR {
        return Ok(None);
    }
    let file_k: u32 = get("k")?.parse().map_err(|_| bad("k"))?;
    let dim: usize = get("dim")?.parse().map_err(|_| bad("dim"))?;
    let file_n: usize = get("N")?.parse().map_err(|_| bad("N"))?;
    if file_k != k || decimals.len() != dim || decimals.iter().any(|d| d.len() != primes.len()) {
        return Err(bad("inconsistent contents"));
    }
    if file_n < n {
        return Ok(None);
    }
    Ok(Some(EigenData { k, dim, n: file_n, primes, decimals }))
}
