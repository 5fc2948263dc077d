//! Level-one Hecke eigenforms: exact q-expansions, diagonalisation of T_2, normalised
//! eigenvalues λ(n) and the symmetric square coefficients A(m, n).

pub mod cache;
pub mod form;
pub mod hecke;
pub mod qexp;

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

pub use form::{CoefficientField, HeckeEigenform, SymSquareCoefficients};
pub use qexp::{cusp_dimension, victor_miller_basis, QExpansion};

use crate::error::{Error, Result};
use crate::special::arith::primes_up_to;

/// Prime eigenvalues of every form in B_k, as 30-place decimals of λ(p) = a(p)/p^{(k-1)/2}.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenData {
    pub k: u32,
    pub dim: usize,
    pub n: usize,
    pub primes: Vec<u64>,
    /// `decimals[form][i]` is λ(primes[i]) for that form
    pub decimals: Vec<Vec<String>>,
}

pub const DECIMAL_DIGITS: u32 = 30;

/// Relative root separation below which the spectrum counts as degenerate.
const MIN_SEPARATION: f64 = 1e-40;

/// Exact prime eigenvalue data for all p <= n.
pub fn prime_eigendata(k: u32, n: usize) -> Result<EigenData> {
    let dim = cusp_dimension(k);
    if k % 2 == 1 || dim == 0 {
        return Err(Error::InvalidWeight(k as i64));
    }
    let primes = primes_up_to(n);
    if k == 12 {
        let tau = qexp::delta_tau_i128(n.max(2));
        let decimals = primes
            .iter()
            .map(|&p| {
                let a = BigRational::from_integer(BigInt::from(tau[p as usize]));
                hecke::normalized_decimal(&a, p, 12, DECIMAL_DIGITS)
            })
            .collect();
        return Ok(EigenData { k, dim, n, primes, decimals: vec![decimals] });
    }
    let len = n.max(2 * dim);
    let basis = victor_miller_basis(k, len)?;
    let m = hecke::hecke_matrix(&basis, 2)?;
    let cp = hecke::char_poly(&m);
    let roots = hecke::real_roots(&cp, hecke::ROOT_BITS).map_err(|e| with_weight(e, k))?;
    let approx: Vec<f64> = roots.iter().map(hecke::rational_to_f64).collect();
    let scale = approx.iter().fold(1.0f64, |a, b| a.max(b.abs()));
    let gap = approx
        .windows(2)
        .map(|w| (w[1] - w[0]).abs())
        .fold(f64::INFINITY, f64::min);
    if dim > 1 && gap / scale < MIN_SEPARATION {
        return Err(Error::EigenSolver {
            k: k as i64,
            reason: "near-degenerate T_2 spectrum".into(),
            condition: scale / gap,
        });
    }
    let mut decimals = Vec::with_capacity(dim);
    for r in &roots {
        let c = hecke::eigenvector(&m, r).map_err(|e| with_weight(e, k))?;
        let col: Vec<String> = primes
            .iter()
            .map(|&p| {
                let a = basis
                    .iter()
                    .zip(&c)
                    .fold(BigRational::zero(), |acc, (b, ci)| {
                        acc + ci * BigRational::from_integer(b.coeffs[p as usize].clone())
                    });
                hecke::normalized_decimal(&a, p, k, DECIMAL_DIGITS)
            })
            .collect();
        decimals.push(col);
    }
    Ok(EigenData { k, dim, n, primes, decimals })
}

fn with_weight(e: Error, k: u32) -> Error {
    match e {
        Error::EigenSolver { reason, condition, .. } => Error::EigenSolver { k: k as i64, reason, condition },
        other => other,
    }
}

/// Forms built from eigen data, without L-values attached.
pub fn forms_from_data(data: &EigenData) -> Vec<HeckeEigenform> {
    let tag = if data.dim == 1 {
        CoefficientField::Rational
    } else {
        CoefficientField::Numeric { degree: data.dim }
    };
    data.decimals
        .iter()
        .enumerate()
        .map(|(i, col)| {
            let vals: Vec<f64> = col.iter().map(|s| s.parse().unwrap()).collect();
            HeckeEigenform::from_prime_lambdas(data.k, i, data.n, &data.primes, &vals, tag)
        })
        .collect()
}

/// Smallest table length that the L(1, sym² f) evaluation needs at weight k.
pub fn required_length(k: u32) -> usize {
    crate::lvalues::sym2_afe_length(k)
}

/// The Hecke eigenbasis B_k with λ(n) tabulated to at least n and L(1, sym² f) attached.
pub fn hecke_eigenbasis(k: u32, n: usize) -> Result<Vec<HeckeEigenform>> {
    let data = prime_eigendata(k, n.max(required_length(k)))?;
    finish(&data)
}

/// As [`hecke_eigenbasis`], reading and refreshing `eigen_k{k}.tsv` under `dir`.
pub fn hecke_eigenbasis_cached(k: u32, n: usize, dir: &Path) -> Result<Vec<HeckeEigenform>> {
    let n = n.max(required_length(k));
    let data = match cache::read(dir, k, n)? {
        Some(d) => d,
        None => {
            let d = prime_eigendata(k, n)?;
            cache::write(dir, &d)?;
            d
        }
    };
    finish(&data)
}

fn finish(data: &EigenData) -> Result<Vec<HeckeEigenform>> {
    let mut forms = forms_from_data(data);
    for f in forms.iter_mut() {
        let l1 = crate::lvalues::l_sym2_at_1_afe(f)?;
        f.set_sym2_l1(l1.value);
    }
    Ok(forms)
}
