//! Mass distribution of F(z) = y^{k/2} f(z): pointwise values, L^p norms over the fundamental
//! domain, cusp and geodesic integrals, shifted convolution sums.

pub mod cusp;
pub mod domain;
pub mod field;
pub mod geodesic;
pub mod report;
pub mod shifted;

pub use cusp::{cusp_integral_p, cusp_integral_p_sum, geodesic_r, geodesic_r_sum, p_sum_length, r_sum_length, CuspValue};
pub use domain::{lp_norm, FundamentalDomainGrid, NormResult, QuadratureRule};
pub use field::FieldEvaluator;
pub use geodesic::{geodesic_i, GeodesicMethod, GeodesicValue, SpectralTerm};
pub use report::{write_csv, MassRow};
pub use shifted::{poincare_inner, shifted_s, shifted_t, ShiftedConvolutionTable};

use num_complex::Complex64;

use crate::eigen::HeckeEigenform;
use crate::error::Result;

/// F(z) with an explicit Fourier length.
pub fn evaluate_f(f: &HeckeEigenform, z: Complex64, n_terms: usize) -> Result<Complex64> {
    FieldEvaluator::new(f).evaluate_with(z, n_terms)
}
