//! End-to-end checks of the spectral and summation identities, with JSON-lines reports.

pub mod lemma33;
pub mod mean_value;
pub mod petersson;
pub mod report;
pub mod suite;
pub mod trends;
pub mod voronoi;
pub mod watson;

pub use lemma33::{char_sum_lemma33, lemma33_reports, lemma33_sweep, CharSum};
pub use mean_value::{mean_value_checks, mean_value_report};
pub use petersson::{petersson_check, petersson_geometric, petersson_spectral};
pub use report::{to_jsonl, CheckReport, Side, Tolerance, ToleranceKind, ToleranceTable};
pub use suite::{run_suite, with_basis, SuiteConfig, IDENTITIES};
pub use voronoi::{voronoi_check, voronoi_psi_kernel, voronoi_sides, PsiKernel, TestFunction};
pub use watson::{watson_l4, watson_l4_check, WatsonL4};
pub use trends::{fourth_moment_trend, mean_value_trend, shifted_partial_sums, FourthMomentRow, ShiftedSumRow, GAUSSIAN_FOURTH_MOMENT};
