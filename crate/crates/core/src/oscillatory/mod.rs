//! Oscillatory integrals ∫ w(t) e^{i h(t)} dt: integration-by-parts certificates, the weighted
//! stationary-phase expansion, short windows and a quadrature oracle.

pub mod jet;
pub mod quadrature;
pub mod spec;
pub mod statphase;

pub use jet::Jet;
pub use quadrature::{oscillatory_quadrature, QuadratureValue};
pub use spec::{PhaseSpec, Smooth, WeightSpec};
pub use statphase::{
    default_terms, gaussian_benchmark, gaussian_exact, gaussian_family, term_decay_constants, ibp_bound, short_window, stationary_phase_expand, stationary_phase_terms,
    window_bump, StatPhaseRow, StationaryPhaseResult, WindowCertificate, DEFAULT_A, DEFAULT_DELTA,
};
