//! Central and edge L-values: L(1, sym² f), L(1/2, g), L(1/2 + it, f), L(1/2, sym² f × g),
//! and the mean value 𝓜_f(r).

pub mod central;
pub mod contour;
pub mod cutoff;
pub mod standard;
pub mod sym2;

pub use cutoff::{gamma_factor, root_number, CutoffW, GammaFactorSpec};

pub use central::{
    l_half_g, l_half_sym2f_g, mean_value_m, CentralValue, DEFAULT_C_W, MeanValue, SymSquareTwist,
};
pub use standard::l_standard;
pub use sym2::{l_sym2_at_1, l_sym2_at_1_afe, l_sym2_real, sym2_afe_length, L1Value};
