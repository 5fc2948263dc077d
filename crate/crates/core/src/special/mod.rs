//! Analytic and arithmetic primitives: log-gamma, Bessel J, incomplete gamma,
//! Kloosterman and Ramanujan sums, divisor-type functions.

pub mod arith;
pub mod bessel;
pub mod gamma;
pub mod incgamma;

pub use arith::{kloosterman, ramanujan_sum, KloostermanQuery};
pub use bessel::bessel_j;
pub use gamma::{ln_gamma, log_gamma};
pub use incgamma::incomplete_gamma_q;
