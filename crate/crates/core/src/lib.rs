//! Holomorphic Hecke eigenforms of level one and the distribution of their mass.

pub mod eigen;
pub mod error;
pub mod lvalues;
pub mod mass;
pub mod numeric;
pub mod oscillatory;
pub mod special;
pub mod verify;

pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
