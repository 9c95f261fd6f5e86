//! Outer error-detection and error-correction codes.

pub mod bch;
pub mod crc;
pub mod gf2m;

pub use bch::{BchOutcome, BchSpec};
pub use crc::CrcSpec;
pub use gf2m::GfField;
