//! Unified polar / LDPC coding workbench.
//!
//! One toolbox for constructing, encoding and decoding polar codes
//! (SC, simplified SC, CRC-aided list, automorphism-ensemble), LDPC codes
//! (flooding and layered belief propagation with SPA / normalized and
//! offset min-sum kernels), spatially-coupled LDPC chains with a sliding
//! window decoder, and outer CRC / BCH codes, plus a reproducible
//! Monte-Carlo FER/BER harness, finite-blocklength reference bounds and
//! SVG figure rendering.

pub mod bits;
pub mod bounds;
pub mod channel;
pub mod error;
pub mod ldpc;
pub mod llr;
pub mod outer;
pub mod plot;
pub mod polar;
pub mod rng;
pub mod scldpc;
pub mod sim;

pub use bits::{count_bit_errors, BitVector};
pub use channel::{ebn0_to_sigma, transmit_bpsk_awgn, ChannelKind, ChannelSpec};
pub use error::{Error, Result};
pub use llr::{hard_decision, LlrVector, LLR_SATURATION};
pub use rng::{Rng, SeedSpec};
