//! Polar codes: construction, encoding and decoding.

pub mod aed;
pub mod code;
pub mod construct;
pub mod decode;
pub mod sc;
pub mod scl;
pub mod ssc;
pub mod transform;

pub use aed::{decode_aed, sample_automorphisms, with_automorphism_profile, AedDecoder, AutomorphismPermutation};
pub use code::{LengthMatch, PolarCodeSpec};
pub use decode::{DecodeOutcome, Kernel};
pub use sc::{decode_sc, ScDecoder};
pub use scl::{decode_scl, SclDecoder};
pub use ssc::{classify_node, decode_ssc, ScNodeKind, SscDecoder};
pub use construct::{
    density_evolution_reliabilities, design_snr_for_target_fer, extract_nested, select_info_set,
    ReliabilitySequence,
};
pub use transform::polar_transform;
