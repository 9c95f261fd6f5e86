//! LDPC codes: matrix representations, graph construction, encoders and
//! belief-propagation decoders.

pub mod alist;
pub mod base_graph;
pub mod decode;
pub mod dvbs2;
pub mod encode;
pub mod matrix;
pub mod nr;

pub use alist::{load_alist, parse_alist, save_alist, write_alist};
pub use base_graph::{expand_base_graph, recover_base_graph, BaseGraph};
pub use decode::{
    decode_bp, quantize_llr, BpConfig, BpDecoder, BpOutcome, BpSchedule, BpVariant, LlrQuantizer,
};
pub use dvbs2::{dvbs2_code, dvbs2_matrix, Dvbs2Rate};
pub use encode::{LdpcCode, LdpcEncoder};
pub use matrix::{ParityCheckMatrix, QcInfo, TannerGraph};
pub use nr::NrLdpcCode;
