//! Simplified successive cancellation.
//!
//! Subtrees whose frozen pattern forms a rate-0, rate-1, repetition or
//! single-parity-check code are decoded with dedicated node rules instead
//! of descending the factor tree. With the min-sum kernel the output is
//! bit-identical to plain SC; only the work differs.

use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::llr::LlrVector;
use crate::polar::code::PolarCodeSpec;
use crate::polar::decode::{DecodeOutcome, Kernel};
use crate::polar::transform::transform_in_place;

/// Constituent-code class of a factor-tree subtree, a pure function of its
/// frozen pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScNodeKind {
    /// All positions frozen.
    Rate0,
    /// No position frozen.
    Rate1,
    /// Only the last position carries information.
    Rep,
    /// Only the first position is frozen.
    Spc,
    Generic,
}

/// Classifies a subtree by its frozen pattern.
pub fn classify_node(frozen: &[bool]) -> ScNodeKind {
    let all = frozen.iter().all(|&f| f);
    if all {
        return ScNodeKind::Rate0;
    }
    let none = frozen.iter().all(|&f| !f);
    if none {
        return ScNodeKind::Rate1;
    }
    let (last, head) = frozen.split_last().expect("non-empty");
    if !last && head.iter().all(|&f| f) {
        return ScNodeKind::Rep;
    }
    let (first, tail) = frozen.split_first().expect("non-empty");
    if *first && tail.iter().all(|&f| !f) {
        return ScNodeKind::Spc;
    }
    ScNodeKind::Generic
}

pub struct SscDecoder {
    n_log2: u32,
    frozen: Vec<bool>,
    llr_stage: Vec<Vec<f64>>,
    u: Vec<u8>,
    cw: Vec<u8>,
    ops: u64,
}

impl SscDecoder {
    pub fn new(spec: &PolarCodeSpec) -> Self {
        let n = spec.block_len();
        let n_log2 = spec.n_log2();
        SscDecoder {
            n_log2,
            frozen: spec.frozen_mask().to_vec(),
            llr_stage: (1..=n_log2).map(|d| vec![0.0; n >> d]).collect(),
            u: vec![0; n],
            cw: vec![0; n],
            ops: 0,
        }
    }

    /// LLR-level operations (kernel evaluations plus node-rule work)
    /// performed by the most recent decode.
    pub fn last_op_count(&self) -> u64 {
        self.ops
    }

    pub fn decode(&mut self, spec: &PolarCodeSpec, llr: &LlrVector) -> Result<DecodeOutcome> {
        if llr.len() != spec.block_len() {
            return Err(Error::domain(format!(
                "LLR length {} does not match block length {}",
                llr.len(),
                spec.block_len()
            )));
        }
        debug_assert_eq!(spec.n_log2(), self.n_log2);
        self.ops = 0;
        let root: Vec<f64> = llr.values().to_vec();
        self.node(&root, 0, 0);
        let u: BitVector = self.u.iter().copied().collect();
        let codeword: BitVector = self.cw.iter().copied().collect();
        Ok(DecodeOutcome {
            message: spec.message_from_u(&u),
            codeword,
            metric: 0.0,
            crc_ok: spec.crc_ok_from_u(&u),
        })
    }

    fn node(&mut self, llr: &[f64], depth: u32, offset: usize) {
        let len = llr.len();
        let frozen = &self.frozen[offset..offset + len];
        match classify_node(frozen) {
            ScNodeKind::Rate0 => {
                self.u[offset..offset + len].fill(0);
                self.cw[offset..offset + len].fill(0);
            }
            ScNodeKind::Rate1 => {
                // Hard decisions are exact under min-sum SC.
                for i in 0..len {
                    self.cw[offset + i] = u8::from(llr[i] < 0.0);
                }
                self.ops += len as u64;
                self.u_from_cw(offset, len);
            }
            ScNodeKind::Rep => {
                // The lone information bit sees the sum of all LLRs.
                let total: f64 = llr.iter().sum();
                let bit = u8::from(total < 0.0);
                self.u[offset..offset + len].fill(0);
                self.u[offset + len - 1] = bit;
                self.cw[offset..offset + len].fill(bit);
                self.ops += len as u64;
            }
            ScNodeKind::Spc => {
                // Wagner rule: hard decisions, then flip the least reliable
                // position if the overall parity check fails.
                let mut parity = 0u8;
                let mut min_idx = 0usize;
                let mut min_abs = f64::INFINITY;
                for i in 0..len {
                    let bit = u8::from(llr[i] < 0.0);
                    self.cw[offset + i] = bit;
                    parity ^= bit;
                    let a = llr[i].abs();
                    if a < min_abs {
                        min_abs = a;
                        min_idx = i;
                    }
                }
                if parity == 1 {
                    self.cw[offset + min_idx] ^= 1;
                }
                self.ops += 2 * len as u64;
                self.u_from_cw(offset, len);
            }
            ScNodeKind::Generic => {
                let half = len / 2;
                let stage = depth as usize;
                for i in 0..half {
                    self.llr_stage[stage][i] = Kernel::MinSum.f(llr[i], llr[i + half]);
                }
                self.ops += half as u64;
                let left = std::mem::take(&mut self.llr_stage[stage]);
                self.node(&left[..half], depth + 1, offset);
                self.llr_stage[stage] = left;
                for i in 0..half {
                    self.llr_stage[stage][i] =
                        Kernel::MinSum.g(llr[i], llr[i + half], self.cw[offset + i]);
                }
                self.ops += half as u64;
                let right = std::mem::take(&mut self.llr_stage[stage]);
                self.node(&right[..half], depth + 1, offset + half);
                self.llr_stage[stage] = right;
                for i in 0..half {
                    self.cw[offset + i] ^= self.cw[offset + half + i];
                }
            }
        }
    }

    /// Recovers the u-slice of a node from its codeword (the transform is
    /// an involution).
    fn u_from_cw(&mut self, offset: usize, len: usize) {
        let (u, cw) = (&mut self.u[offset..offset + len], &self.cw[offset..offset + len]);
        u.copy_from_slice(cw);
        transform_in_place(u);
    }
}

/// One-shot simplified SC decode: message and codeword are bit-identical
/// to [`crate::polar::sc::decode_sc`] with the min-sum kernel. The node
/// shortcuts skip the leaf LLRs, so no path metric is accumulated (the
/// outcome reports 0).
pub fn decode_ssc(spec: &PolarCodeSpec, llr: &LlrVector) -> Result<DecodeOutcome> {
    SscDecoder::new(spec).decode(spec, llr)
}
