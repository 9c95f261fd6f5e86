//! Successive cancellation decoding.
//!
//! Bits are estimated from synthetic channel 0 to N-1; frozen positions
//! decide 0. The recursion over the factor tree uses one preallocated LLR
//! buffer per depth, and each node assembles its codeword in place from
//! the two child codewords, so a decoder instance decodes frames without
//! allocating.

use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::llr::LlrVector;
use crate::polar::code::PolarCodeSpec;
use crate::polar::decode::{DecodeOutcome, Kernel};

pub struct ScDecoder {
    n_log2: u32,
    frozen: Vec<bool>,
    kernel: Kernel,
    /// llr_stage[d] holds the LLRs of the currently active node at depth
    /// d+1 (length N >> (d+1)).
    llr_stage: Vec<Vec<f64>>,
    u: Vec<u8>,
    cw: Vec<u8>,
    pm: f64,
    ops: u64,
}

impl ScDecoder {
    pub fn new(spec: &PolarCodeSpec, kernel: Kernel) -> Self {
        let n = spec.block_len();
        let n_log2 = spec.n_log2();
        let llr_stage = (1..=n_log2).map(|d| vec![0.0; n >> d]).collect();
        ScDecoder {
            n_log2,
            frozen: spec.frozen_mask().to_vec(),
            kernel,
            llr_stage,
            u: vec![0; n],
            cw: vec![0; n],
            pm: 0.0,
            ops: 0,
        }
    }

    pub fn kernel(&self) -> Kernel {
        self.kernel
    }

    /// Kernel evaluations performed by the most recent decode.
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
        self.pm = 0.0;
        self.ops = 0;
        // Root works directly on the channel LLRs.
        let root: Vec<f64> = llr.values().to_vec();
        self.node(&root, 0, 0);
        let u: BitVector = self.u.iter().copied().collect();
        let codeword: BitVector = self.cw.iter().copied().collect();
        Ok(DecodeOutcome {
            message: spec.message_from_u(&u),
            codeword,
            metric: self.pm,
            crc_ok: spec.crc_ok_from_u(&u),
        })
    }

    /// Decodes the subtree rooted at depth `depth` whose u-indices start at
    /// `offset`; node LLRs are in `llr`, and the node codeword lands in
    /// self.cw[offset..offset+len].
    fn node(&mut self, llr: &[f64], depth: u32, offset: usize) {
        let len = llr.len();
        if len == 1 {
            let bit = if self.frozen[offset] {
                0
            } else {
                u8::from(llr[0] < 0.0)
            };
            self.pm += self.kernel.penalty(llr[0], bit);
            self.u[offset] = bit;
            self.cw[offset] = bit;
            return;
        }
        let half = len / 2;
        let stage = depth as usize;
        // f pass, then the left child.
        for i in 0..half {
            self.llr_stage[stage][i] = self.kernel.f(llr[i], llr[i + half]);
        }
        self.ops += half as u64;
        let left = std::mem::take(&mut self.llr_stage[stage]);
        self.node(&left[..half], depth + 1, offset);
        self.llr_stage[stage] = left;
        // g pass with the left partial sums, then the right child.
        for i in 0..half {
            self.llr_stage[stage][i] = self.kernel.g(llr[i], llr[i + half], self.cw[offset + i]);
        }
        self.ops += half as u64;
        let right = std::mem::take(&mut self.llr_stage[stage]);
        self.node(&right[..half], depth + 1, offset + half);
        self.llr_stage[stage] = right;
        // Combine [left ^ right | right] in place.
        for i in 0..half {
            self.cw[offset + i] ^= self.cw[offset + half + i];
        }
    }
}

/// One-shot successive cancellation decode with the default min-sum kernel.
pub fn decode_sc(spec: &PolarCodeSpec, llr: &LlrVector) -> Result<DecodeOutcome> {
    ScDecoder::new(spec, Kernel::default()).decode(spec, llr)
}
