//! 5G NR LDPC codes on base graph 2 (3GPP TS 38.212 tables 5.3.2-1/-3).
//!
//! The construction follows the standard: kb systematic columns by payload
//! size, the smallest admissible lifting Zc, filler bits up to K = 10 Zc,
//! the first 2 Zc systematic bits punctured as state variables, and the
//! circular buffer truncated to the transmitted length. Only the base
//! rows whose parity bits are (even partially) transmitted participate in
//! decoding; extension parity columns past the buffer see LLR 0.

use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::ldpc::base_graph::{expand_base_graph, BaseGraph};
use crate::ldpc::matrix::ParityCheckMatrix;
use crate::llr::{LlrVector, LLR_SATURATION};

const BG2_TABLE: &str = include_str!("../../assets/nr/bg2.txt");

/// Lifting sizes of TS 38.212 table 5.3.2-1, grouped by set index.
const LIFTING_SETS: [&[usize]; 8] = [
    &[2, 4, 8, 16, 32, 64, 128, 256],
    &[3, 6, 12, 24, 48, 96, 192, 384],
    &[5, 10, 20, 40, 80, 160, 320],
    &[7, 14, 28, 56, 112, 224],
    &[9, 18, 36, 72, 144, 288],
    &[11, 22, 44, 88, 176, 352],
    &[13, 26, 52, 104, 208],
    &[15, 30, 60, 120, 240],
];

/// One base-graph entry: (row, col, shift per lifting set).
struct Bg2Entry {
    row: usize,
    col: usize,
    v: [usize; 8],
}

fn bg2_entries() -> Vec<Bg2Entry> {
    let mut out = Vec::with_capacity(197);
    for line in BG2_TABLE.lines().skip(1) {
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse().expect("static table"))
            .collect();
        let mut v = [0usize; 8];
        v.copy_from_slice(&nums[2..10]);
        out.push(Bg2Entry {
            row: nums[0],
            col: nums[1],
            v,
        });
    }
    out
}

/// Smallest admissible lifting size with kb*Z >= payload, and its set.
fn pick_lifting(kb: usize, payload: usize) -> Result<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (set, sizes) in LIFTING_SETS.iter().enumerate() {
        for &z in sizes.iter() {
            if kb * z >= payload && best.is_none_or(|(bz, _)| z < bz) {
                best = Some((z, set));
            }
        }
    }
    best.ok_or_else(|| Error::construction(format!("payload {payload} too large for BG2")))
}

/// A rate-matched BG2 code instance.
#[derive(Debug, Clone)]
pub struct NrLdpcCode {
    /// Sub-matrix over the base rows/columns in use, expanded by Zc.
    pub h: ParityCheckMatrix,
    pub z: usize,
    payload: usize,
    n_tx: usize,
    /// Length of the full (padded) codeword the decoder works on.
    n_dec: usize,
    k_sys: usize,
    parity_tx: usize,
    /// Dense GF(2) solve of parity from the systematic syndrome.
    parity_solver: Vec<Vec<u64>>,
    parity_rows: usize,
}

impl NrLdpcCode {
    /// Builds the code carrying `payload` information bits in `n_tx`
    /// transmitted bits.
    pub fn new(payload: usize, n_tx: usize) -> Result<Self> {
        if payload == 0 {
            return Err(Error::construction("payload must be positive"));
        }
        let kb = match payload {
            0..=192 => 6,
            193..=560 => 8,
            561..=640 => 9,
            _ => 10,
        };
        let (z, set) = pick_lifting(kb, payload)?;
        let k_sys = 10 * z;
        if payload > k_sys {
            return Err(Error::construction("payload exceeds systematic capacity"));
        }
        if payload <= 2 * z {
            return Err(Error::construction(
                "payload shorter than the punctured state variables",
            ));
        }
        let sys_tx = payload - 2 * z;
        if n_tx <= sys_tx {
            return Err(Error::construction(
                "transmitted length leaves no room for parity",
            ));
        }
        let parity_tx = n_tx - sys_tx;
        let parity_rows = parity_tx.div_ceil(z).max(4);
        if parity_rows > 42 {
            return Err(Error::construction("rate below the BG2 mother rate"));
        }
        let base_cols = 10 + parity_rows;

        let shifts = {
            let mut table = vec![-1i32; parity_rows * base_cols];
            for e in bg2_entries() {
                if e.row < parity_rows && e.col < base_cols {
                    table[e.row * base_cols + e.col] = (e.v[set] % z) as i32;
                }
            }
            table
        };
        let bg = BaseGraph::new(z, parity_rows, base_cols, shifts)?;
        let h = expand_base_graph(&bg)?;

        // Dense inverse of the parity part (columns >= 10 Zc) so encoding
        // is a syndrome multiply.
        let np = parity_rows * z;
        let words = np.div_ceil(64);
        let mut aug: Vec<(Vec<u64>, Vec<u64>)> = (0..np)
            .map(|r| {
                let mut lhs = vec![0u64; words];
                for &c in h.row(r) {
                    let c = c as usize;
                    if c >= k_sys {
                        let p = c - k_sys;
                        lhs[p / 64] |= 1 << (p % 64);
                    }
                }
                let mut rhs = vec![0u64; words];
                rhs[r / 64] |= 1 << (r % 64);
                (lhs, rhs)
            })
            .collect();
        let mut rank = 0usize;
        for col in 0..np {
            let (wi, bi) = (col / 64, col % 64);
            let Some(p) = (rank..np).find(|&r| (aug[r].0[wi] >> bi) & 1 == 1) else {
                continue;
            };
            aug.swap(rank, p);
            let (plhs, prhs) = (aug[rank].0.clone(), aug[rank].1.clone());
            for (r, (lhs, rhs)) in aug.iter_mut().enumerate() {
                if r != rank && (lhs[wi] >> bi) & 1 == 1 {
                    for (a, b) in lhs.iter_mut().zip(plhs.iter()) {
                        *a ^= b;
                    }
                    for (a, b) in rhs.iter_mut().zip(prhs.iter()) {
                        *a ^= b;
                    }
                }
            }
            rank += 1;
        }
        if rank != np {
            return Err(Error::construction(
                "BG2 parity sub-matrix is singular for this configuration",
            ));
        }
        // aug is a permuted identity on the lhs; reorder rows so that
        // solver row i yields parity bit i.
        let mut parity_solver = vec![Vec::new(); np];
        for (lhs, rhs) in aug {
            let bit = (0..np).find(|&i| (lhs[i / 64] >> (i % 64)) & 1 == 1).unwrap();
            parity_solver[bit] = rhs;
        }

        Ok(NrLdpcCode {
            h,
            z,
            payload,
            n_tx,
            n_dec: base_cols * z,
            k_sys,
            parity_tx,
            parity_solver,
            parity_rows,
        })
    }

    pub fn payload_len(&self) -> usize {
        self.payload
    }

    pub fn tx_len(&self) -> usize {
        self.n_tx
    }

    pub fn decode_len(&self) -> usize {
        self.n_dec
    }

    pub fn base_rows_in_use(&self) -> usize {
        self.parity_rows
    }

    /// The lifted shift table in use, for base-graph file export.
    pub fn base_graph(&self) -> BaseGraph {
        let qc = self.h.qc().expect("expanded from a base graph");
        BaseGraph {
            z: qc.z,
            rows: qc.base_rows,
            cols: qc.base_cols,
            shifts: qc.shifts.clone(),
        }
    }

    /// Full padded codeword: payload, filler zeros, parity.
    pub fn encode_full(&self, message: &BitVector) -> Result<BitVector> {
        if message.len() != self.payload {
            return Err(Error::domain(format!(
                "message length {} does not match payload {}",
                message.len(),
                self.payload
            )));
        }
        let np = self.parity_rows * self.z;
        let mut cw = BitVector::zeros(self.n_dec);
        cw.bits_mut()[..self.payload].copy_from_slice(message.bits());
        // Systematic syndrome per check row.
        let words = np.div_ceil(64);
        let mut syn = vec![0u64; words];
        for r in 0..np {
            let mut acc = 0u8;
            for &c in self.h.row(r) {
                if (c as usize) < self.k_sys {
                    acc ^= cw[c as usize];
                }
            }
            if acc == 1 {
                syn[r / 64] |= 1 << (r % 64);
            }
        }
        for p in 0..np {
            let parity = self.parity_solver[p]
                .iter()
                .zip(syn.iter())
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
                & 1;
            cw.set(self.k_sys + p, parity as u8);
        }
        debug_assert!(self.h.is_codeword(&cw));
        Ok(cw)
    }

    /// Transmitted bits: systematic past the 2Zc state variables (filler
    /// excluded), then parity up to the buffer length.
    pub fn encode(&self, message: &BitVector) -> Result<BitVector> {
        let cw = self.encode_full(message)?;
        let mut tx = Vec::with_capacity(self.n_tx);
        tx.extend_from_slice(&cw.bits()[2 * self.z..self.payload]);
        tx.extend_from_slice(&cw.bits()[self.k_sys..self.k_sys + self.parity_tx]);
        Ok(tx.into_iter().collect())
    }

    /// Places received LLRs back on the decoder grid: punctured state
    /// variables and untransmitted parity get LLR 0, filler bits are known
    /// zeros (+saturation).
    pub fn expand_llr(&self, rx: &LlrVector) -> Result<LlrVector> {
        if rx.len() != self.n_tx {
            return Err(Error::domain(format!(
                "received length {} does not match transmitted length {}",
                rx.len(),
                self.n_tx
            )));
        }
        let mut full = vec![0.0f64; self.n_dec];
        let sys_tx = self.payload - 2 * self.z;
        for i in 0..sys_tx {
            full[2 * self.z + i] = rx[i];
        }
        for i in self.payload..self.k_sys {
            full[i] = LLR_SATURATION;
        }
        for i in 0..self.parity_tx {
            full[self.k_sys + i] = rx[sys_tx + i];
        }
        Ok(LlrVector::from_values(full))
    }

    /// Message bits of a decided full-length codeword.
    pub fn extract_message(&self, cw: &BitVector) -> BitVector {
        cw.bits()[..self.payload].iter().copied().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{Rng, SeedSpec};

    #[test]
    fn fig1_configuration() {
        // 128 payload bits in 256 transmitted: kb = 6, Zc = 22, 92 filler,
        // 8 base rows in use.
        let code = NrLdpcCode::new(128, 256).unwrap();
        assert_eq!(code.z, 22);
        assert_eq!(code.payload_len(), 128);
        assert_eq!(code.tx_len(), 256);
        assert_eq!(code.base_rows_in_use(), 8);
        assert_eq!(code.decode_len(), 18 * 22);
        assert_eq!(code.h.num_rows(), 8 * 22);
        // Null space dimension at least the payload size.
        let rank = code.h.rank();
        assert!(code.h.num_cols() - rank >= 128, "rank {rank}");
    }

    #[test]
    fn encode_roundtrip_and_syndrome() {
        let code = NrLdpcCode::new(128, 256).unwrap();
        let mut rng = Rng::from_seed(SeedSpec::new(61, 0));
        for _ in 0..50 {
            let msg: BitVector = (0..128).map(|_| rng.next_u64() as u8 & 1).collect();
            let full = code.encode_full(&msg).unwrap();
            assert!(code.h.is_codeword(&full));
            assert_eq!(code.extract_message(&full), msg);
            let tx = code.encode(&msg).unwrap();
            assert_eq!(tx.len(), 256);
        }
    }

    #[test]
    fn expand_llr_marks_state_and_filler() {
        let code = NrLdpcCode::new(128, 256).unwrap();
        let rx = LlrVector::from_values(vec![1.0; 256]);
        let full = code.expand_llr(&rx).unwrap();
        for i in 0..44 {
            assert_eq!(full[i], 0.0, "state variable {i}");
        }
        for i in 128..220 {
            assert_eq!(full[i], LLR_SATURATION, "filler {i}");
        }
        let live = full.iter().filter(|&&v| v == 1.0).count();
        assert_eq!(live, 256);
    }

    #[test]
    fn zero_message_encodes_to_zero() {
        let code = NrLdpcCode::new(128, 256).unwrap();
        let tx = code.encode(&BitVector::zeros(128)).unwrap();
        assert_eq!(tx, BitVector::zeros(256));
    }
}
