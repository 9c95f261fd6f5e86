//! LDPC encoders.
//!
//! Two strategies cover every code in the workbench: the accumulator
//! (staircase) rule for matrices whose parity tail is double-diagonal,
//! and a one-time GF(2) Gaussian elimination producing a systematic
//! generator for arbitrary (possibly overcomplete) matrices.

use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::ldpc::matrix::ParityCheckMatrix;

/// How message bits map to codeword positions.
#[derive(Debug, Clone)]
pub enum LdpcEncoder {
    /// Message occupies columns 0..k; parity columns k..n form a
    /// staircase (row i checks parity i-1 and i), solved by forward
    /// accumulation.
    Staircase { k: usize },
    /// Systematic form from Gaussian elimination: message bits sit on the
    /// free columns, pivot columns are back-substituted.
    Generator(Box<GeneratorEncoder>),
}

#[derive(Debug, Clone)]
pub struct GeneratorEncoder {
    n: usize,
    /// Free (message-carrying) columns in ascending order.
    free_cols: Vec<u32>,
    /// Pivot columns, one per reduced row.
    pivot_cols: Vec<u32>,
    /// Per pivot row: bitmask over free-column indices (u64 words).
    combiner: Vec<Vec<u64>>,
}

impl LdpcEncoder {
    /// Detects the staircase structure; falls back to Gaussian
    /// elimination when absent. Rank-deficient matrices are fine for the
    /// generator path (extra rows are redundant) but rejected by the
    /// staircase path.
    pub fn for_matrix(h: &ParityCheckMatrix) -> Result<Self> {
        if let Some(k) = detect_staircase(h) {
            return Ok(LdpcEncoder::Staircase { k });
        }
        Ok(LdpcEncoder::Generator(Box::new(GeneratorEncoder::new(h)?)))
    }

    /// Number of message bits per codeword.
    pub fn dimension(&self, h: &ParityCheckMatrix) -> usize {
        match self {
            LdpcEncoder::Staircase { k } => *k,
            LdpcEncoder::Generator(g) => {
                debug_assert_eq!(g.n, h.num_cols());
                g.free_cols.len()
            }
        }
    }

    /// Codeword positions carrying the message, in message-bit order.
    pub fn message_cols(&self, h: &ParityCheckMatrix) -> Vec<u32> {
        match self {
            LdpcEncoder::Staircase { k } => (0..*k as u32).collect(),
            LdpcEncoder::Generator(g) => {
                debug_assert_eq!(g.n, h.num_cols());
                g.free_cols.clone()
            }
        }
    }

    pub fn encode(&self, h: &ParityCheckMatrix, message: &BitVector) -> Result<BitVector> {
        match self {
            LdpcEncoder::Staircase { k } => encode_staircase(h, *k, message),
            LdpcEncoder::Generator(g) => g.encode(message),
        }
    }
}

/// Returns Some(k) when the last m columns form the staircase pattern.
fn detect_staircase(h: &ParityCheckMatrix) -> Option<usize> {
    let m = h.num_rows();
    let n = h.num_cols();
    if m >= n {
        return None;
    }
    let k = n - m;
    for r in 0..m {
        let row = h.row(r);
        let expected: &[u32] = if r == 0 {
            &[k as u32]
        } else {
            &[(k + r - 1) as u32, (k + r) as u32]
        };
        let tail: Vec<u32> = row
            .iter()
            .copied()
            .filter(|&c| (c as usize) >= k)
            .collect();
        if tail != expected {
            return None;
        }
    }
    Some(k)
}

fn encode_staircase(h: &ParityCheckMatrix, k: usize, message: &BitVector) -> Result<BitVector> {
    if message.len() != k {
        return Err(Error::domain(format!(
            "message length {} does not match dimension {k}",
            message.len()
        )));
    }
    let m = h.num_rows();
    let mut cw = BitVector::zeros(k + m);
    cw.bits_mut()[..k].copy_from_slice(message.bits());
    let mut prev = 0u8;
    for r in 0..m {
        let mut acc = prev;
        for &c in h.row(r) {
            if (c as usize) < k {
                acc ^= message[c as usize];
            }
        }
        cw.set(k + r, acc);
        prev = acc;
    }
    Ok(cw)
}

impl GeneratorEncoder {
    pub fn new(h: &ParityCheckMatrix) -> Result<Self> {
        let m = h.num_rows();
        let n = h.num_cols();
        let words = n.div_ceil(64);
        let mut dense: Vec<Vec<u64>> = (0..m)
            .map(|r| {
                let mut w = vec![0u64; words];
                for &c in h.row(r) {
                    w[c as usize / 64] |= 1 << (c % 64);
                }
                w
            })
            .collect();
        // Reduced row echelon form with pivot bookkeeping.
        let mut pivot_cols = Vec::new();
        let mut rank = 0usize;
        for col in 0..n {
            let (wi, bi) = (col / 64, col % 64);
            if let Some(p) = (rank..m).find(|&r| (dense[r][wi] >> bi) & 1 == 1) {
                dense.swap(rank, p);
                let pivot = dense[rank].clone();
                for (r, row) in dense.iter_mut().enumerate() {
                    if r != rank && (row[wi] >> bi) & 1 == 1 {
                        for (a, b) in row.iter_mut().zip(pivot.iter()) {
                            *a ^= b;
                        }
                    }
                }
                pivot_cols.push(col as u32);
                rank += 1;
                if rank == m {
                    break;
                }
            }
        }
        let is_pivot = {
            let mut v = vec![false; n];
            for &c in &pivot_cols {
                v[c as usize] = true;
            }
            v
        };
        let free_cols: Vec<u32> = (0..n as u32).filter(|&c| !is_pivot[c as usize]).collect();
        if free_cols.is_empty() {
            return Err(Error::construction(
                "matrix has full column rank; the code has dimension zero",
            ));
        }
        let free_index = {
            let mut map = vec![u32::MAX; n];
            for (i, &c) in free_cols.iter().enumerate() {
                map[c as usize] = i as u32;
            }
            map
        };
        let kwords = free_cols.len().div_ceil(64);
        let combiner: Vec<Vec<u64>> = (0..rank)
            .map(|r| {
                let mut mask = vec![0u64; kwords];
                for c in 0..n {
                    if (dense[r][c / 64] >> (c % 64)) & 1 == 1 && free_index[c] != u32::MAX {
                        let f = free_index[c] as usize;
                        mask[f / 64] |= 1 << (f % 64);
                    }
                }
                mask
            })
            .collect();
        Ok(GeneratorEncoder {
            n,
            free_cols,
            pivot_cols,
            combiner,
        })
    }

    pub fn encode(&self, message: &BitVector) -> Result<BitVector> {
        if message.len() != self.free_cols.len() {
            return Err(Error::domain(format!(
                "message length {} does not match dimension {}",
                message.len(),
                self.free_cols.len()
            )));
        }
        let kwords = self.free_cols.len().div_ceil(64);
        let mut msg_words = vec![0u64; kwords];
        for (i, &b) in message.iter().enumerate() {
            if b == 1 {
                msg_words[i / 64] |= 1 << (i % 64);
            }
        }
        let mut cw = BitVector::zeros(self.n);
        for (i, &c) in self.free_cols.iter().enumerate() {
            cw.set(c as usize, message[i]);
        }
        for (r, mask) in self.combiner.iter().enumerate() {
            let parity = mask
                .iter()
                .zip(msg_words.iter())
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
                & 1;
            cw.set(self.pivot_cols[r] as usize, parity as u8);
        }
        Ok(cw)
    }
}

/// An LDPC code: a parity-check matrix with a bound encoding strategy.
#[derive(Debug, Clone)]
pub struct LdpcCode {
    pub h: ParityCheckMatrix,
    encoder: LdpcEncoder,
}

impl LdpcCode {
    pub fn new(h: ParityCheckMatrix) -> Result<Self> {
        let encoder = LdpcEncoder::for_matrix(&h)?;
        Ok(LdpcCode { h, encoder })
    }

    pub fn dimension(&self) -> usize {
        self.encoder.dimension(&self.h)
    }

    pub fn block_len(&self) -> usize {
        self.h.num_cols()
    }

    pub fn message_cols(&self) -> Vec<u32> {
        self.encoder.message_cols(&self.h)
    }

    pub fn encode(&self, message: &BitVector) -> Result<BitVector> {
        let cw = self.encoder.encode(&self.h, message)?;
        debug_assert!(self.h.is_codeword(&cw));
        Ok(cw)
    }

    /// Extracts the message bits from a decided codeword.
    pub fn extract_message(&self, cw: &BitVector) -> BitVector {
        self.encoder
            .message_cols(&self.h)
            .iter()
            .map(|&c| cw[c as usize])
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{Rng, SeedSpec};

    fn staircase_toy() -> ParityCheckMatrix {
        // k = 4, m = 3 with a staircase tail.
        ParityCheckMatrix::from_rows(
            3,
            7,
            vec![vec![0, 2, 4], vec![1, 2, 3, 4, 5], vec![0, 3, 5, 6]],
        )
        .unwrap()
    }

    #[test]
    fn staircase_detected_and_encodes() {
        let h = staircase_toy();
        let code = LdpcCode::new(h).unwrap();
        assert!(matches!(
            LdpcEncoder::for_matrix(&code.h).unwrap(),
            LdpcEncoder::Staircase { k: 4 }
        ));
        assert_eq!(code.dimension(), 4);
        let mut rng = Rng::from_seed(SeedSpec::new(51, 0));
        for _ in 0..100 {
            let msg: BitVector = (0..4).map(|_| rng.next_u64() as u8 & 1).collect();
            let cw = code.encode(&msg).unwrap();
            assert!(code.h.is_codeword(&cw));
            assert_eq!(code.extract_message(&cw), msg);
        }
    }

    #[test]
    fn zero_message_gives_zero_codeword() {
        let code = LdpcCode::new(staircase_toy()).unwrap();
        assert_eq!(code.encode(&BitVector::zeros(4)).unwrap(), BitVector::zeros(7));
    }

    #[test]
    fn generator_handles_arbitrary_matrices() {
        let h = ParityCheckMatrix::from_rows(
            3,
            7,
            vec![vec![0, 3, 4, 6], vec![1, 3, 5, 6], vec![2, 4, 5, 6]],
        )
        .unwrap();
        let code = LdpcCode::new(h).unwrap();
        assert_eq!(code.dimension(), 4);
        let mut rng = Rng::from_seed(SeedSpec::new(52, 0));
        for _ in 0..200 {
            let msg: BitVector = (0..4).map(|_| rng.next_u64() as u8 & 1).collect();
            let cw = code.encode(&msg).unwrap();
            assert!(code.h.is_codeword(&cw));
            assert_eq!(code.extract_message(&cw), msg);
        }
    }

    #[test]
    fn generator_tolerates_redundant_rows() {
        // Row 3 = row 0 xor row 1: overcomplete but rank 3.
        let h = ParityCheckMatrix::from_rows(
            4,
            7,
            vec![
                vec![0, 3, 4, 6],
                vec![1, 3, 5, 6],
                vec![2, 4, 5, 6],
                vec![0, 1, 4, 5],
            ],
        )
        .unwrap();
        assert_eq!(h.rank(), 3);
        let code = LdpcCode::new(h).unwrap();
        assert_eq!(code.dimension(), 4);
        let msg = BitVector::from_bits(vec![1, 0, 1, 1]).unwrap();
        let cw = code.encode(&msg).unwrap();
        assert!(code.h.is_codeword(&cw));
    }

    #[test]
    fn encode_rejects_wrong_length() {
        let code = LdpcCode::new(staircase_toy()).unwrap();
        assert!(code.encode(&BitVector::zeros(5)).is_err());
    }
}
