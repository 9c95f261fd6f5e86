//! Successive cancellation list decoding.
//!
//! Paths duplicate at every information bit; when more than L paths are
//! alive, the L best by path metric survive (stable order on ties). With a
//! CRC present the reported result is the best-metric path that passes,
//! falling back to the overall best with `crc_ok = false`.

use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::llr::LlrVector;
use crate::polar::code::PolarCodeSpec;
use crate::polar::decode::{DecodeOutcome, Kernel};

#[derive(Clone)]
struct Path {
    /// stages[d] holds the LLRs produced by the active node at depth d
    /// for its current child; length N >> (d+1). The leaf LLR of the bit
    /// being decided is stages[n-1][0].
    stages: Vec<Vec<f64>>,
    /// left[d] holds the completed left-child codeword of the active node
    /// at depth d; length N >> (d+1).
    left: Vec<Vec<u8>>,
    u: Vec<u8>,
    codeword: Vec<u8>,
    pm: f64,
}

impl Path {
    fn leaf_llr(&self) -> f64 {
        self.stages[self.stages.len() - 1][0]
    }
}

pub struct SclDecoder {
    n_log2: usize,
    frozen: Vec<bool>,
    list_size: usize,
    kernel: Kernel,
}

impl SclDecoder {
    pub fn new(spec: &PolarCodeSpec, list_size: usize, kernel: Kernel) -> Result<Self> {
        if list_size < 1 {
            return Err(Error::domain("list size must be at least 1"));
        }
        Ok(SclDecoder {
            n_log2: spec.n_log2() as usize,
            frozen: spec.frozen_mask().to_vec(),
            list_size,
            kernel,
        })
    }

    pub fn decode(&self, spec: &PolarCodeSpec, llr: &LlrVector) -> Result<DecodeOutcome> {
        if llr.len() != spec.block_len() {
            return Err(Error::domain(format!(
                "LLR length {} does not match block length {}",
                llr.len(),
                spec.block_len()
            )));
        }
        let n = spec.block_len();
        let channel = llr.values();

        let mut paths = vec![Path {
            stages: (0..self.n_log2).map(|d| vec![0.0; n >> (d + 1)]).collect(),
            left: (0..self.n_log2).map(|d| vec![0u8; n >> (d + 1)]).collect(),
            u: vec![0; n],
            codeword: vec![0; n],
            pm: 0.0,
        }];
        let mut comp = vec![0u8; n];

        for phi in 0..n {
            for path in &mut paths {
                self.refresh_llrs(channel, path, phi, n);
            }
            if self.frozen[phi] {
                for path in &mut paths {
                    let leaf = path.leaf_llr();
                    path.pm += self.kernel.penalty(leaf, 0);
                    path.u[phi] = 0;
                    self.bubble(path, phi, 0, &mut comp);
                }
            } else {
                let mut candidates: Vec<(f64, usize, u8)> = Vec::with_capacity(2 * paths.len());
                for (p, path) in paths.iter().enumerate() {
                    let leaf = path.leaf_llr();
                    candidates.push((path.pm + self.kernel.penalty(leaf, 0), p, 0));
                    candidates.push((path.pm + self.kernel.penalty(leaf, 1), p, 1));
                }
                if candidates.len() > self.list_size {
                    candidates.sort_by(|a, b| {
                        a.0.partial_cmp(&b.0)
                            .expect("path metrics are finite")
                            .then(a.1.cmp(&b.1))
                            .then(a.2.cmp(&b.2))
                    });
                    candidates.truncate(self.list_size);
                }
                // Paths whose both branches survive are cloned; the rest
                // are extended in place (last use moves out of `paths`).
                let mut next: Vec<Path> = Vec::with_capacity(candidates.len());
                let mut remaining: Vec<usize> = vec![0; paths.len()];
                for &(_, p, _) in &candidates {
                    remaining[p] += 1;
                }
                let mut pool: Vec<Option<Path>> = paths.into_iter().map(Some).collect();
                for &(pm, p, bit) in &candidates {
                    remaining[p] -= 1;
                    let mut path = if remaining[p] == 0 {
                        pool[p].take().expect("path still available")
                    } else {
                        pool[p].as_ref().expect("path still available").clone()
                    };
                    path.pm = pm;
                    path.u[phi] = bit;
                    self.bubble(&mut path, phi, bit, &mut comp);
                    next.push(path);
                }
                paths = next;
            }
        }

        let mut order: Vec<usize> = (0..paths.len()).collect();
        order.sort_by(|&a, &b| {
            paths[a]
                .pm
                .partial_cmp(&paths[b].pm)
                .expect("path metrics are finite")
                .then(a.cmp(&b))
        });
        let outcome_for = |path: &Path| -> DecodeOutcome {
            let u: BitVector = path.u.iter().copied().collect();
            DecodeOutcome {
                message: spec.message_from_u(&u),
                codeword: path.codeword.iter().copied().collect(),
                metric: path.pm,
                crc_ok: spec.crc_ok_from_u(&u),
            }
        };
        if spec.crc().is_some() {
            for &i in &order {
                let out = outcome_for(&paths[i]);
                if out.crc_ok == Some(true) {
                    return Ok(out);
                }
            }
        }
        Ok(outcome_for(&paths[order[0]]))
    }

    /// Recomputes exactly the LLR stages that bit `phi` depends on: a g
    /// update at the depth where the decoding path turns from a left to a
    /// right child, then f updates down to the leaf (all f for phi = 0).
    fn refresh_llrs(&self, channel: &[f64], path: &mut Path, phi: usize, n: usize) {
        let start = if phi == 0 {
            0
        } else {
            let z = phi.trailing_zeros() as usize;
            let d_g = self.n_log2 - 1 - z;
            let half = n >> (d_g + 1);
            let left = &path.left[d_g];
            if d_g == 0 {
                let dst = &mut path.stages[0];
                for i in 0..half {
                    dst[i] = self.kernel.g(channel[i], channel[i + half], left[i]);
                }
            } else {
                let (lo, hi) = path.stages.split_at_mut(d_g);
                let src = &lo[d_g - 1];
                let dst = &mut hi[0];
                for i in 0..half {
                    dst[i] = self.kernel.g(src[i], src[i + half], left[i]);
                }
            }
            d_g + 1
        };
        for d in start..self.n_log2 {
            let half = n >> (d + 1);
            if d == 0 {
                let dst = &mut path.stages[0];
                for i in 0..half {
                    dst[i] = self.kernel.f(channel[i], channel[i + half]);
                }
            } else {
                let (lo, hi) = path.stages.split_at_mut(d);
                let src = &lo[d - 1];
                let dst = &mut hi[0];
                for i in 0..half {
                    dst[i] = self.kernel.f(src[i], src[i + half]);
                }
            }
        }
    }

    /// Propagates a decided bit up the partial-sum tree: while the
    /// completed node is a right child, combine it with the stored left
    /// codeword; a completed left child is stashed for its parent's g.
    fn bubble(&self, path: &mut Path, phi: usize, bit: u8, comp: &mut [u8]) {
        comp[0] = bit;
        let mut len = 1usize;
        let mut depth = self.n_log2;
        while depth > 0 {
            let dir = (phi >> (self.n_log2 - depth)) & 1;
            if dir == 0 {
                path.left[depth - 1][..len].copy_from_slice(&comp[..len]);
                return;
            }
            let left = &path.left[depth - 1];
            for i in 0..len {
                let c = comp[i];
                comp[i + len] = c;
                comp[i] = left[i] ^ c;
            }
            len *= 2;
            depth -= 1;
        }
        path.codeword.copy_from_slice(&comp[..len]);
    }
}

/// One-shot list decode with the default min-sum kernel.
pub fn decode_scl(
    spec: &PolarCodeSpec,
    llr: &LlrVector,
    list_size: usize,
) -> Result<DecodeOutcome> {
    SclDecoder::new(spec, list_size, Kernel::default())?.decode(spec, llr)
}
