//! Automorphism ensemble decoding.
//!
//! Decreasing monomial polar codes are invariant under a block
//! lower-triangular affine group acting on the bit representation of the
//! codeword positions. The ensemble decoder runs one SC attempt per
//! sampled automorphism on the permuted channel LLRs, maps each candidate
//! back, and keeps the candidate with the highest correlation to the
//! received LLRs.

use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::llr::LlrVector;
use crate::polar::code::PolarCodeSpec;
use crate::polar::decode::{DecodeOutcome, Kernel};
use crate::polar::sc::ScDecoder;
use crate::rng::{Rng, SeedSpec};

/// A codeword-position permutation drawn from the code's affine
/// automorphism group; `map[x]` is the source position read into slot x.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismPermutation {
    pub map: Vec<usize>,
}

impl AutomorphismPermutation {
    pub fn identity(n: usize) -> Self {
        AutomorphismPermutation {
            map: (0..n).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Applies the permutation to a codeword: out[x] = cw[map[x]].
    pub fn apply_bits(&self, cw: &BitVector) -> BitVector {
        self.map.iter().map(|&src| cw[src]).collect()
    }

    pub fn apply_llrs(&self, llr: &LlrVector) -> LlrVector {
        LlrVector::from_values(self.map.iter().map(|&src| llr[src]).collect())
    }

    /// Undoes the permutation: out[map[x]] = cw[x].
    pub fn invert_bits(&self, cw: &BitVector) -> BitVector {
        let mut out = vec![0u8; cw.len()];
        for (x, &src) in self.map.iter().enumerate() {
            out[src] = cw[x];
        }
        out.into_iter().collect()
    }
}

/// Tests whether permuting positions by the transvection x_a ^= x_b maps
/// the code onto itself (checked on the generator rows).
fn transvection_ok(spec: &PolarCodeSpec, a: u32, b: u32) -> bool {
    let n = spec.block_len();
    let perm: Vec<usize> = (0..n)
        .map(|x| x ^ (((x >> b) & 1) << a))
        .collect();
    for &row in spec.info_set() {
        let mut u = BitVector::zeros(n);
        u.set(row, 1);
        let cw = crate::polar::transform::polar_transform(&u).expect("power of two");
        let permuted: BitVector = perm.iter().map(|&src| cw[src]).collect();
        if !spec.is_codeword(&permuted) {
            return false;
        }
    }
    true
}

/// Computes the block profile of the affine automorphism group: maximal
/// consecutive runs of bit layers within which every transvection keeps
/// the code invariant. Cross-block transvections must hold in the
/// triangular direction (asserted), which they do for every decreasing
/// monomial code.
pub fn compute_block_profile(spec: &PolarCodeSpec) -> Result<Vec<usize>> {
    let m = spec.n_log2();
    let mut ok = vec![vec![false; m as usize]; m as usize];
    for a in 0..m {
        for b in 0..m {
            if a != b {
                ok[a as usize][b as usize] = transvection_ok(spec, a, b);
            }
        }
    }
    let mut profile = Vec::new();
    let mut start = 0usize;
    while start < m as usize {
        let mut end = start + 1;
        'grow: while end < m as usize {
            for l in start..end {
                if !ok[l][end] || !ok[end][l] {
                    break 'grow;
                }
            }
            end += 1;
        }
        profile.push(end - start);
        start = end;
    }
    // Triangular direction: adding a lower layer into a higher one
    // (x_high ^= x_low) must keep the code invariant, which matches the
    // strictly-lower block structure sampled below.
    let block_of = {
        let mut map = vec![0usize; m as usize];
        let mut blk = 0;
        let mut idx = 0;
        for &s in &profile {
            for _ in 0..s {
                map[idx] = blk;
                idx += 1;
            }
            blk += 1;
        }
        map
    };
    for a in 0..m as usize {
        for b in 0..m as usize {
            if block_of[a] > block_of[b] && !ok[a][b] {
                return Err(Error::construction(format!(
                    "code is not closed under block-triangular transvections ({a},{b})"
                )));
            }
        }
    }
    Ok(profile)
}

/// Attaches the automorphism block profile to an information set design,
/// enabling [`sample_automorphisms`] on the returned spec.
pub fn with_automorphism_profile(mut spec: PolarCodeSpec) -> Result<PolarCodeSpec> {
    let profile = compute_block_profile(&spec)?;
    spec.set_automorphism_profile(profile);
    Ok(spec)
}

fn random_invertible(rng: &mut Rng, size: usize) -> Vec<u64> {
    loop {
        let rows: Vec<u64> = (0..size)
            .map(|_| rng.next_u64() & ((1u64 << size) - 1))
            .collect();
        // Gaussian elimination rank check.
        let mut work = rows.clone();
        let mut rank = 0;
        for col in 0..size {
            if let Some(pivot) = (rank..size).find(|&r| (work[r] >> col) & 1 == 1) {
                work.swap(rank, pivot);
                for r in 0..size {
                    if r != rank && (work[r] >> col) & 1 == 1 {
                        work[r] ^= work[rank];
                    }
                }
                rank += 1;
            }
        }
        if rank == size {
            return rows;
        }
    }
}

/// Draws `count` distinct permutations from the block lower-triangular
/// affine group of the code; the first entry is always the identity.
pub fn sample_automorphisms(
    spec: &PolarCodeSpec,
    count: usize,
    seed: SeedSpec,
) -> Result<Vec<AutomorphismPermutation>> {
    if count < 1 {
        return Err(Error::domain("automorphism count must be at least 1"));
    }
    let profile = spec.automorphism_profile().ok_or_else(|| {
        Error::construction(
            "code was not constructed with an automorphism-aware design \
             (no block profile recorded)"
        )
    })?;
    let m = spec.n_log2() as usize;
    debug_assert_eq!(profile.iter().sum::<usize>(), m);
    let n = spec.block_len();
    let mut rng = Rng::from_seed(seed);
    let mut perms = vec![AutomorphismPermutation::identity(n)];
    let mut guard = 0usize;
    while perms.len() < count {
        guard += 1;
        if guard > 10_000 {
            return Err(Error::construction(format!(
                "could not sample {count} distinct automorphisms"
            )));
        }
        // Rows of A: block lower-triangular, invertible diagonal blocks.
        let mut a_rows = vec![0u64; m];
        let mut base = 0usize;
        for &s in profile {
            let block = random_invertible(&mut rng, s);
            for (i, row) in block.iter().enumerate() {
                // Diagonal block plus free strictly-lower columns.
                let low = if base == 0 {
                    0
                } else {
                    rng.next_u64() & ((1u64 << base) - 1)
                };
                a_rows[base + i] = (row << base) | low;
            }
            base += s;
        }
        let b = rng.next_u64() & ((n - 1) as u64);
        let map: Vec<usize> = (0..n)
            .map(|x| {
                let mut y = 0u64;
                for (i, &row) in a_rows.iter().enumerate() {
                    y |= u64::from(((row & x as u64).count_ones() & 1) as u64) << i;
                }
                (y ^ b) as usize
            })
            .collect();
        let perm = AutomorphismPermutation { map };
        if !perms.contains(&perm) {
            perms.push(perm);
        }
    }
    Ok(perms)
}

pub struct AedDecoder {
    kernel: Kernel,
    sc: ScDecoder,
}

impl AedDecoder {
    pub fn new(spec: &PolarCodeSpec, kernel: Kernel) -> Self {
        AedDecoder {
            kernel,
            sc: ScDecoder::new(spec, kernel),
        }
    }

    /// Runs one SC attempt per sampled automorphism and keeps the
    /// candidate maximizing the correlation sum (1-2c_i) llr_i. The
    /// identity permutation always contributes, so the plain SC result is
    /// always in the candidate set.
    pub fn decode(
        &mut self,
        spec: &PolarCodeSpec,
        llr: &LlrVector,
        perms: &[AutomorphismPermutation],
    ) -> Result<DecodeOutcome> {
        if perms.is_empty() {
            return Err(Error::domain("ensemble must contain at least one permutation"));
        }
        let mut best: Option<(f64, BitVector)> = None;
        for perm in perms {
            let permuted = perm.apply_llrs(llr);
            let attempt = self.sc.decode(spec, &permuted)?;
            let candidate = perm.invert_bits(&attempt.codeword);
            let corr: f64 = candidate
                .iter()
                .zip(llr.iter())
                .map(|(&c, &l)| (1.0 - 2.0 * f64::from(c)) * l)
                .sum();
            if best.as_ref().is_none_or(|(m, _)| corr > *m) {
                best = Some((corr, candidate));
            }
        }
        let (metric, codeword) = best.expect("at least one attempt");
        let mut u = codeword.clone();
        crate::polar::transform::transform_in_place(u.bits_mut());
        let _ = self.kernel;
        Ok(DecodeOutcome {
            message: spec.message_from_u(&u),
            codeword,
            metric,
            crc_ok: spec.crc_ok_from_u(&u),
        })
    }
}

/// One-shot ensemble decode: samples `ensemble_size` automorphisms from
/// `seed` (identity first) and returns the best-correlation candidate.
pub fn decode_aed(
    spec: &PolarCodeSpec,
    llr: &LlrVector,
    ensemble_size: usize,
    seed: SeedSpec,
) -> Result<DecodeOutcome> {
    let perms = sample_automorphisms(spec, ensemble_size, seed)?;
    AedDecoder::new(spec, Kernel::default()).decode(spec, llr, &perms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::transmit_bpsk_awgn_with;
    use crate::polar::code::LengthMatch;
    use crate::polar::construct::design_monomial_info_set;
    use crate::polar::sc::decode_sc;

    /// (64, 42) decreasing monomial probe code: all indices of weight >= 3.
    fn probe_code() -> PolarCodeSpec {
        let info = design_monomial_info_set(6, &[7], 42, 1.0).unwrap();
        assert_eq!(info.len(), 42);
        let spec = PolarCodeSpec::new(6, info, None, LengthMatch::None, 2.0).unwrap();
        with_automorphism_profile(spec).unwrap()
    }

    #[test]
    fn probe_code_profile_is_full_affine() {
        // The weight->=3 closure is a Reed-Muller code, invariant under
        // the whole affine group: a single block of size 6.
        let spec = probe_code();
        assert_eq!(spec.automorphism_profile().unwrap(), &[6]);
    }

    #[test]
    fn count_one_returns_identity() {
        let spec = probe_code();
        let perms = sample_automorphisms(&spec, 1, SeedSpec::new(21, 0)).unwrap();
        assert_eq!(perms.len(), 1);
        assert!(perms[0].is_identity());
    }

    #[test]
    fn sampled_permutations_are_distinct_automorphisms() {
        let spec = probe_code();
        let mut rng = Rng::from_seed(SeedSpec::new(22, 0));
        let perms = sample_automorphisms(&spec, 8, SeedSpec::new(22, 1)).unwrap();
        assert_eq!(perms.len(), 8);
        for i in 0..perms.len() {
            for j in i + 1..perms.len() {
                assert_ne!(perms[i], perms[j]);
            }
        }
        // Generative validity: random codewords stay codewords under every
        // sampled permutation.
        for _ in 0..50 {
            let msg: BitVector = (0..42).map(|_| rng.next_u64() as u8 & 1).collect();
            let cw = spec.encode(&msg).unwrap();
            for perm in &perms {
                assert!(spec.is_codeword(&perm.apply_bits(&cw)));
                assert!(spec.is_codeword(&perm.invert_bits(&cw)));
            }
        }
    }

    #[test]
    fn ensemble_of_one_matches_plain_sc() {
        let spec = probe_code();
        let mut rng = Rng::from_seed(SeedSpec::new(23, 0));
        let zero = BitVector::zeros(64);
        let mut aed = AedDecoder::new(&spec, Kernel::MinSum);
        let perms = sample_automorphisms(&spec, 1, SeedSpec::new(23, 1)).unwrap();
        for _ in 0..500 {
            let llr = transmit_bpsk_awgn_with(&zero, 1.0, &mut rng);
            let a = aed.decode(&spec, &llr, &perms).unwrap();
            let b = decode_sc(&spec, &llr).unwrap();
            assert_eq!(a.codeword, b.codeword);
        }
    }

    #[test]
    fn clean_codeword_always_selected_at_low_noise() {
        let spec = probe_code();
        let mut rng = Rng::from_seed(SeedSpec::new(24, 0));
        let perms = sample_automorphisms(&spec, 4, SeedSpec::new(24, 1)).unwrap();
        let mut aed = AedDecoder::new(&spec, Kernel::MinSum);
        for _ in 0..100 {
            let msg: BitVector = (0..42).map(|_| rng.next_u64() as u8 & 1).collect();
            let cw = spec.encode(&msg).unwrap();
            let llr = transmit_bpsk_awgn_with(&cw, 0.25, &mut rng);
            let out = aed.decode(&spec, &llr, &perms).unwrap();
            assert_eq!(out.codeword, cw);
            assert_eq!(out.message, msg);
        }
    }

    #[test]
    fn ensemble_never_loses_to_sc_on_correlation() {
        let spec = probe_code();
        let mut rng = Rng::from_seed(SeedSpec::new(25, 0));
        let perms = sample_automorphisms(&spec, 8, SeedSpec::new(25, 1)).unwrap();
        let mut aed = AedDecoder::new(&spec, Kernel::MinSum);
        let zero = BitVector::zeros(64);
        for _ in 0..300 {
            let llr = transmit_bpsk_awgn_with(&zero, 1.0, &mut rng);
            let out = aed.decode(&spec, &llr, &perms).unwrap();
            let sc = decode_sc(&spec, &llr).unwrap();
            let sc_corr: f64 = sc
                .codeword
                .iter()
                .zip(llr.iter())
                .map(|(&c, &l)| (1.0 - 2.0 * f64::from(c)) * l)
                .sum();
            assert!(out.metric >= sc_corr - 1e-9);
        }
    }

    #[test]
    fn sampling_requires_profile() {
        let spec = PolarCodeSpec::new(3, vec![3, 5, 6, 7], None, LengthMatch::None, 2.0).unwrap();
        assert!(sample_automorphisms(&spec, 2, SeedSpec::new(1, 0)).is_err());
    }

    #[test]
    fn monomial_256_128_profile_and_ensemble() {
        // The (256,128) automorphism-aware design: closure of {31, 57},
        // whose affine group has block profile [3, 5]; eight distinct
        // permutations sample without exhaustion.
        let info = design_monomial_info_set(8, &[31, 57], 128, 1.0).unwrap();
        let spec = PolarCodeSpec::new(8, info, None, LengthMatch::None, 2.0).unwrap();
        let spec = with_automorphism_profile(spec).unwrap();
        assert_eq!(spec.automorphism_profile().unwrap(), &[3, 5]);
        let perms = sample_automorphisms(&spec, 8, SeedSpec::new(26, 0)).unwrap();
        assert_eq!(perms.len(), 8);
        assert!(perms[0].is_identity());
        for i in 0..perms.len() {
            for j in i + 1..perms.len() {
                assert_ne!(perms[i], perms[j]);
            }
        }
        let mut rng = Rng::from_seed(SeedSpec::new(26, 1));
        let msg: BitVector = (0..128).map(|_| rng.next_u64() as u8 & 1).collect();
        let cw = spec.encode(&msg).unwrap();
        for perm in &perms {
            assert!(spec.is_codeword(&perm.apply_bits(&cw)));
        }
    }
}
