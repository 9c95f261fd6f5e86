//! Spatially-coupled LDPC chains: edge-spreading construction and the
//! sliding-window decoder.
//!
//! The base protograph is spread over `w` neighbouring positions
//! (component matrices B_0..B_{w-1} summing to the base), composed into a
//! band matrix of L positions, fully terminated (boundary checks keep
//! their reduced degree), and lifted by Z with seeded circulant shifts.
//! Shifts are re-drawn until the block structure is free of 4-cycles.

use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::ldpc::matrix::{ParityCheckMatrix, TannerGraph};
use crate::llr::LlrVector;
use crate::rng::{Rng, SeedSpec};
use std::fmt::Write as _;

/// Multi-edge protograph with explicit multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Protograph {
    pub rows: usize,
    pub cols: usize,
    /// Row-major edge multiplicities.
    pub mult: Vec<u8>,
}

impl Protograph {
    /// The (d_v = 4, d_c = 8)-regular protograph: 2 checks, 4 variables,
    /// every pair connected twice.
    pub fn regular_4_8() -> Self {
        Protograph {
            rows: 2,
            cols: 4,
            mult: vec![2; 8],
        }
    }

    pub fn mult_at(&self, r: usize, c: usize) -> u8 {
        self.mult[r * self.cols + c]
    }

    pub fn vn_degree(&self, c: usize) -> usize {
        (0..self.rows).map(|r| self.mult_at(r, c) as usize).sum()
    }

    pub fn cn_degree(&self, r: usize) -> usize {
        (0..self.cols).map(|c| self.mult_at(r, c) as usize).sum()
    }
}

/// Construction parameters; `seed` drives every random shift, so the
/// chain rebuilds bit-exactly from this description.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainConfig {
    pub base: Protograph,
    pub coupling_width: usize,
    pub chain_len: usize,
    pub lifting: usize,
    pub seed: SeedSpec,
}

/// A terminated spatially-coupled chain.
#[derive(Debug, Clone)]
pub struct CoupledChain {
    pub h: ParityCheckMatrix,
    pub config: ChainConfig,
    /// Variable nodes per chain position (base cols * Z).
    pub pos_vns: usize,
    /// Check nodes per check-group (base rows * Z).
    pub group_cns: usize,
    /// Number of check groups: chain_len + w - 1 (full termination).
    pub cn_groups: usize,
}

impl CoupledChain {
    pub fn block_len(&self) -> usize {
        self.h.num_cols()
    }

    /// Design rate after termination loss: 1 - M/N.
    pub fn rate(&self) -> f64 {
        1.0 - self.h.num_rows() as f64 / self.h.num_cols() as f64
    }
}

/// Spreads each protograph edge across the `w` offsets as uniformly as
/// possible: multiplicity m at cell (r, c) occupies offsets
/// (r + c + j) mod w for j < m.
fn spread_offsets(base: &Protograph, w: usize, r: usize, c: usize) -> Vec<usize> {
    (0..base.mult_at(r, c) as usize)
        .map(|j| (r + c + j) % w)
        .collect()
}

/// One lifted circulant placement in the chain.
#[derive(Debug, Clone, Copy)]
struct Block {
    /// Block row: check group * base rows + r.
    brow: usize,
    /// Block col: position * base cols + c.
    bcol: usize,
    shift: usize,
}

pub fn build_coupled_chain(config: &ChainConfig) -> Result<CoupledChain> {
    let base = &config.base;
    let (w, l, z) = (config.coupling_width, config.chain_len, config.lifting);
    if w < 1 {
        return Err(Error::construction("coupling width must be at least 1"));
    }
    if l <= w {
        return Err(Error::construction(
            "chain length must exceed the coupling width",
        ));
    }
    if z < 2 {
        return Err(Error::construction("lifting size must be at least 2"));
    }
    for r in 0..base.rows {
        for c in 0..base.cols {
            if base.mult_at(r, c) as usize > w {
                return Err(Error::construction(format!(
                    "edge multiplicity {} at ({r},{c}) exceeds coupling width {w}",
                    base.mult_at(r, c)
                )));
            }
        }
    }

    let cn_groups = l + w - 1;
    let mut rng = Rng::from_seed(config.seed);
    let mut blocks: Vec<Block> = Vec::new();
    for pos in 0..l {
        for r in 0..base.rows {
            for c in 0..base.cols {
                for &i in &spread_offsets(base, w, r, c) {
                    let group = pos + i;
                    blocks.push(Block {
                        brow: group * base.rows + r,
                        bcol: pos * base.cols + c,
                        shift: rng.next_below(z as u64) as usize,
                    });
                }
            }
        }
    }

    remove_block_four_cycles(&mut blocks, z, &mut rng)?;

    let m = cn_groups * base.rows * z;
    let n = l * base.cols * z;
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); m];
    for b in &blocks {
        for row_in_block in 0..z {
            let row = b.brow * z + row_in_block;
            let col = b.bcol * z + (row_in_block + b.shift) % z;
            rows[row].push(col as u32);
        }
    }
    let h = ParityCheckMatrix::from_rows(m, n, rows)?;
    Ok(CoupledChain {
        h,
        config: config.clone(),
        pos_vns: base.cols * z,
        group_cns: base.rows * z,
        cn_groups,
    })
}

/// Re-draws shifts until no block-level 4-cycle remains: for block rows
/// R1 != R2 both meeting block cols C1 != C2, the alternating shift sum
/// must not vanish mod Z.
fn remove_block_four_cycles(blocks: &mut [Block], z: usize, rng: &mut Rng) -> Result<()> {
    let index: std::collections::HashMap<(usize, usize), usize> = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| ((b.brow, b.bcol), i))
        .collect();
    if index.len() != blocks.len() {
        return Err(Error::construction(
            "spreading produced a repeated circulant block",
        ));
    }
    let mut by_col: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (i, b) in blocks.iter().enumerate() {
        by_col.entry(b.bcol).or_default().push(i);
    }
    let cols: Vec<usize> = by_col.keys().copied().collect();
    for _attempt in 0..200 {
        let mut fixed = 0usize;
        for (ci, &c1) in cols.iter().enumerate() {
            for &c2 in cols.iter().skip(ci + 1) {
                let rows1: Vec<usize> = by_col[&c1].iter().map(|&i| blocks[i].brow).collect();
                for (a, &r1) in rows1.iter().enumerate() {
                    for &r2 in rows1.iter().skip(a + 1) {
                        let (Some(&i11), Some(&i21)) =
                            (index.get(&(r1, c1)), index.get(&(r2, c1)))
                        else {
                            continue;
                        };
                        let (Some(&i12), Some(&i22)) =
                            (index.get(&(r1, c2)), index.get(&(r2, c2)))
                        else {
                            continue;
                        };
                        let s = (blocks[i11].shift + z - blocks[i12].shift) % z;
                        let t = (blocks[i21].shift + z - blocks[i22].shift) % z;
                        if s == t {
                            blocks[i11].shift = rng.next_below(z as u64) as usize;
                            fixed += 1;
                        }
                    }
                }
            }
        }
        if fixed == 0 {
            return Ok(());
        }
    }
    Err(Error::construction(
        "could not remove block 4-cycles; lifting size too small for this chain",
    ))
}

/// Sliding-window decoding parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowConfig {
    /// Window span in chain positions.
    pub window_size: usize,
    /// BP iterations per window step.
    pub iterations_per_step: u32,
    /// Serial (layered) check processing inside the window instead of
    /// flooding; posteriors refresh check by check, which roughly doubles
    /// the information carried per iteration and keeps the decoding wave
    /// moving at one iteration per step.
    pub serial: bool,
}

impl WindowConfig {
    pub fn new(window_size: usize, iterations_per_step: u32) -> Self {
        WindowConfig {
            window_size,
            iterations_per_step,
            serial: true,
        }
    }
}

/// Result of a windowed decode.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowOutcome {
    pub bits: BitVector,
    pub syndrome_ok: bool,
    /// Total BP iterations spent across all window steps.
    pub iterations: u32,
}

/// Sliding-window BP decoder (SPA kernel). Positions are committed oldest
/// first; edges from committed positions keep their final messages, and
/// committed decisions never change afterwards.
pub struct WindowDecoder {
    graph: TannerGraph,
    pos_vns: usize,
    group_cns: usize,
    cn_groups: usize,
    chain_len: usize,
    msgs: Vec<f64>,
    posterior: Vec<f64>,
    committed: Vec<bool>,
    scratch_t: Vec<f64>,
    scratch_fwd: Vec<f64>,
    scratch_bwd: Vec<f64>,
}

const MSG_CLAMP: f64 = crate::ldpc::decode::MESSAGE_CLAMP;

impl WindowDecoder {
    pub fn new(chain: &CoupledChain) -> Self {
        let graph = TannerGraph::from_matrix(&chain.h);
        let max_deg = (0..graph.n_checks)
            .map(|c| graph.cn_degree(c))
            .max()
            .unwrap_or(0);
        WindowDecoder {
            msgs: vec![0.0; graph.n_edges],
            posterior: vec![0.0; graph.n_vars],
            committed: vec![false; graph.n_vars],
            scratch_t: vec![0.0; max_deg],
            scratch_fwd: vec![0.0; max_deg + 1],
            scratch_bwd: vec![0.0; max_deg + 1],
            pos_vns: chain.pos_vns,
            group_cns: chain.group_cns,
            cn_groups: chain.cn_groups,
            chain_len: chain.config.chain_len,
            graph,
        }
    }

    pub fn decode(
        &mut self,
        chain: &CoupledChain,
        llr: &LlrVector,
        wcfg: &WindowConfig,
    ) -> Result<WindowOutcome> {
        let d = wcfg.window_size;
        if d < 1 || d > self.chain_len {
            return Err(Error::domain(format!(
                "window size {d} outside [1, chain length {}]",
                self.chain_len
            )));
        }
        if wcfg.iterations_per_step < 1 {
            return Err(Error::domain("iterations_per_step must be at least 1"));
        }
        if llr.len() != self.graph.n_vars {
            return Err(Error::domain(format!(
                "LLR length {} does not cover the chain ({})",
                llr.len(),
                self.graph.n_vars
            )));
        }
        self.msgs.fill(0.0);
        self.posterior.copy_from_slice(llr.values());
        self.committed.fill(false);
        let mut iterations = 0u32;

        // The window grows in from the terminated boundary before it
        // starts sliding, so every position sits inside it for D steps
        // before commitment (output delay = D positions).
        for s in 0..self.chain_len + d - 1 {
            let lo_pos = (s + 1).saturating_sub(d);
            let hi_pos = (s + 1).min(self.chain_len);
            let cn_lo = lo_pos * self.group_cns;
            // Check groups whose newest variable position lies in the
            // window; once the whole chain is in view the termination
            // groups join.
            let cn_hi = if hi_pos == self.chain_len {
                self.cn_groups * self.group_cns
            } else {
                hi_pos * self.group_cns
            };
            let vn_lo = lo_pos * self.pos_vns;
            let vn_hi = hi_pos * self.pos_vns;
            for _ in 0..wcfg.iterations_per_step {
                if wcfg.serial {
                    // One serial sweep over the window checks, posterior
                    // refreshed per check.
                    for c in cn_lo..cn_hi {
                        self.check_update_spa(c, true);
                    }
                } else {
                    // Flooding: all window checks against the previous
                    // posteriors, then the uncommitted window variables.
                    for c in cn_lo..cn_hi {
                        self.check_update_spa(c, false);
                    }
                    for v in vn_lo..vn_hi {
                        let mut total = llr[v];
                        for i in self.graph.vn_ptr[v]..self.graph.vn_ptr[v + 1] {
                            total += self.msgs[self.graph.vn_edge[i as usize] as usize];
                        }
                        self.posterior[v] = total;
                    }
                }
                iterations += 1;
            }
            if s + 1 >= d {
                let commit = s + 1 - d;
                for v in commit * self.pos_vns..(commit + 1) * self.pos_vns {
                    self.committed[v] = true;
                }
            }
        }

        let bits: BitVector = self
            .posterior
            .iter()
            .map(|&p| u8::from(p < 0.0))
            .collect();
        let syndrome_ok = chain.h.is_codeword(&bits);
        Ok(WindowOutcome {
            bits,
            syndrome_ok,
            iterations,
        })
    }

    /// SPA check update; messages to committed variables are left frozen,
    /// and committed incoming opinions stay at their final values. With
    /// `refresh` the posterior absorbs the message delta immediately.
    fn check_update_spa(&mut self, c: usize, refresh: bool) {
        let start = self.graph.cn_ptr[c] as usize;
        let end = self.graph.cn_ptr[c + 1] as usize;
        let deg = end - start;
        if deg == 0 {
            return;
        }
        for (i, e) in (start..end).enumerate() {
            let v = self.graph.cn_vn[e] as usize;
            let q = (self.posterior[v] - self.msgs[e]).clamp(-MSG_CLAMP, MSG_CLAMP);
            self.scratch_t[i] = (q * 0.5).tanh();
        }
        self.scratch_fwd[0] = 1.0;
        for i in 0..deg {
            self.scratch_fwd[i + 1] = self.scratch_fwd[i] * self.scratch_t[i];
        }
        self.scratch_bwd[deg] = 1.0;
        for i in (0..deg).rev() {
            self.scratch_bwd[i] = self.scratch_bwd[i + 1] * self.scratch_t[i];
        }
        for (i, e) in (start..end).enumerate() {
            let v = self.graph.cn_vn[e] as usize;
            if self.committed[v] {
                continue;
            }
            let prod = self.scratch_fwd[i] * self.scratch_bwd[i + 1];
            let out = (2.0 * prod.atanh()).clamp(-MSG_CLAMP, MSG_CLAMP);
            if refresh {
                self.posterior[v] += out - self.msgs[e];
            }
            self.msgs[e] = out;
        }
    }
}

/// One-shot windowed decode.
pub fn decode_windowed(
    chain: &CoupledChain,
    llr: &LlrVector,
    wcfg: &WindowConfig,
) -> Result<WindowOutcome> {
    WindowDecoder::new(chain).decode(chain, llr, wcfg)
}

// ---------------------------------------------------------------------------
// Chain spec file: base protograph, w, Z, L, seed.
// ---------------------------------------------------------------------------

impl ChainConfig {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "sc-chain v1");
        let _ = writeln!(s, "w {}", self.coupling_width);
        let _ = writeln!(s, "chain_len {}", self.chain_len);
        let _ = writeln!(s, "z {}", self.lifting);
        let _ = writeln!(s, "seed {} {}", self.seed.master_seed, self.seed.stream_id);
        let _ = writeln!(s, "base {} {}", self.base.rows, self.base.cols);
        for r in 0..self.base.rows {
            let parts: Vec<String> = (0..self.base.cols)
                .map(|c| self.base.mult_at(r, c).to_string())
                .collect();
            let _ = writeln!(s, "mult {}", parts.join(" "));
        }
        s
    }

    pub fn from_text(text: &str, origin: &str) -> Result<Self> {
        let perr = |line: usize, msg: String| Error::Parse {
            path: origin.to_string(),
            line,
            msg,
        };
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| perr(1, "empty file".into()))?;
        if header.trim() != "sc-chain v1" {
            return Err(perr(1, format!("unexpected header '{header}'")));
        }
        let mut w = None;
        let mut chain_len = None;
        let mut z = None;
        let mut seed = None;
        let mut dims = None;
        let mut mult_rows: Vec<Vec<u8>> = Vec::new();
        for (idx, raw) in lines {
            let line = raw.trim();
            let (key, value) = line
                .split_once(' ')
                .ok_or_else(|| perr(idx + 1, format!("malformed line '{line}'")))?;
            match key {
                "w" => w = Some(value.parse().map_err(|e| perr(idx + 1, format!("{e}")))?),
                "chain_len" => {
                    chain_len = Some(value.parse().map_err(|e| perr(idx + 1, format!("{e}")))?)
                }
                "z" => z = Some(value.parse().map_err(|e| perr(idx + 1, format!("{e}")))?),
                "seed" => {
                    let (a, b) = value
                        .split_once(' ')
                        .ok_or_else(|| perr(idx + 1, "seed needs two integers".into()))?;
                    seed = Some(SeedSpec::new(
                        a.parse().map_err(|e| perr(idx + 1, format!("{e}")))?,
                        b.parse().map_err(|e| perr(idx + 1, format!("{e}")))?,
                    ));
                }
                "base" => {
                    let (r, c) = value
                        .split_once(' ')
                        .ok_or_else(|| perr(idx + 1, "base needs rows cols".into()))?;
                    dims = Some((
                        r.parse::<usize>().map_err(|e| perr(idx + 1, format!("{e}")))?,
                        c.parse::<usize>().map_err(|e| perr(idx + 1, format!("{e}")))?,
                    ));
                }
                "mult" => {
                    let row: std::result::Result<Vec<u8>, _> =
                        value.split_whitespace().map(|t| t.parse()).collect();
                    mult_rows.push(row.map_err(|e| perr(idx + 1, format!("{e}")))?);
                }
                other => return Err(perr(idx + 1, format!("unknown key '{other}'"))),
            }
        }
        let (rows, cols) = dims.ok_or_else(|| perr(0, "missing base".into()))?;
        if mult_rows.len() != rows || mult_rows.iter().any(|r| r.len() != cols) {
            return Err(perr(0, "multiplicity rows do not match base dims".into()));
        }
        Ok(ChainConfig {
            base: Protograph {
                rows,
                cols,
                mult: mult_rows.concat(),
            },
            coupling_width: w.ok_or_else(|| perr(0, "missing w".into()))?,
            chain_len: chain_len.ok_or_else(|| perr(0, "missing chain_len".into()))?,
            lifting: z.ok_or_else(|| perr(0, "missing z".into()))?,
            seed: seed.ok_or_else(|| perr(0, "missing seed".into()))?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::transmit_bpsk_awgn_with;
    use crate::ldpc::decode::{decode_bp, BpConfig};

    fn small_chain(w: usize, l: usize, z: usize) -> CoupledChain {
        build_coupled_chain(&ChainConfig {
            base: Protograph::regular_4_8(),
            coupling_width: w,
            chain_len: l,
            lifting: z,
            seed: SeedSpec::new(7, 0),
        })
        .unwrap()
    }

    #[test]
    fn degrees_and_band_structure() {
        let chain = small_chain(3, 6, 16);
        let h = &chain.h;
        assert_eq!(h.num_cols(), 6 * 4 * 16);
        assert_eq!(h.num_rows(), 8 * 2 * 16);
        // Interior VN degree 4.
        for d in h.col_degrees() {
            assert_eq!(d, 4);
        }
        // Interior CN degree 8, boundary reduced.
        let degs = h.row_degrees();
        let interior = &degs[2 * chain.group_cns..6 * chain.group_cns];
        assert!(interior.iter().all(|&d| d == 8));
        assert!(degs[..chain.group_cns].iter().all(|&d| d < 8));
        assert!(degs[degs.len() - chain.group_cns..].iter().all(|&d| d < 8));
        // Band-diagonality: no edge couples positions more than w-1 apart.
        for r in 0..h.num_rows() {
            let group = r / chain.group_cns;
            for &c in h.row(r) {
                let pos = c as usize / chain.pos_vns;
                assert!(group >= pos && group - pos <= 2, "group {group} pos {pos}");
            }
        }
    }

    #[test]
    fn w1_is_block_diagonal() {
        let chain = build_coupled_chain(&ChainConfig {
            base: Protograph {
                rows: 2,
                cols: 4,
                mult: vec![1; 8],
            },
            coupling_width: 1,
            chain_len: 4,
            lifting: 8,
            seed: SeedSpec::new(9, 0),
        })
        .unwrap();
        for r in 0..chain.h.num_rows() {
            let group = r / chain.group_cns;
            for &c in chain.h.row(r) {
                assert_eq!(c as usize / chain.pos_vns, group);
            }
        }
    }

    #[test]
    fn multiplicity_exceeding_w_is_rejected() {
        let err = build_coupled_chain(&ChainConfig {
            base: Protograph::regular_4_8(),
            coupling_width: 1,
            chain_len: 4,
            lifting: 8,
            seed: SeedSpec::new(9, 0),
        });
        assert!(err.is_err());
    }

    #[test]
    fn rate_approaches_half_from_below() {
        let r10 = small_chain(3, 10, 8).rate();
        let r20 = small_chain(3, 20, 8).rate();
        let r40 = small_chain(3, 40, 8).rate();
        assert!(r10 < 0.5 && r20 < 0.5 && r40 < 0.5);
        assert!(r10 < r20 && r20 < r40);
        assert!((r10 - 0.4).abs() < 1e-12); // 1 - 12/(2*10)
    }

    #[test]
    fn construction_is_reproducible_from_config() {
        let a = small_chain(3, 6, 16);
        let b = build_coupled_chain(&a.config).unwrap();
        assert_eq!(a.h, b.h);
        // And through the spec file.
        let text = a.config.to_text();
        let cfg = ChainConfig::from_text(&text, "test").unwrap();
        assert_eq!(cfg, a.config);
        let c = build_coupled_chain(&cfg).unwrap();
        assert_eq!(a.h, c.h);
    }

    #[test]
    fn noiseless_frame_decodes_clean_at_any_window() {
        let chain = small_chain(3, 6, 16);
        let n = chain.block_len();
        let llr = LlrVector::from_values(vec![7.0; n]);
        for d in [3usize, 4, 6] {
            let out = decode_windowed(
                &chain,
                &llr,
                &WindowConfig::new(d, 2),
            )
            .unwrap();
            assert!(out.syndrome_ok, "window {d}");
            assert_eq!(out.bits, BitVector::zeros(n));
        }
    }

    #[test]
    fn committed_bits_never_change() {
        // Instrumented indirectly: decode twice, once with a truncated
        // chain view. Direct check: run the decoder and verify the final
        // word agrees with the commitment at each position (the decoder
        // commits internally; bits come only from committed posteriors).
        // Here we check determinism and that decisions for position 0 are
        // identical whether or not later noise changes, by zeroing the
        // tail LLRs beyond the first window.
        let chain = small_chain(3, 8, 16);
        let n = chain.block_len();
        let mut rng = Rng::from_seed(SeedSpec::new(77, 1));
        let zero = BitVector::zeros(n);
        let wcfg = WindowConfig::new(3, 2);
        let mut dec = WindowDecoder::new(&chain);
        for _ in 0..10 {
            let llr = transmit_bpsk_awgn_with(&zero, 0.8, &mut rng);
            let full = dec.decode(&chain, &llr, &wcfg).unwrap();
            // Altering LLRs outside the first window must not change the
            // first committed position (causality of commitment).
            let mut tampered = llr.clone();
            let start = (wcfg.window_size) * chain.pos_vns;
            for v in tampered.values_mut()[start..].iter_mut() {
                *v = -*v;
            }
            let other = dec.decode(&chain, &tampered, &wcfg).unwrap();
            assert_eq!(
                full.bits.bits()[..chain.pos_vns],
                other.bits.bits()[..chain.pos_vns]
            );
        }
    }

    #[test]
    fn degenerate_window_matches_full_bp_on_clean_and_noisy_frames() {
        let chain = small_chain(3, 6, 32);
        let n = chain.block_len();
        let mut rng = Rng::from_seed(SeedSpec::new(78, 0));
        let zero = BitVector::zeros(n);
        let wcfg = WindowConfig::new(6, 30);
        let bp_cfg = BpConfig {
            early_stop: true,
            ..BpConfig::spa_flooding(30)
        };
        let mut window_errs = 0;
        let mut full_errs = 0;
        for _ in 0..200 {
            let llr = transmit_bpsk_awgn_with(&zero, 0.92, &mut rng);
            if decode_windowed(&chain, &llr, &wcfg).unwrap().bits.weight() > 0 {
                window_errs += 1;
            }
            if decode_bp(&chain.h, &llr, &bp_cfg).unwrap().bits.weight() > 0 {
                full_errs += 1;
            }
        }
        // Same decoder family at the same iteration budget: FERs agree
        // within Monte-Carlo noise.
        let diff = (window_errs as i32 - full_errs as i32).abs();
        assert!(
            diff <= 10 + full_errs.max(window_errs) / 2,
            "windowed {window_errs} vs full {full_errs}"
        );
    }

    #[test]
    fn window_larger_than_chain_rejected() {
        let chain = small_chain(3, 6, 16);
        let llr = LlrVector::zeros(chain.block_len());
        let r = decode_windowed(
            &chain,
            &llr,
            &WindowConfig::new(7, 1),
        );
        assert!(r.is_err());
    }
}
