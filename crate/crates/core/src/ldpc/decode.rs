//! Belief-propagation decoding: flooding and layered schedules with SPA,
//! normalized min-sum and offset min-sum check-node kernels, optional
//! uniform message quantization and syndrome-based early termination.
//!
//! Messages are clamped to +-30 (natural-log LLR) to keep the tanh kernel
//! stable. The returned word is the first syndrome-satisfying hard
//! decision; running past it (early_stop = false) never changes the
//! result, only the work.

use crate::bits::BitVector;
use crate::error::{Error, Result};
use crate::ldpc::matrix::{ParityCheckMatrix, TannerGraph};
use crate::llr::LlrVector;
use serde::{Deserialize, Serialize};

/// Internal message saturation in natural-log LLR units.
pub const MESSAGE_CLAMP: f64 = 30.0;

/// Check-node kernel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum BpVariant {
    /// Exact sum-product (tanh rule).
    Spa,
    /// Min-sum scaled by alpha in (0, 1].
    NormalizedMinSum(f64),
    /// Min-sum with magnitude offset beta >= 0.
    OffsetMinSum(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BpSchedule {
    /// All check nodes, then all variable nodes, per iteration.
    Flooding,
    /// Check nodes processed layer by layer with immediate posterior
    /// refresh; one full sweep counts as one iteration.
    Layered,
}

/// Symmetric uniform quantizer: round-to-step, saturating at
/// +-(2^(bits-1) - 1) * step. Zero maps to zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LlrQuantizer {
    pub bits: u32,
    pub step: f64,
}

impl LlrQuantizer {
    pub fn new(bits: u32, step: f64) -> Result<Self> {
        if !(2..=16).contains(&bits) {
            return Err(Error::domain(format!(
                "quantizer bits {bits} outside [2, 16]"
            )));
        }
        if !(step > 0.0) {
            return Err(Error::domain("quantizer step must be positive"));
        }
        Ok(LlrQuantizer { bits, step })
    }

    #[inline]
    pub fn quantize(&self, x: f64) -> f64 {
        let max_level = ((1u32 << (self.bits - 1)) - 1) as f64;
        (x / self.step).round().clamp(-max_level, max_level) * self.step
    }
}

/// Quantizes every LLR; output stays a real vector.
pub fn quantize_llr(llr: &LlrVector, bits: u32, step: f64) -> Result<LlrVector> {
    let q = LlrQuantizer::new(bits, step)?;
    Ok(LlrVector::from_values(
        llr.iter().map(|&v| q.quantize(v)).collect(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BpConfig {
    pub variant: BpVariant,
    pub schedule: BpSchedule,
    pub max_iterations: u32,
    pub quantization: Option<LlrQuantizer>,
    pub early_stop: bool,
}

impl BpConfig {
    pub fn spa_flooding(max_iterations: u32) -> Self {
        BpConfig {
            variant: BpVariant::Spa,
            schedule: BpSchedule::Flooding,
            max_iterations,
            quantization: None,
            early_stop: true,
        }
    }

    pub fn spa_layered(max_iterations: u32) -> Self {
        BpConfig {
            schedule: BpSchedule::Layered,
            ..Self::spa_flooding(max_iterations)
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.variant {
            BpVariant::NormalizedMinSum(a) if !(a > 0.0 && a <= 1.0) => {
                return Err(Error::domain(format!("normalization {a} outside (0, 1]")))
            }
            BpVariant::OffsetMinSum(b) if !(b >= 0.0) => {
                return Err(Error::domain(format!("offset {b} must be non-negative")))
            }
            _ => {}
        }
        if self.max_iterations == 0 {
            return Err(Error::domain("max_iterations must be at least 1"));
        }
        if let Some(q) = &self.quantization {
            LlrQuantizer::new(q.bits, q.step)?;
        }
        Ok(())
    }
}

/// Result of one BP decoding attempt.
#[derive(Debug, Clone, PartialEq)]
pub struct BpOutcome {
    /// Hard decision on the posterior (the word latched at the first
    /// zero syndrome when one occurred).
    pub bits: BitVector,
    /// Iterations until the syndrome first cleared (or the configured
    /// maximum when it never did).
    pub iterations: u32,
    pub syndrome_ok: bool,
}

pub struct BpDecoder {
    graph: TannerGraph,
    /// Check-node processing order, grouped into layers.
    layer_order: Vec<u32>,
    layer_bounds: Vec<u32>,
    cfg: BpConfig,
    // Working state, reused across frames.
    msgs: Vec<f64>,
    posterior: Vec<f64>,
    scratch_q: Vec<f64>,
    scratch_fwd: Vec<f64>,
    scratch_bwd: Vec<f64>,
    hard: Vec<u8>,
}

impl BpDecoder {
    pub fn new(h: &ParityCheckMatrix, cfg: BpConfig) -> Result<Self> {
        cfg.validate()?;
        let graph = TannerGraph::from_matrix(h);
        let layers = h.layers();
        let mut layer_order = Vec::with_capacity(graph.n_checks);
        let mut layer_bounds = vec![0u32];
        for layer in &layers {
            layer_order.extend_from_slice(layer);
            layer_bounds.push(layer_order.len() as u32);
        }
        if layer_order.len() != graph.n_checks {
            return Err(Error::construction(
                "layer partition does not cover every check node exactly once",
            ));
        }
        let max_deg = (0..graph.n_checks)
            .map(|c| graph.cn_degree(c))
            .max()
            .unwrap_or(0);
        Ok(BpDecoder {
            msgs: vec![0.0; graph.n_edges],
            posterior: vec![0.0; graph.n_vars],
            scratch_q: vec![0.0; max_deg],
            scratch_fwd: vec![0.0; max_deg + 1],
            scratch_bwd: vec![0.0; max_deg + 1],
            hard: vec![0; graph.n_vars],
            graph,
            layer_order,
            layer_bounds,
            cfg,
        })
    }

    pub fn config(&self) -> &BpConfig {
        &self.cfg
    }

    pub fn decode(&mut self, llr: &LlrVector) -> Result<BpOutcome> {
        if llr.len() != self.graph.n_vars {
            return Err(Error::domain(format!(
                "LLR length {} does not match {} columns",
                llr.len(),
                self.graph.n_vars
            )));
        }
        let channel: Vec<f64> = match &self.cfg.quantization {
            Some(q) => llr.iter().map(|&v| q.quantize(v)).collect(),
            None => llr.values().to_vec(),
        };
        self.msgs.fill(0.0);
        self.posterior.copy_from_slice(&channel);

        let mut latched: Option<(u32, Vec<u8>)> = None;
        for iter in 1..=self.cfg.max_iterations {
            match self.cfg.schedule {
                BpSchedule::Flooding => self.flooding_iteration(&channel),
                BpSchedule::Layered => self.layered_sweep(),
            }
            if latched.is_none() && self.syndrome_clear() {
                latched = Some((iter, self.hard.clone()));
                if self.cfg.early_stop {
                    break;
                }
            }
        }
        match latched {
            Some((iterations, bits)) => Ok(BpOutcome {
                bits: bits.into_iter().collect(),
                iterations,
                syndrome_ok: true,
            }),
            None => {
                for (h, &p) in self.hard.iter_mut().zip(self.posterior.iter()) {
                    *h = u8::from(p < 0.0);
                }
                Ok(BpOutcome {
                    bits: self.hard.iter().copied().collect(),
                    iterations: self.cfg.max_iterations,
                    syndrome_ok: false,
                })
            }
        }
    }

    /// One flooding iteration: all check nodes against the previous
    /// posterior, then a full posterior rebuild.
    fn flooding_iteration(&mut self, channel: &[f64]) {
        for c in 0..self.graph.n_checks {
            self.check_update(c, false);
        }
        for v in 0..self.graph.n_vars {
            let mut total = channel[v];
            for i in self.graph.vn_ptr[v]..self.graph.vn_ptr[v + 1] {
                total += self.msgs[self.graph.vn_edge[i as usize] as usize];
            }
            self.posterior[v] = total;
        }
    }

    /// One layered sweep: every layer once, posteriors refreshed as each
    /// check node completes.
    fn layered_sweep(&mut self) {
        for l in 0..self.layer_bounds.len() - 1 {
            for i in self.layer_bounds[l]..self.layer_bounds[l + 1] {
                let c = self.layer_order[i as usize] as usize;
                self.check_update(c, true);
            }
        }
    }

    /// Recomputes the outgoing messages of check node `c`. With
    /// `refresh_posterior` the posterior absorbs the message delta
    /// immediately (layered schedule).
    fn check_update(&mut self, c: usize, refresh_posterior: bool) {
        let start = self.graph.cn_ptr[c] as usize;
        let end = self.graph.cn_ptr[c + 1] as usize;
        let deg = end - start;
        if deg == 0 {
            return;
        }
        for (i, e) in (start..end).enumerate() {
            let v = self.graph.cn_vn[e] as usize;
            let q = self.posterior[v] - self.msgs[e];
            self.scratch_q[i] = q.clamp(-MESSAGE_CLAMP, MESSAGE_CLAMP);
        }
        match self.cfg.variant {
            BpVariant::Spa => {
                self.scratch_fwd[0] = 1.0;
                for i in 0..deg {
                    let t = (self.scratch_q[i] * 0.5).tanh();
                    self.scratch_q[i] = t;
                    self.scratch_fwd[i + 1] = self.scratch_fwd[i] * t;
                }
                self.scratch_bwd[deg] = 1.0;
                for i in (0..deg).rev() {
                    self.scratch_bwd[i] = self.scratch_bwd[i + 1] * self.scratch_q[i];
                }
                for (i, e) in (start..end).enumerate() {
                    let prod = self.scratch_fwd[i] * self.scratch_bwd[i + 1];
                    let out = (2.0 * prod.atanh()).clamp(-MESSAGE_CLAMP, MESSAGE_CLAMP);
                    self.emit(e, out, refresh_posterior);
                }
            }
            BpVariant::NormalizedMinSum(alpha) => {
                self.min_sum_update(start, deg, refresh_posterior, |mag| alpha * mag);
            }
            BpVariant::OffsetMinSum(beta) => {
                self.min_sum_update(start, deg, refresh_posterior, |mag| (mag - beta).max(0.0));
            }
        }
    }

    fn min_sum_update(
        &mut self,
        start: usize,
        deg: usize,
        refresh_posterior: bool,
        shape: impl Fn(f64) -> f64,
    ) {
        let mut sign_all = 0u32;
        let mut min1 = f64::INFINITY;
        let mut min2 = f64::INFINITY;
        let mut arg_min = 0usize;
        for (i, q) in self.scratch_q[..deg].iter().enumerate() {
            let neg = u32::from(*q < 0.0);
            sign_all ^= neg;
            let a = q.abs();
            if a < min1 {
                min2 = min1;
                min1 = a;
                arg_min = i;
            } else if a < min2 {
                min2 = a;
            }
        }
        for i in 0..deg {
            let e = start + i;
            let q = self.scratch_q[i];
            let mag = shape(if i == arg_min { min2 } else { min1 });
            let sign_others = sign_all ^ u32::from(q < 0.0);
            let out = if sign_others == 1 { -mag } else { mag };
            self.emit(e, out, refresh_posterior);
        }
    }

    #[inline]
    fn emit(&mut self, e: usize, out: f64, refresh_posterior: bool) {
        let out = match &self.cfg.quantization {
            Some(q) => q.quantize(out),
            None => out,
        };
        if refresh_posterior {
            let v = self.graph.cn_vn[e] as usize;
            self.posterior[v] += out - self.msgs[e];
        }
        self.msgs[e] = out;
    }

    /// Hard decision on the current posterior plus a syndrome pass.
    fn syndrome_clear(&mut self) -> bool {
        for (h, &p) in self.hard.iter_mut().zip(self.posterior.iter()) {
            *h = u8::from(p < 0.0);
        }
        for c in 0..self.graph.n_checks {
            let mut acc = 0u8;
            for e in self.graph.cn_ptr[c]..self.graph.cn_ptr[c + 1] {
                acc ^= self.hard[self.graph.cn_vn[e as usize] as usize];
            }
            if acc == 1 {
                return false;
            }
        }
        true
    }
}

/// One-shot decode; builds the working structures each call. Prefer
/// [`BpDecoder`] when decoding many frames on one code.
pub fn decode_bp(h: &ParityCheckMatrix, llr: &LlrVector, cfg: &BpConfig) -> Result<BpOutcome> {
    BpDecoder::new(h, *cfg)?.decode(llr)
}
