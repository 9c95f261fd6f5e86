//! Parallel Monte-Carlo simulation: experiment configuration, the frame
//! engine, result statistics and persistence.
//!
//! Determinism contract: for a fixed (master seed, worker count) the
//! aggregated result is bit-identical across runs. Worker w draws noise
//! from stream w of the master seed; frames are dispatched in synchronous
//! rounds of a fixed batch size, and stop rules are evaluated between
//! rounds on the worker-ordered aggregate.

pub mod export;
pub mod scheme;
pub mod stats;

pub use scheme::{BpParams, ChainParams, KernelChoice, LdpcCodeRef, PolarCodeRef, SchemeConfig};

use crate::error::{Error, Result};
use crate::rng::{Rng, SeedSpec};
use scheme::{build_worker, SchemeWorker};
use serde::{Deserialize, Serialize};
use stats::wilson_interval;

/// Environment variable supplying the default worker count.
pub const WORKERS_ENV: &str = "UNICODEC_WORKERS";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelConfig {
    /// Eb/N0 grid in dB, strictly increasing.
    pub ebn0_db: Vec<f64>,
    /// Rate used for the Eb/N0 to sigma conversion; defaults to the
    /// scheme's payload rate (payload bits / channel uses).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ebn0_rate: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StopRule {
    pub min_frame_errors: u64,
    pub max_frames: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_wall_seconds: Option<f64>,
}

impl StopRule {
    pub fn errors_or_frames(min_frame_errors: u64, max_frames: u64) -> Self {
        StopRule {
            min_frame_errors,
            max_frames,
            max_wall_seconds: None,
        }
    }
}

impl Default for StopRule {
    /// 100 frame errors or 10^7 frames, whichever first.
    fn default() -> Self {
        StopRule::errors_or_frames(100, 10_000_000)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AllZeroMode {
    /// Use the all-zero shortcut exactly when the scheme declares the
    /// required symmetry.
    #[default]
    Auto,
    Always,
    Never,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    /// 0 = UNICODEC_WORKERS or the machine's parallelism.
    #[serde(default)]
    pub workers: usize,
    #[serde(default)]
    pub all_zero: AllZeroMode,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    pub scheme: SchemeConfig,
    pub channel: ChannelConfig,
    #[serde(default)]
    pub stop: StopRule,
    pub run: RunConfig,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.channel.ebn0_db.is_empty() {
            return Err(Error::config("snr grid must be nonempty"));
        }
        if self.channel.ebn0_db.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::config("snr grid must be strictly increasing"));
        }
        if self.stop.min_frame_errors < 1 {
            return Err(Error::config("min_frame_errors must be at least 1"));
        }
        if let Some(r) = self.channel.ebn0_rate {
            if !(r > 0.0 && r <= 1.0) {
                return Err(Error::config(format!("ebn0_rate {r} outside (0, 1]")));
            }
        }
        Ok(())
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| Error::config(format!("{e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }
}

/// Per-SNR-point statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnrPointResult {
    pub ebn0_db: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    pub bits_total: u64,
    pub fer: f64,
    pub ber: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seconds: f64,
    /// Histogram of iteration counts (iterative decoders only); index i
    /// counts frames that used i+1 iterations.
    pub iterations_hist: Vec<u64>,
    /// Which stop rule ended the point: "errors", "frames" or "wall".
    pub termination: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub name: String,
    pub scheme_label: String,
    pub payload_bits: usize,
    pub tx_bits: usize,
    /// Rate used in the Eb/N0 conversion.
    pub ebn0_rate: f64,
    pub all_zero_used: bool,
    pub workers: usize,
    pub points: Vec<SnrPointResult>,
    /// The full configuration, embedded for provenance.
    pub config: ExperimentConfig,
}

impl SimResult {
    /// Equality of everything except wall-clock fields.
    pub fn stats_eq(&self, other: &SimResult) -> bool {
        if self.points.len() != other.points.len() {
            return false;
        }
        let strip = |p: &SnrPointResult| {
            (
                p.ebn0_db.to_bits(),
                p.frames,
                p.frame_errors,
                p.bit_errors,
                p.bits_total,
                p.fer.to_bits(),
                p.ber.to_bits(),
                p.iterations_hist.clone(),
                p.termination.clone(),
            )
        };
        self.name == other.name
            && self.scheme_label == other.scheme_label
            && self
                .points
                .iter()
                .zip(other.points.iter())
                .all(|(a, b)| strip(a) == strip(b))
    }
}

fn resolve_workers(cfg: &RunConfig) -> usize {
    if cfg.workers > 0 {
        return cfg.workers;
    }
    if let Ok(env) = std::env::var(WORKERS_ENV) {
        if let Ok(n) = env.trim().parse::<usize>() {
            if n > 0 {
                return n;
            }
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

struct BatchOutcome {
    frames: u64,
    frame_errors: u64,
    bit_errors: u64,
    iter_hist: Vec<u64>,
}

/// Runs the experiment: every SNR point until its stop rule fires.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<SimResult> {
    cfg.validate()?;
    let workers = resolve_workers(&cfg.run);
    let master = SeedSpec::new(cfg.run.seed, 0);
    // Auxiliary stream (automorphism sampling and the like) sits past the
    // noise streams so it never collides with a worker.
    let aux_seed = master.stream(workers as u64 + 1_000_000);
    let probe = build_worker(&cfg.scheme, aux_seed)?;
    let payload_bits = probe.payload_bits();
    let counted_bits = probe.counted_bits();
    let tx_bits = probe.tx_bits();
    let symmetric = probe.symmetric();
    drop(probe);
    let all_zero = match cfg.run.all_zero {
        AllZeroMode::Auto => symmetric,
        AllZeroMode::Always => true,
        AllZeroMode::Never => false,
    };
    let ebn0_rate = cfg
        .channel
        .ebn0_rate
        .unwrap_or(payload_bits as f64 / tx_bits as f64);

    // Fixed batch size: a pure function of the scheme so that results
    // depend only on (seed, workers).
    let batch = (131_072 / tx_bits.max(1)).clamp(4, 256) as u64;
    let max_iter_hist = 64usize;

    let mut points = Vec::with_capacity(cfg.channel.ebn0_db.len());
    for &ebn0_db in &cfg.channel.ebn0_db {
        let sigma = crate::channel::ebn0_to_sigma(ebn0_db, ebn0_rate)?;
        let start = std::time::Instant::now();
        let mut frames = 0u64;
        let mut frame_errors = 0u64;
        let mut bit_errors = 0u64;
        let mut iter_hist = vec![0u64; max_iter_hist];
        let mut termination = "frames";

        if cfg.stop.max_frames > 0 {
            let mut states: Vec<(Box<dyn SchemeWorker>, Rng)> = (0..workers)
                .map(|w| {
                    // One noise stream per worker per SNR point, derived
                    // from (seed, point index, worker).
                    let stream = (points.len() as u64) * 65_536 + w as u64;
                    Ok((
                        build_worker(&cfg.scheme, aux_seed)?,
                        Rng::from_seed(master.stream(stream)),
                    ))
                })
                .collect::<Result<_>>()?;

            'point: loop {
                // Trim the final round so max_frames is never exceeded:
                // per-worker shares are fixed before the round starts.
                let remaining = cfg.stop.max_frames - frames;
                let round_total = (batch * workers as u64).min(remaining);
                let shares: Vec<u64> = (0..workers as u64)
                    .map(|w| {
                        round_total / workers as u64
                            + u64::from(w < round_total % workers as u64)
                    })
                    .collect();
                let outcomes: Result<Vec<BatchOutcome>> = std::thread::scope(|scope| {
                    let handles: Vec<_> = states
                        .iter_mut()
                        .zip(shares.iter())
                        .map(|((worker, rng), &share)| {
                            scope.spawn(move || -> Result<BatchOutcome> {
                                let mut out = BatchOutcome {
                                    frames: 0,
                                    frame_errors: 0,
                                    bit_errors: 0,
                                    iter_hist: vec![0; max_iter_hist],
                                };
                                for _ in 0..share {
                                    let fr = worker.run_frame(sigma, all_zero, rng)?;
                                    out.frames += 1;
                                    if fr.bit_errors > 0 {
                                        out.frame_errors += 1;
                                    }
                                    out.bit_errors += fr.bit_errors;
                                    if let Some(it) = fr.iterations {
                                        let slot = (it.max(1) as usize - 1).min(max_iter_hist - 1);
                                        out.iter_hist[slot] += 1;
                                    }
                                }
                                Ok(out)
                            })
                        })
                        .collect();
                    handles
                        .into_iter()
                        .map(|h| h.join().expect("worker thread panicked"))
                        .collect()
                });
                for out in outcomes? {
                    frames += out.frames;
                    frame_errors += out.frame_errors;
                    bit_errors += out.bit_errors;
                    for (h, v) in iter_hist.iter_mut().zip(out.iter_hist.iter()) {
                        *h += v;
                    }
                }
                if frame_errors >= cfg.stop.min_frame_errors {
                    termination = "errors";
                    break 'point;
                }
                if frames >= cfg.stop.max_frames {
                    termination = "frames";
                    break 'point;
                }
                if let Some(wall) = cfg.stop.max_wall_seconds {
                    if start.elapsed().as_secs_f64() >= wall {
                        termination = "wall";
                        break 'point;
                    }
                }
            }
        }

        let fer = if frames > 0 {
            frame_errors as f64 / frames as f64
        } else {
            0.0
        };
        let bits_total = frames * counted_bits as u64;
        let ber = if bits_total > 0 {
            bit_errors as f64 / bits_total as f64
        } else {
            0.0
        };
        let (ci_low, ci_high) = wilson_interval(frame_errors, frames);
        points.push(SnrPointResult {
            ebn0_db,
            frames,
            frame_errors,
            bit_errors,
            bits_total,
            fer,
            ber,
            ci_low,
            ci_high,
            seconds: start.elapsed().as_secs_f64(),
            iterations_hist: iter_hist,
            termination: termination.to_string(),
        });
    }

    Ok(SimResult {
        name: cfg.name.clone(),
        scheme_label: cfg.scheme.label(),
        payload_bits,
        tx_bits,
        ebn0_rate,
        all_zero_used: all_zero,
        workers,
        points,
        config: cfg.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy_config(max_frames: u64) -> ExperimentConfig {
        ExperimentConfig {
            name: "toy".into(),
            scheme: SchemeConfig::PolarSc {
                code: PolarCodeRef::builtin("de:8:4:2.0"),
                kernel: KernelChoice::MinSum,
            },
            channel: ChannelConfig {
                ebn0_db: vec![2.0, 4.0],
                ebn0_rate: None,
            },
            stop: StopRule {
                min_frame_errors: 50,
                max_frames,
                max_wall_seconds: None,
            },
            run: RunConfig {
                seed: 99,
                workers: 2,
                all_zero: AllZeroMode::Auto,
            },
        }
    }

    #[test]
    fn repeat_runs_are_bit_identical() {
        let cfg = toy_config(4000);
        let a = run_experiment(&cfg).unwrap();
        let b = run_experiment(&cfg).unwrap();
        assert!(a.stats_eq(&b));
        assert_eq!(a.points.len(), 2);
        assert!(a.points[0].frames > 0);
    }

    #[test]
    fn zero_max_frames_is_empty_but_sound() {
        let cfg = toy_config(0);
        let r = run_experiment(&cfg).unwrap();
        assert_eq!(r.points.len(), 2);
        for p in &r.points {
            assert_eq!(p.frames, 0);
            assert_eq!(p.fer, 0.0);
            assert_eq!(p.termination, "frames");
        }
    }

    #[test]
    fn stop_rules_respected() {
        let cfg = toy_config(1000);
        let r = run_experiment(&cfg).unwrap();
        for p in &r.points {
            assert!(p.frames <= 1000);
            assert!(
                p.frame_errors >= 50 || p.termination != "errors",
                "termination {} with {} errors",
                p.termination,
                p.frame_errors
            );
        }
    }

    #[test]
    fn changed_worker_count_keeps_overlapping_intervals() {
        let mut cfg = toy_config(6000);
        cfg.stop.min_frame_errors = 200;
        cfg.run.workers = 2;
        let a = run_experiment(&cfg).unwrap();
        cfg.run.workers = 3;
        let b = run_experiment(&cfg).unwrap();
        for (pa, pb) in a.points.iter().zip(b.points.iter()) {
            assert!(
                pa.ci_low <= pb.ci_high && pb.ci_low <= pa.ci_high,
                "intervals disjoint: [{}, {}] vs [{}, {}]",
                pa.ci_low,
                pa.ci_high,
                pb.ci_low,
                pb.ci_high
            );
        }
    }

    #[test]
    fn ber_bounded_by_fer_share() {
        let cfg = toy_config(3000);
        let r = run_experiment(&cfg).unwrap();
        for p in &r.points {
            assert!(p.ber <= p.fer + 1e-12, "ber {} fer {}", p.ber, p.fer);
            // Frame flagged erroneous iff it contributed bit errors.
            if p.frame_errors == 0 {
                assert_eq!(p.bit_errors, 0);
            } else {
                assert!(p.bit_errors >= p.frame_errors as u64);
            }
        }
    }

    #[test]
    fn wall_clock_rule_stops_early() {
        let mut cfg = toy_config(u64::MAX / 2);
        cfg.stop.min_frame_errors = u64::MAX / 2;
        cfg.stop.max_wall_seconds = Some(0.0);
        let r = run_experiment(&cfg).unwrap();
        for p in &r.points {
            assert_eq!(p.termination, "wall");
            assert!(p.frames > 0);
        }
    }

    #[test]
    fn iteration_histogram_accounts_every_frame() {
        let cfg = ExperimentConfig {
            name: "hist".into(),
            scheme: SchemeConfig::LdpcBp {
                code: crate::sim::scheme::LdpcCodeRef::builtin("nr:128:256"),
                decoder: crate::sim::scheme::BpParams::spa_layered(8),
            },
            channel: ChannelConfig {
                ebn0_db: vec![3.0],
                ebn0_rate: None,
            },
            stop: StopRule::errors_or_frames(5, 300),
            run: RunConfig {
                seed: 11,
                workers: 1,
                all_zero: AllZeroMode::Auto,
            },
        };
        let r = run_experiment(&cfg).unwrap();
        let p = &r.points[0];
        let hist_total: u64 = p.iterations_hist.iter().sum();
        assert_eq!(hist_total, p.frames);
        // Early termination puts most mass below the iteration cap.
        assert!(p.iterations_hist[0] + p.iterations_hist[1] > 0);
    }

    #[test]
    fn config_round_trips_through_toml() {
        let cfg = toy_config(100);
        let text = cfg.to_toml();
        let back = ExperimentConfig::from_toml(&text).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = r#"
name = "x"
surprise = 1
[scheme]
kind = "polar-sc"
[scheme.code]
builtin = "de:8:4"
[channel]
ebn0_db = [1.0]
[run]
seed = 1
"#;
        assert!(ExperimentConfig::from_toml(text).is_err());
    }

    #[test]
    fn snr_grid_must_increase() {
        let mut cfg = toy_config(10);
        cfg.channel.ebn0_db = vec![2.0, 1.0];
        assert!(run_experiment(&cfg).is_err());
    }
}
