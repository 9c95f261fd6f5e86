//! Canned experiments recreating the three comparison figures.
//!
//! `--quick` restricts each scheme to its headline operating points with
//! a reduced error budget; the full runs sweep the published grids (the
//! deep tails stay out of reach of a desk run and are capped by
//! max-frame rules).

use clap::Args;
use std::path::PathBuf;
use unicodec_core::bounds;
use unicodec_core::error::{Error, Result};
use unicodec_core::plot::{Series, SeriesStyle};
use unicodec_core::sim::export;
use unicodec_core::sim::scheme::{BpParams, ChainParams, LdpcCodeRef, PolarCodeRef};
use unicodec_core::sim::{
    run_experiment, AllZeroMode, ChannelConfig, ExperimentConfig, KernelChoice, RunConfig,
    SchemeConfig, SimResult, StopRule,
};

#[derive(Args)]
pub struct ReproduceArgs {
    /// Which figure: fig1, fig2 or fig3.
    pub figure: String,
    /// Reduced scale: headline points, smaller error budgets.
    #[arg(long, default_value_t = false)]
    pub quick: bool,
    #[arg(long, default_value = "runs")]
    pub out_dir: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Worker threads (0 = UNICODEC_WORKERS or machine parallelism).
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

struct Experiment {
    name: &'static str,
    scheme: SchemeConfig,
    full_grid: Vec<f64>,
    quick_grid: Vec<f64>,
    full_stop: StopRule,
    quick_stop: StopRule,
    ebn0_rate: Option<f64>,
}

fn bp(iterations: u32) -> BpParams {
    BpParams::spa_layered(iterations)
}

fn grid(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let mut out = Vec::new();
    let mut x = start;
    while x <= stop + 1e-9 {
        out.push((x * 1e6).round() / 1e6);
        x += step;
    }
    out
}

fn fig1_experiments() -> Vec<Experiment> {
    vec![
        Experiment {
            name: "fig1-polar-sc",
            scheme: SchemeConfig::PolarSc {
                code: PolarCodeRef::builtin("de:256:128"),
                kernel: KernelChoice::MinSum,
            },
            full_grid: grid(1.0, 4.5, 0.5),
            quick_grid: vec![3.0, 4.0],
            full_stop: StopRule::errors_or_frames(100, 5_000_000),
            quick_stop: StopRule::errors_or_frames(50, 1_000_000),
            ebn0_rate: None,
        },
        Experiment {
            name: "fig1-ldpc-5g-lbp8",
            scheme: SchemeConfig::LdpcBp {
                code: LdpcCodeRef::builtin("nr:128:256"),
                decoder: bp(8),
            },
            full_grid: grid(0.5, 4.0, 0.5),
            quick_grid: vec![3.5],
            full_stop: StopRule::errors_or_frames(100, 2_000_000),
            quick_stop: StopRule::errors_or_frames(50, 500_000),
            ebn0_rate: None,
        },
        Experiment {
            name: "fig1-polar-ca-scl8",
            scheme: SchemeConfig::PolarScl {
                code: PolarCodeRef::builtin("crc11:256:128"),
                list_size: 8,
                kernel: KernelChoice::MinSum,
            },
            full_grid: grid(1.0, 3.5, 0.5),
            quick_grid: vec![2.5],
            full_stop: StopRule::errors_or_frames(100, 1_000_000),
            quick_stop: StopRule::errors_or_frames(50, 200_000),
            ebn0_rate: None,
        },
        Experiment {
            name: "fig1-polar-ae-sc8",
            scheme: SchemeConfig::PolarAed {
                code: PolarCodeRef::builtin("aed:256:128"),
                ensemble: 8,
                kernel: KernelChoice::MinSum,
            },
            full_grid: grid(1.0, 3.5, 0.5),
            quick_grid: vec![3.0],
            full_stop: StopRule::errors_or_frames(100, 1_000_000),
            quick_stop: StopRule::errors_or_frames(50, 300_000),
            ebn0_rate: None,
        },
    ]
}

fn fig2_experiments() -> Vec<Experiment> {
    vec![
        Experiment {
            name: "fig2-dvbs2-lbp8",
            scheme: SchemeConfig::LdpcBp {
                code: LdpcCodeRef::builtin("dvbs2:1/2"),
                decoder: bp(8),
            },
            full_grid: grid(1.4, 2.1, 0.1),
            quick_grid: vec![1.9],
            full_stop: StopRule::errors_or_frames(50, 60_000),
            quick_stop: StopRule::errors_or_frames(50, 20_000),
            ebn0_rate: None,
        },
        Experiment {
            name: "fig2-dvbs2-lbp32",
            scheme: SchemeConfig::LdpcBp {
                code: LdpcCodeRef::builtin("dvbs2:1/2"),
                decoder: bp(32),
            },
            full_grid: grid(0.6, 0.85, 0.05),
            quick_grid: vec![0.8],
            full_stop: StopRule::errors_or_frames(50, 25_000),
            quick_stop: StopRule::errors_or_frames(50, 5_000),
            ebn0_rate: None,
        },
        Experiment {
            name: "fig2-dvbs2-bch-lbp8",
            scheme: SchemeConfig::LdpcBchBp {
                rate: "1/2".into(),
                decoder: bp(8),
            },
            // Payload-rate Eb/N0 accounting reproduces the published
            // 0.0258 dB offset of the concatenated curve.
            full_grid: vec![1.3258, 1.4258, 1.5258, 1.6258],
            quick_grid: vec![1.4258],
            full_stop: StopRule::errors_or_frames(50, 60_000),
            quick_stop: StopRule::errors_or_frames(30, 6_000),
            ebn0_rate: None,
        },
        Experiment {
            name: "fig2-polar-sc",
            scheme: SchemeConfig::PolarSc {
                code: PolarCodeRef::builtin("de:65536:32768"),
                kernel: KernelChoice::Exact,
            },
            full_grid: grid(0.9, 1.6, 0.1),
            quick_grid: vec![1.4],
            full_stop: StopRule::errors_or_frames(50, 100_000),
            quick_stop: StopRule::errors_or_frames(50, 20_000),
            ebn0_rate: None,
        },
        Experiment {
            name: "fig2-sc-ldpc-wbp8",
            scheme: SchemeConfig::ScLdpcWbp {
                chain: ChainParams {
                    chain_file: None,
                    coupling_width: Some(3),
                    chain_len: Some(10),
                    lifting: Some(1600),
                    seed: Some(1),
                },
                window_size: 8,
                iterations_per_step: 1,
            },
            full_grid: grid(1.45, 1.65, 0.05),
            quick_grid: vec![1.55],
            full_stop: StopRule::errors_or_frames(50, 30_000),
            quick_stop: StopRule::errors_or_frames(50, 10_000),
            // The figure plots the chain at its design rate 1/2; the
            // terminated chain itself is rate 0.4.
            ebn0_rate: Some(0.5),
        },
    ]
}

fn fig3_experiments() -> Vec<Experiment> {
    vec![
        Experiment {
            name: "fig3-polar-sc",
            scheme: SchemeConfig::PolarSc {
                code: PolarCodeRef::builtin("de:65536:58254"),
                kernel: KernelChoice::Exact,
            },
            full_grid: grid(3.7, 4.2, 0.1),
            quick_grid: vec![4.0],
            full_stop: StopRule::errors_or_frames(50, 100_000),
            quick_stop: StopRule::errors_or_frames(50, 20_000),
            ebn0_rate: None,
        },
        Experiment {
            name: "fig3-dvbs2-lbp8",
            scheme: SchemeConfig::LdpcBp {
                code: LdpcCodeRef::builtin("dvbs2:8/9"),
                decoder: bp(8),
            },
            full_grid: vec![3.6, 3.7, 3.75, 3.8, 3.85],
            quick_grid: vec![3.8],
            full_stop: StopRule::errors_or_frames(50, 50_000),
            quick_stop: StopRule::errors_or_frames(50, 10_000),
            ebn0_rate: None,
        },
        Experiment {
            name: "fig3-dvbs2-bch-lbp8",
            scheme: SchemeConfig::LdpcBchBp {
                rate: "8/9".into(),
                decoder: bp(8),
            },
            full_grid: vec![3.6258, 3.6758, 3.7258, 3.7758],
            quick_grid: vec![3.6758],
            full_stop: StopRule::errors_or_frames(50, 50_000),
            quick_stop: StopRule::errors_or_frames(30, 5_000),
            ebn0_rate: None,
        },
    ]
}

struct FigureSetup {
    experiments: Vec<Experiment>,
    bound: (usize, usize, Vec<f64>),
    title: &'static str,
    with_ber: bool,
}

fn setup(figure: &str) -> Result<FigureSetup> {
    match figure {
        "fig1" => Ok(FigureSetup {
            experiments: fig1_experiments(),
            bound: (256, 128, grid(0.0, 4.0, 0.1)),
            title: "N=256, R=1/2",
            with_ber: false,
        }),
        "fig2" => Ok(FigureSetup {
            experiments: fig2_experiments(),
            bound: (65536, 32768, grid(0.0, 0.55, 0.05)),
            title: "N=65536, R=1/2",
            with_ber: true,
        }),
        "fig3" => Ok(FigureSetup {
            experiments: fig3_experiments(),
            bound: (65536, 58254, grid(2.9, 3.3, 0.02)),
            title: "N=65536, R=8/9",
            with_ber: false,
        }),
        other => Err(Error::config(format!(
            "unknown figure '{other}' (expected fig1, fig2 or fig3)"
        ))),
    }
}

pub fn run(args: &ReproduceArgs) -> Result<()> {
    let setup = setup(&args.figure)?;
    let dir = args.out_dir.join(&args.figure);
    std::fs::create_dir_all(&dir).map_err(|e| Error::io(dir.display().to_string(), e))?;

    let mut series: Vec<Series> = Vec::new();
    for exp in &setup.experiments {
        let cfg = ExperimentConfig {
            name: exp.name.to_string(),
            scheme: exp.scheme.clone(),
            channel: ChannelConfig {
                ebn0_db: if args.quick {
                    exp.quick_grid.clone()
                } else {
                    exp.full_grid.clone()
                },
                ebn0_rate: exp.ebn0_rate,
            },
            stop: if args.quick {
                exp.quick_stop
            } else {
                exp.full_stop
            },
            run: RunConfig {
                seed: args.seed,
                workers: args.workers,
                all_zero: AllZeroMode::Auto,
            },
        };
        // Persist the exact configuration next to the results.
        let cfg_path = dir.join(format!("{}.toml", exp.name));
        std::fs::write(&cfg_path, cfg.to_toml())
            .map_err(|e| Error::io(cfg_path.display().to_string(), e))?;
        println!("== {} ({} points) ==", exp.name, cfg.channel.ebn0_db.len());
        let result = run_experiment(&cfg)?;
        report(&result);
        export::write_csv(&result, &dir.join(format!("{}.csv", exp.name)))?;
        export::write_json(&result, &dir.join(format!("{}.json", exp.name)))?;
        series.push(Series {
            label: result.scheme_label.clone(),
            points: result.points.iter().map(|p| (p.ebn0_db, p.fer)).collect(),
            style: SeriesStyle::Marked,
        });
        if setup.with_ber {
            series.push(Series {
                label: format!("{} (BER)", result.scheme_label),
                points: result.points.iter().map(|p| (p.ebn0_db, p.ber)).collect(),
                style: SeriesStyle::Bound,
            });
        }
    }

    let (n, k, bound_grid) = &setup.bound;
    let bound_points = bounds::bound_curve(*n, *k, bound_grid)?;
    let bound_csv = export::bound_to_csv(&bound_points);
    let bound_path = dir.join("bound.csv");
    std::fs::write(&bound_path, bound_csv)
        .map_err(|e| Error::io(bound_path.display().to_string(), e))?;
    series.push(Series {
        label: format!("meta-converse ({n},{k})"),
        points: bound_points
            .iter()
            .map(|p| (p.ebn0_db, p.fer_bound))
            .collect(),
        style: SeriesStyle::Bound,
    });

    let svg_path = dir.join(format!("{}.svg", args.figure));
    crate::write_figure(&series, setup.title, &svg_path)?;
    println!("wrote {}", svg_path.display());
    Ok(())
}

fn report(result: &SimResult) {
    for p in &result.points {
        println!(
            "  {:>6.3} dB: FER {:.4e}  BER {:.4e}  ({} frames, {} errors, {:.1}s, {})",
            p.ebn0_db, p.fer, p.ber, p.frames, p.frame_errors, p.seconds, p.termination
        );
    }
}
