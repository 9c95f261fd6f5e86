//! Command-line interface: code construction, Monte-Carlo simulation,
//! finite-blocklength bounds, figure rendering and canned reproduction
//! runs.
//!
//! Exit codes: 0 success, 1 usage error, 2 runtime failure.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use unicodec_core::bounds;
use unicodec_core::error::Result;
use unicodec_core::ldpc::alist::save_alist;
use unicodec_core::ldpc::dvbs2::dvbs2_matrix;
use unicodec_core::ldpc::nr::NrLdpcCode;
use unicodec_core::plot::{render_figure, FigureStyle, Series, SeriesStyle};
use unicodec_core::rng::SeedSpec;
use unicodec_core::scldpc::{ChainConfig, Protograph};
use unicodec_core::sim::export;
use unicodec_core::sim::scheme::{build_polar_builtin, parse_dvbs2_rate};
use unicodec_core::sim::{run_experiment, ExperimentConfig};

mod reproduce;

#[derive(Parser)]
#[command(
    name = "unicodec",
    about = "Polar/LDPC coding workbench: construction, simulation, bounds and figures",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit code description files (polar specs, alists, base graphs,
    /// chain specs).
    Construct(ConstructArgs),
    /// Run a Monte-Carlo experiment from a TOML config.
    Simulate(SimulateArgs),
    /// Evaluate the finite-blocklength reference bound.
    Bound(BoundArgs),
    /// Render result CSV files into an SVG figure.
    Plot(PlotArgs),
    /// Re-run the built-in figure experiments.
    Reproduce(reproduce::ReproduceArgs),
}

#[derive(Args)]
struct ConstructArgs {
    #[command(subcommand)]
    what: ConstructWhat,
}

#[derive(Subcommand)]
enum ConstructWhat {
    /// Polar code spec file from a builtin constructor
    /// (de:N:K[:snr], crc11:N:K, aed:N:K).
    Polar {
        /// Builtin constructor string.
        #[arg(long)]
        builtin: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// DVB-S2 parity-check matrix as an alist file.
    Dvbs2 {
        /// Code rate: 1/2 or 8/9.
        #[arg(long)]
        rate: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// 5G-style LDPC base graph file for a payload/transmit pair.
    NrLdpc {
        #[arg(long)]
        payload: usize,
        #[arg(long)]
        tx: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Spatially-coupled chain spec file.
    ScChain {
        #[arg(long, default_value_t = 3)]
        coupling_width: usize,
        #[arg(long, default_value_t = 10)]
        chain_len: usize,
        #[arg(long, default_value_t = 1600)]
        lifting: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct SimulateArgs {
    /// Experiment description (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Output directory for CSV/JSON results.
    #[arg(long, default_value = "runs")]
    out_dir: PathBuf,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Single Eb/N0 point (prints the bound).
    #[arg(long)]
    ebn0: Option<f64>,
    /// Sweep "start:stop:step" written as CSV.
    #[arg(long)]
    sweep: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    /// Result CSV files (bound rows are drawn unmarked).
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value = "")]
    title: String,
    /// Also draw BER columns as dashed series.
    #[arg(long, default_value_t = false)]
    ber: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful exits; everything else is
            // a usage error.
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(1)
                }
            };
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Construct(args) => construct(args),
        Command::Simulate(args) => simulate(&args),
        Command::Bound(args) => bound(&args),
        Command::Plot(args) => plot(&args),
        Command::Reproduce(args) => reproduce::run(&args),
    }
}

fn construct(args: ConstructArgs) -> Result<()> {
    match args.what {
        ConstructWhat::Polar { builtin, out } => {
            let spec = build_polar_builtin(&builtin)?;
            spec.write_spec_file(&out)?;
            println!(
                "wrote polar spec (N={}, K={}, design {:.3} dB) to {}",
                spec.block_len(),
                spec.dimension(),
                spec.design_snr_db(),
                out.display()
            );
        }
        ConstructWhat::Dvbs2 { rate, out } => {
            let h = dvbs2_matrix(parse_dvbs2_rate(&rate)?)?;
            save_alist(&h, &out)?;
            println!(
                "wrote {}x{} alist ({} edges) to {}",
                h.num_rows(),
                h.num_cols(),
                h.num_edges(),
                out.display()
            );
        }
        ConstructWhat::NrLdpc { payload, tx, out } => {
            let code = NrLdpcCode::new(payload, tx)?;
            code.base_graph().write_file(&out)?;
            println!(
                "wrote base graph (Z={}, {} rows in use) to {}",
                code.z,
                code.base_rows_in_use(),
                out.display()
            );
        }
        ConstructWhat::ScChain {
            coupling_width,
            chain_len,
            lifting,
            seed,
            out,
        } => {
            let cfg = ChainConfig {
                base: Protograph::regular_4_8(),
                coupling_width,
                chain_len,
                lifting,
                seed: SeedSpec::new(seed, 0),
            };
            // Build once to validate before writing.
            let chain = unicodec_core::scldpc::build_coupled_chain(&cfg)?;
            std::fs::write(&out, cfg.to_text())
                .map_err(|e| unicodec_core::error::Error::io(out.display().to_string(), e))?;
            println!(
                "wrote chain spec (N={}, rate {:.4}) to {}",
                chain.block_len(),
                chain.rate(),
                out.display()
            );
        }
    }
    Ok(())
}

fn simulate(args: &SimulateArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| unicodec_core::error::Error::io(args.config.display().to_string(), e))?;
    let cfg = ExperimentConfig::from_toml(&text)?;
    std::fs::create_dir_all(&args.out_dir)
        .map_err(|e| unicodec_core::error::Error::io(args.out_dir.display().to_string(), e))?;
    let result = run_experiment(&cfg)?;
    for p in &result.points {
        println!(
            "{} @ {:.3} dB: FER {:.4e} (BER {:.4e}, {} frames, {} errors, {:.1}s, stop: {})",
            result.scheme_label,
            p.ebn0_db,
            p.fer,
            p.ber,
            p.frames,
            p.frame_errors,
            p.seconds,
            p.termination
        );
    }
    let csv_path = args.out_dir.join(format!("{}.csv", cfg.name));
    let json_path = args.out_dir.join(format!("{}.json", cfg.name));
    export::write_csv(&result, &csv_path)?;
    export::write_json(&result, &json_path)?;
    println!("wrote {} and {}", csv_path.display(), json_path.display());
    Ok(())
}

fn bound(args: &BoundArgs) -> Result<()> {
    match (&args.ebn0, &args.sweep) {
        (Some(ebn0), None) => {
            let eps = bounds::normal_approx_fer(args.n, args.k, *ebn0)?;
            println!("{eps:.4e}");
        }
        (None, Some(sweep)) => {
            let parts: Vec<&str> = sweep.split(':').collect();
            if parts.len() != 3 {
                return Err(unicodec_core::error::Error::config(
                    "sweep must be start:stop:step",
                ));
            }
            let parse = |s: &str| -> Result<f64> {
                s.parse()
                    .map_err(|_| unicodec_core::error::Error::config(format!("bad number '{s}'")))
            };
            let (start, stop, step) = (parse(parts[0])?, parse(parts[1])?, parse(parts[2])?);
            if step <= 0.0 || stop < start {
                return Err(unicodec_core::error::Error::config("bad sweep range"));
            }
            let mut grid = Vec::new();
            let mut x = start;
            while x <= stop + 1e-9 {
                grid.push(x);
                x += step;
            }
            let pts = bounds::bound_curve(args.n, args.k, &grid)?;
            let csv = export::bound_to_csv(&pts);
            match &args.out {
                Some(path) => {
                    std::fs::write(path, csv).map_err(|e| {
                        unicodec_core::error::Error::io(path.display().to_string(), e)
                    })?;
                    println!("wrote bound curve to {}", path.display());
                }
                None => print!("{csv}"),
            }
        }
        _ => {
            return Err(unicodec_core::error::Error::config(
                "bound needs exactly one of --ebn0 / --sweep",
            ))
        }
    }
    Ok(())
}

fn plot(args: &PlotArgs) -> Result<()> {
    let mut series: Vec<Series> = Vec::new();
    for input in &args.inputs {
        for s in export::read_csv(input)? {
            let style = if s.scheme.starts_with("bound:") {
                SeriesStyle::Bound
            } else {
                SeriesStyle::Marked
            };
            series.push(Series {
                label: s.scheme.clone(),
                points: s.rows.iter().map(|r| (r.ebn0_db, r.fer)).collect(),
                style,
            });
            if args.ber && style == SeriesStyle::Marked {
                series.push(Series {
                    label: format!("{} (BER)", s.scheme),
                    points: s.rows.iter().map(|r| (r.ebn0_db, r.ber)).collect(),
                    style: SeriesStyle::Bound,
                });
            }
        }
    }
    let style = FigureStyle {
        title: args.title.clone(),
        ..FigureStyle::default()
    };
    let svg = render_figure(&series, &style)?;
    std::fs::write(&args.out, svg)
        .map_err(|e| unicodec_core::error::Error::io(args.out.display().to_string(), e))?;
    println!("wrote {}", args.out.display());
    Ok(())
}

pub(crate) fn write_figure(series: &[Series], title: &str, path: &Path) -> Result<()> {
    let style = FigureStyle {
        title: title.to_string(),
        ..FigureStyle::default()
    };
    let svg = render_figure(series, &style)?;
    std::fs::write(path, svg)
        .map_err(|e| unicodec_core::error::Error::io(path.display().to_string(), e))?;
    Ok(())
}
