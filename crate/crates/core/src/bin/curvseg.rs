use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use curvseg::cli::{run, Command, RunConfig};
use curvseg::{Connectivity, OverlayStyle, RegionMode, Stencil};

/// Closed-contour detection from the sign of the Hessian determinant.
///
/// With only an input path, runs `detect` with default settings.
#[derive(Parser)]
#[command(name = "curvseg", version, args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Sub>,

    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand)]
enum Sub {
    /// Gaussian-smooth an image.
    Smooth(Opts),
    /// Export derivative, determinant and curvature fields as heatmaps.
    Maps(Opts),
    /// Per-pixel convex / concave / neither labels.
    Classify(Opts),
    /// Exterior boundary of a mask image.
    Boundary(Opts),
    /// Region mask, boundary mask and overlay.
    Detect(Opts),
    /// Regions at --sigma drawn filled, contours at --sigma2 drawn as outlines.
    Multiscale(Opts),
    /// Gradient watershed baseline.
    Watershed(Opts),
    /// Watershed and convexity side by side, plus a key=value report.
    Compare(Opts),
    /// Rasterize the analytic peaks surface and its exact classification.
    Oracle(Opts),
    /// Time every stage on a synthetic image.
    Bench(Opts),
}

#[derive(Args, Clone)]
struct Opts {
    /// Input PGM or PNG.
    input: Option<PathBuf>,

    /// Output prefix; files are written as <prefix>_<name>.<ext>.
    #[arg(short, long)]
    output: Option<PathBuf>,

    /// Smoothing scale in pixels.
    #[arg(long, default_value_t = 10.0)]
    sigma: f64,

    /// Large scale for `multiscale`.
    #[arg(long)]
    sigma2: Option<f64>,

    /// convex-only, concave-only or combined.
    #[arg(long, default_value = "combined")]
    mode: RegionMode,

    /// sobel or central.
    #[arg(long, default_value = "sobel")]
    stencil: Stencil,

    /// Drop region components smaller than this many pixels (0 keeps all).
    #[arg(long, default_value_t = 0)]
    min_area: usize,

    /// Pixel adjacency for components: 4 or 8.
    #[arg(long, default_value_t = 8, value_parser = parse_connectivity)]
    connectivity: u8,

    /// Overlay style: fill, boundary or both.
    #[arg(long, default_value = "both")]
    style: OverlayStyle,

    /// Oracle raster size per side.
    #[arg(long, default_value_t = 512)]
    grid: usize,

    /// Bench image size, WIDTHxHEIGHT.
    #[arg(long, default_value = "1200x1200", value_parser = parse_size)]
    size: (usize, usize),

    /// Timed runs per bench stage.
    #[arg(long, default_value_t = 5)]
    runs: usize,
}

fn parse_size(s: &str) -> Result<(usize, usize), String> {
    let (w, h) = s
        .split_once('x')
        .ok_or_else(|| format!("expected WIDTHxHEIGHT, got `{s}`"))?;
    let parse = |v: &str| v.parse::<usize>().map_err(|e| format!("{v}: {e}"));
    Ok((parse(w)?, parse(h)?))
}

fn parse_connectivity(s: &str) -> Result<u8, String> {
    match s {
        "4" => Ok(4),
        "8" => Ok(8),
        other => Err(format!("connectivity must be 4 or 8, got `{other}`")),
    }
}

fn config(command: Command, o: Opts) -> RunConfig {
    RunConfig {
        command,
        input: o.input,
        output: o.output,
        sigma: o.sigma,
        sigma2: o.sigma2,
        mode: o.mode,
        stencil: o.stencil,
        min_area: o.min_area,
        connectivity: if o.connectivity == 4 {
            Connectivity::Four
        } else {
            Connectivity::Eight
        },
        style: o.style,
        grid: o.grid,
        bench_size: o.size,
        runs: o.runs,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match cli.command {
        Some(Sub::Smooth(o)) => config(Command::Smooth, o),
        Some(Sub::Maps(o)) => config(Command::Maps, o),
        Some(Sub::Classify(o)) => config(Command::Classify, o),
        Some(Sub::Boundary(o)) => config(Command::Boundary, o),
        Some(Sub::Detect(o)) => config(Command::Detect, o),
        Some(Sub::Multiscale(o)) => config(Command::Multiscale, o),
        Some(Sub::Watershed(o)) => config(Command::Watershed, o),
        Some(Sub::Compare(o)) => config(Command::Compare, o),
        Some(Sub::Oracle(o)) => config(Command::Oracle, o),
        Some(Sub::Bench(o)) => config(Command::Bench, o),
        None => config(Command::Detect, cli.opts),
    };

    match run(&cfg) {
        Ok(outcome) => {
            for path in &outcome.written {
                eprintln!("wrote {}", path.display());
            }
            print!("{}", outcome.report);
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("curvseg: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
