//! Command execution behind the `curvseg` binary.
//!
//! Every command writes files named `<prefix>_<artifact>.<ext>`. The prefix
//! defaults to the input path without its extension (or `oracle` / `bench`
//! for commands without an input).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use thiserror::Error;

use crate::bench::{bench_pipeline, format_reports};
use crate::classify::{classify, region_mask, ClassificationMap, Curvature, RegionMode};
use crate::derivatives::{curvature_sign_field, hessian_maps, Stencil};
use crate::error::Error;
use crate::image::Image;
use crate::io::{load_image, load_mask, save_heatmap, save_image, save_mask, save_png, LoadOptions};
use crate::morphology::{exterior_boundary, label_components, prune_small, BinaryMask, Connectivity};
use crate::multiscale::{detect_stages, multiscale_composite, DetectOptions, ScalePair};
use crate::oracle::{analytic_classification, rasterize, GridSpec, PeaksSurface};
use crate::render::{render_basins, render_overlay, OverlayColors, OverlayStyle, RgbImage, BLUE, RED, WHITE};
use crate::smoothing::gaussian_smooth;
use crate::watershed::{flood, gradient_modulus};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Smooth,
    Maps,
    Classify,
    Boundary,
    Detect,
    Multiscale,
    Watershed,
    Compare,
    Oracle,
    Bench,
}

impl Command {
    fn needs_input(self) -> bool {
        !matches!(self, Command::Oracle | Command::Bench)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub sigma: f64,
    pub sigma2: Option<f64>,
    pub mode: RegionMode,
    pub stencil: Stencil,
    pub min_area: usize,
    pub connectivity: Connectivity,
    pub style: OverlayStyle,
    /// Oracle raster size per side.
    pub grid: usize,
    /// Bench image size.
    pub bench_size: (usize, usize),
    pub runs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: Command::Detect,
            input: None,
            output: None,
            sigma: 10.0,
            sigma2: None,
            mode: RegionMode::Combined,
            stencil: Stencil::Sobel,
            min_area: 0,
            connectivity: Connectivity::Eight,
            style: OverlayStyle::Both,
            grid: 512,
            bench_size: (1200, 1200),
            runs: 5,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Stage { .. } => 1,
        }
    }
}

trait StageExt<T> {
    fn stage(self, stage: &'static str) -> Result<T, CliError>;
}

impl<T> StageExt<T> for Result<T, Error> {
    fn stage(self, stage: &'static str) -> Result<T, CliError> {
        self.map_err(|source| CliError::Stage { stage, source })
    }
}

/// What a run produced.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunOutcome {
    pub written: Vec<PathBuf>,
    /// `key=value` lines, also echoed by the binary.
    pub report: String,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.command.needs_input() && self.input.is_none() {
            return Err(CliError::Usage(format!("{:?} needs an input image", self.command)));
        }
        let sigma_ok = self.sigma.is_finite()
            && (self.sigma > 0.0 || (self.command == Command::Watershed && self.sigma == 0.0));
        if !sigma_ok {
            return Err(CliError::Usage(format!("invalid --sigma {}", self.sigma)));
        }
        if self.command == Command::Multiscale {
            match self.sigma2 {
                Some(s2) if s2.is_finite() && s2 > self.sigma => {}
                Some(s2) => {
                    return Err(CliError::Usage(format!(
                        "--sigma2 ({s2}) must exceed --sigma ({})",
                        self.sigma
                    )))
                }
                None => return Err(CliError::Usage("multiscale needs --sigma2".into())),
            }
        }
        if self.command == Command::Oracle && self.grid < 5 {
            return Err(CliError::Usage("--grid must be at least 5".into()));
        }
        if self.bench_size.0 < 5 || self.bench_size.1 < 5 {
            return Err(CliError::Usage("--size must be at least 5x5".into()));
        }
        Ok(())
    }

    fn prefix(&self) -> PathBuf {
        if let Some(out) = &self.output {
            return out.clone();
        }
        match (&self.input, self.command) {
            (Some(input), _) => input.with_extension(""),
            (None, Command::Bench) => PathBuf::from("bench"),
            (None, _) => PathBuf::from("oracle"),
        }
    }

    fn detect_options(&self, sigma: f64) -> DetectOptions {
        DetectOptions {
            sigma,
            mode: self.mode,
            stencil: self.stencil,
            min_area: self.min_area,
            connectivity: self.connectivity,
        }
    }
}

struct Writer {
    prefix: PathBuf,
    written: Vec<PathBuf>,
}

impl Writer {
    fn path(&self, suffix: &str) -> PathBuf {
        let mut name = self
            .prefix
            .file_name()
            .map(|s| s.to_os_string())
            .unwrap_or_default();
        name.push(format!("_{suffix}"));
        self.prefix.with_file_name(name)
    }

    fn mask(&mut self, suffix: &str, mask: &BinaryMask) -> Result<(), CliError> {
        let p = self.path(suffix);
        save_mask(mask, &p).stage("write")?;
        self.written.push(p);
        Ok(())
    }

    fn image(&mut self, suffix: &str, image: &Image) -> Result<(), CliError> {
        let p = self.path(suffix);
        save_image(image, &p).stage("write")?;
        self.written.push(p);
        Ok(())
    }

    fn heatmap(&mut self, suffix: &str, field: &Image) -> Result<(), CliError> {
        let p = self.path(suffix);
        save_heatmap(field, &p).stage("write")?;
        self.written.push(p);
        Ok(())
    }

    fn png(&mut self, suffix: &str, image: &RgbImage) -> Result<(), CliError> {
        let p = self.path(suffix);
        save_png(image, &p).stage("write")?;
        self.written.push(p);
        Ok(())
    }

    fn text(&mut self, suffix: &str, text: &str) -> Result<(), CliError> {
        let p = self.path(suffix);
        std::fs::write(&p, text)
            .map_err(|source| Error::Write {
                path: p.clone(),
                source,
            })
            .stage("write")?;
        self.written.push(p);
        Ok(())
    }
}

/// Neither is mid-gray, convex white, concave black.
fn classification_image(c: &ClassificationMap) -> Image {
    let samples = c
        .labels()
        .iter()
        .map(|l| match l {
            Curvature::Neither => 128.0 / 255.0,
            Curvature::Convex => 1.0,
            Curvature::Concave => 0.0,
        })
        .collect();
    Image::from_parts(c.width(), c.height(), samples)
}

fn load(path: &Path) -> Result<Image, CliError> {
    load_image(path, &LoadOptions::default()).stage("load")
}

fn secs(t: Instant) -> f64 {
    t.elapsed().as_secs_f64()
}

pub fn run(config: &RunConfig) -> Result<RunOutcome, CliError> {
    config.validate()?;
    let mut out = Writer {
        prefix: config.prefix(),
        written: Vec::new(),
    };
    let mut report = String::new();
    let colors = OverlayColors::default();
    let input = config.input.as_deref();

    match config.command {
        Command::Smooth => {
            let image = load(input.unwrap())?;
            let smoothed = gaussian_smooth(&image, config.sigma).stage("smooth")?;
            out.image("smooth.pgm", &smoothed)?;
        }
        Command::Maps => {
            let image = load(input.unwrap())?;
            let smoothed = gaussian_smooth(&image, config.sigma).stage("smooth")?;
            let maps = hessian_maps(&smoothed, config.stencil).stage("derivatives")?;
            for (name, field) in maps.fields() {
                out.heatmap(&format!("{name}.pgm"), field)?;
            }
            let signs = curvature_sign_field(&maps)
                .into_iter()
                .map(|s| f64::from(s + 1) / 2.0)
                .collect();
            out.image("sign.pgm", &Image::from_parts(maps.width(), maps.height(), signs))?;
        }
        Command::Classify => {
            let image = load(input.unwrap())?;
            let smoothed = gaussian_smooth(&image, config.sigma).stage("smooth")?;
            let maps = hessian_maps(&smoothed, config.stencil).stage("derivatives")?;
            let classes = classify(&maps);
            out.image("classes.pgm", &classification_image(&classes))?;
            let empty = BinaryMask::empty(image.width(), image.height()).stage("render")?;
            let overlay = render_overlay(&image, &classes, &empty, OverlayStyle::RegionFill, &colors)
                .stage("render")?;
            out.png("classes.png", &overlay)?;
            let _ = writeln!(report, "convex_pixels={}", classes.count(Curvature::Convex));
            let _ = writeln!(report, "concave_pixels={}", classes.count(Curvature::Concave));
            let _ = writeln!(report, "neither_pixels={}", classes.count(Curvature::Neither));
        }
        Command::Boundary => {
            let mut mask = load_mask(input.unwrap()).stage("load")?;
            if config.min_area > 1 {
                mask = prune_small(&label_components(&mask, config.connectivity), config.min_area);
            }
            out.mask("boundary.pgm", &exterior_boundary(&mask))?;
        }
        Command::Detect => {
            let image = load(input.unwrap())?;
            let t = Instant::now();
            let stages = detect_stages(&image, &config.detect_options(config.sigma)).stage("detect")?;
            let elapsed = secs(t);
            out.mask("region.pgm", &stages.region)?;
            out.mask("boundary.pgm", &stages.boundary)?;
            let overlay = render_overlay(
                &image,
                &stages.classification,
                &stages.boundary,
                config.style,
                &colors,
            )
            .stage("render")?;
            out.png("overlay.png", &overlay)?;
            let components = label_components(&stages.region, config.connectivity).count();
            let _ = writeln!(report, "components={components}");
            let _ = writeln!(report, "region_pixels={}", stages.region.count());
            let _ = writeln!(report, "boundary_pixels={}", stages.boundary.count());
            let _ = writeln!(report, "time_detect_s={elapsed:.6}");
        }
        Command::Multiscale => {
            let image = load(input.unwrap())?;
            let scales = ScalePair::new(config.sigma, config.sigma2.unwrap()).stage("multiscale")?;
            let composite =
                multiscale_composite(&image, scales, config.mode, config.stencil).stage("multiscale")?;
            out.mask("fill.pgm", &composite.fill)?;
            out.mask("outline.pgm", &composite.outline)?;
            let mut rgb = RgbImage::from_gray(&image);
            rgb.tint(&composite.fill, BLUE).stage("render")?;
            rgb.paint(&composite.outline, RED).stage("render")?;
            out.png("multiscale.png", &rgb)?;
        }
        Command::Watershed => {
            let image = load(input.unwrap())?;
            let relief = if config.sigma > 0.0 {
                gaussian_smooth(&image, config.sigma).stage("smooth")?
            } else {
                image.clone()
            };
            let relief = gradient_modulus(&relief, config.stencil).stage("gradient")?;
            let basins = flood(&relief);
            out.png("basins.png", &render_basins(&basins))?;
            out.mask("watershed.pgm", &basins.watershed)?;
            let mut rgb = RgbImage::from_gray(&image);
            rgb.paint(&basins.watershed, WHITE).stage("render")?;
            out.png("watershed_overlay.png", &rgb)?;
            let _ = writeln!(report, "basins={}", basins.basin_count());
        }
        Command::Compare => {
            let image = load(input.unwrap())?;
            report = compare(config, &image, &mut out)?;
        }
        Command::Oracle => {
            let grid = GridSpec::square(-3.0, 3.0, config.grid);
            let raster = rasterize(&PeaksSurface, &grid).stage("oracle")?;
            let truth = analytic_classification(&PeaksSurface, &grid).stage("oracle")?;
            let region = region_mask(&truth, config.mode);
            let boundary = exterior_boundary(&region);
            out.image("surface.pgm", &raster.image)?;
            out.image("truth.pgm", &classification_image(&truth))?;
            out.mask("truth_boundary.pgm", &boundary)?;
            let overlay = render_overlay(&raster.image, &truth, &boundary, config.style, &colors)
                .stage("render")?;
            out.png("truth.png", &overlay)?;
            let _ = writeln!(report, "grid={}", config.grid);
            for (name, l) in [
                ("convex", Curvature::Convex),
                ("concave", Curvature::Concave),
                ("neither", Curvature::Neither),
            ] {
                let _ = writeln!(report, "{name}_fraction={:.6}", truth.fraction(l));
            }
        }
        Command::Bench => {
            let reports = bench_pipeline(&[config.bench_size], &[config.sigma], config.runs)
                .stage("bench")?;
            report = format_reports(&reports);
            if config.output.is_some() {
                out.text("bench.txt", &report)?;
            }
        }
    }

    Ok(RunOutcome {
        written: out.written,
        report,
    })
}

fn compare(config: &RunConfig, image: &Image, out: &mut Writer) -> Result<String, CliError> {
    let opts = config.detect_options(config.sigma);

    let t = Instant::now();
    let smoothed = gaussian_smooth(image, opts.sigma).stage("smooth")?;
    let t_smooth = secs(t);

    let t = Instant::now();
    let maps = hessian_maps(&smoothed, opts.stencil).stage("derivatives")?;
    let t_maps = secs(t);

    let t = Instant::now();
    let classes = classify(&maps);
    let mut region = region_mask(&classes, opts.mode);
    if opts.min_area > 1 {
        region = prune_small(&label_components(&region, opts.connectivity), opts.min_area);
    }
    let t_classify = secs(t);

    let t = Instant::now();
    let boundary = exterior_boundary(&region);
    let t_boundary = secs(t);

    let t = Instant::now();
    let relief = gradient_modulus(&smoothed, opts.stencil).stage("gradient")?;
    let t_gradient = secs(t);

    let t = Instant::now();
    let basins = flood(&relief);
    let t_flood = secs(t);

    let components = label_components(&region, opts.connectivity).count();

    let mut left = RgbImage::from_gray(image);
    left.paint(&basins.watershed, WHITE).stage("render")?;
    let right = render_overlay(image, &classes, &boundary, config.style, &OverlayColors::default())
        .stage("render")?;
    out.png("compare.png", &left.beside(&right, 8))?;

    let mut r = String::new();
    let input = config
        .input
        .as_deref()
        .map(|p| p.display().to_string())
        .unwrap_or_default();
    let _ = writeln!(r, "input={input}");
    let _ = writeln!(r, "width={}", image.width());
    let _ = writeln!(r, "height={}", image.height());
    let _ = writeln!(r, "sigma={}", opts.sigma);
    let _ = writeln!(r, "mode={}", opts.mode);
    let _ = writeln!(r, "stencil={}", opts.stencil);
    let _ = writeln!(r, "min_area={}", opts.min_area);
    let _ = writeln!(r, "convexity_components={components}");
    let _ = writeln!(r, "convexity_region_pixels={}", region.count());
    let _ = writeln!(r, "convexity_boundary_pixels={}", boundary.count());
    let _ = writeln!(r, "watershed_basins={}", basins.basin_count());
    let _ = writeln!(r, "watershed_line_pixels={}", basins.watershed.count());
    let _ = writeln!(r, "time_smooth_s={t_smooth:.6}");
    let _ = writeln!(r, "time_derivatives_s={t_maps:.6}");
    let _ = writeln!(r, "time_classify_s={t_classify:.6}");
    let _ = writeln!(r, "time_boundary_s={t_boundary:.6}");
    let _ = writeln!(
        r,
        "time_convexity_total_s={:.6}",
        t_smooth + t_maps + t_classify + t_boundary
    );
    let _ = writeln!(r, "time_gradient_s={t_gradient:.6}");
    let _ = writeln!(r, "time_flood_s={t_flood:.6}");
    let _ = writeln!(r, "time_watershed_total_s={:.6}", t_smooth + t_gradient + t_flood);
    out.text("report.txt", &r)?;
    Ok(r)
}

/// Parses `key=value` report lines.
pub fn parse_report(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}
