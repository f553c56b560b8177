//! Wall-clock timing of each pipeline stage on synthetic inputs.
//!
//! Each measurement discards one warm-up run, then reports the median of the
//! remaining runs. All stages run on the calling thread.

use std::fmt::Write as _;
use std::time::Instant;

use crate::classify::{classify, region_mask, RegionMode};
use crate::derivatives::{hessian_maps, Stencil};
use crate::error::Result;
use crate::image::Image;
use crate::morphology::exterior_boundary;
use crate::multiscale::{detect, DetectOptions};
use crate::smoothing::{smooth, GaussianKernel};
use crate::synthetic::noisy_two_blob;
use crate::watershed::watershed_contours;

pub const MIN_RUNS: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub stage: String,
    pub width: usize,
    pub height: usize,
    pub sigma: f64,
    pub median_seconds: f64,
    pub runs: usize,
    pub threads: usize,
}

impl BenchReport {
    pub fn throughput(&self) -> f64 {
        (self.width * self.height) as f64 / self.median_seconds
    }

    /// One `key=value` line.
    pub fn to_kv(&self) -> String {
        format!(
            "stage={} width={} height={} sigma={} median_seconds={:.6} runs={} threads={} throughput_pps={:.0}",
            self.stage,
            self.width,
            self.height,
            self.sigma,
            self.median_seconds,
            self.runs,
            self.threads,
            self.throughput()
        )
    }
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

/// Median seconds of `runs` timed calls after one warm-up call.
pub fn time_median<T>(runs: usize, mut f: impl FnMut() -> T) -> f64 {
    std::hint::black_box(f());
    let mut times: Vec<f64> = (0..runs.max(1))
        .map(|_| {
            let t = Instant::now();
            std::hint::black_box(f());
            t.elapsed().as_secs_f64()
        })
        .collect();
    median(&mut times)
}

pub fn bench_pipeline(
    sizes: &[(usize, usize)],
    sigmas: &[f64],
    runs: usize,
) -> Result<Vec<BenchReport>> {
    let runs = runs.max(MIN_RUNS);
    let mut reports = Vec::new();
    for &(width, height) in sizes {
        let image = noisy_two_blob(width, height, 0)?;
        for &sigma in sigmas {
            reports.extend(bench_one(&image, sigma, runs)?);
        }
    }
    Ok(reports)
}

fn bench_one(image: &Image, sigma: f64, runs: usize) -> Result<Vec<BenchReport>> {
    let kernel = GaussianKernel::new(sigma)?;
    let smoothed = smooth(image, &kernel);
    let maps = hessian_maps(&smoothed, Stencil::Sobel)?;
    let classes = classify(&maps);
    let region = region_mask(&classes, RegionMode::Combined);
    let options = DetectOptions {
        sigma,
        ..DetectOptions::default()
    };

    let mut timings: Vec<(&str, f64)> = vec![
        ("smooth", time_median(runs, || smooth(image, &kernel))),
        (
            "derivatives",
            time_median(runs, || hessian_maps(&smoothed, Stencil::Sobel)),
        ),
        (
            "classify",
            time_median(runs, || region_mask(&classify(&maps), RegionMode::Combined)),
        ),
        ("boundary", time_median(runs, || exterior_boundary(&region))),
        ("detect", time_median(runs, || detect(image, &options))),
    ];
    timings.push((
        "watershed",
        time_median(runs, || watershed_contours(image, sigma, Stencil::Sobel)),
    ));

    Ok(timings
        .into_iter()
        .map(|(stage, median_seconds)| BenchReport {
            stage: stage.to_string(),
            width: image.width(),
            height: image.height(),
            sigma,
            median_seconds,
            runs,
            threads: 1,
        })
        .collect())
}

pub fn format_reports(reports: &[BenchReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "{}", r.to_kv());
    }
    out
}
