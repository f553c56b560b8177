//! The end-to-end detector and its two-scale composite.
//!
//! Detection is smooth, derivative maps, classify, region mask, exterior
//! boundary. Optional size pruning removes small components before the
//! boundary is taken.

use std::thread;

use crate::classify::{classify, region_mask, ClassificationMap, RegionMode};
use crate::derivatives::{hessian_maps, DifferentialMaps, Stencil};
use crate::error::{Error, Result};
use crate::image::Image;
use crate::morphology::{exterior_boundary, label_components, prune_small, BinaryMask, Connectivity};
use crate::smoothing::gaussian_smooth;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectOptions {
    pub sigma: f64,
    pub mode: RegionMode,
    pub stencil: Stencil,
    /// Components smaller than this are dropped; 0 and 1 keep everything.
    pub min_area: usize,
    pub connectivity: Connectivity,
}

impl Default for DetectOptions {
    fn default() -> Self {
        Self {
            sigma: 10.0,
            mode: RegionMode::Combined,
            stencil: Stencil::Sobel,
            min_area: 0,
            connectivity: Connectivity::Eight,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Detection {
    pub region: BinaryMask,
    pub boundary: BinaryMask,
}

/// Every intermediate of one detector run.
#[derive(Debug, Clone)]
pub struct DetectionStages {
    pub smoothed: Image,
    pub maps: DifferentialMaps,
    pub classification: ClassificationMap,
    pub region: BinaryMask,
    pub boundary: BinaryMask,
}

impl DetectionStages {
    pub fn detection(&self) -> Detection {
        Detection {
            region: self.region.clone(),
            boundary: self.boundary.clone(),
        }
    }
}

pub fn detect_stages(image: &Image, options: &DetectOptions) -> Result<DetectionStages> {
    let smoothed = gaussian_smooth(image, options.sigma)?;
    let maps = hessian_maps(&smoothed, options.stencil)?;
    let classification = classify(&maps);
    let mut region = region_mask(&classification, options.mode);
    if options.min_area > 1 {
        region = prune_small(&label_components(&region, options.connectivity), options.min_area);
    }
    let boundary = exterior_boundary(&region);
    Ok(DetectionStages {
        smoothed,
        maps,
        classification,
        region,
        boundary,
    })
}

pub fn detect(image: &Image, options: &DetectOptions) -> Result<Detection> {
    let stages = detect_stages(image, options)?;
    Ok(Detection {
        region: stages.region,
        boundary: stages.boundary,
    })
}

/// Detection at one smoothing scale with no pruning.
pub fn detect_at_scale(
    image: &Image,
    sigma: f64,
    mode: RegionMode,
    stencil: Stencil,
) -> Result<Detection> {
    detect(
        image,
        &DetectOptions {
            sigma,
            mode,
            stencil,
            ..DetectOptions::default()
        },
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalePair {
    small: f64,
    large: f64,
}

impl ScalePair {
    pub fn new(small: f64, large: f64) -> Result<Self> {
        let ok = small.is_finite() && large.is_finite() && small > 0.0 && small < large;
        if !ok {
            return Err(Error::InvalidScalePair { small, large });
        }
        Ok(Self { small, large })
    }

    pub fn small(&self) -> f64 {
        self.small
    }

    pub fn large(&self) -> f64 {
        self.large
    }
}

/// Regions found at the small scale and contours found at the large scale.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composite {
    pub fill: BinaryMask,
    pub outline: BinaryMask,
}

pub fn multiscale_composite(
    image: &Image,
    scales: ScalePair,
    mode: RegionMode,
    stencil: Stencil,
) -> Result<Composite> {
    let (small, large) = thread::scope(|s| {
        let small = s.spawn(|| detect_at_scale(image, scales.small, mode, stencil));
        let large = detect_at_scale(image, scales.large, mode, stencil);
        (small.join().expect("small-scale detection panicked"), large)
    });
    Ok(Composite {
        fill: small?.region,
        outline: large?.boundary,
    })
}
