//! Second-partial-derivative test per pixel.
//!
//! A pixel is convex when `det > 0` and `fxx > 0`, concave when `det > 0` and
//! `fxx < 0`, and neither otherwise. Inequalities are strict and there is no
//! tolerance band around zero.

use std::fmt;
use std::str::FromStr;

use crate::derivatives::DifferentialMaps;
use crate::morphology::BinaryMask;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Curvature {
    Neither = 0,
    Convex = 1,
    Concave = 2,
}

impl Curvature {
    /// Applies the test to a single point.
    #[inline]
    pub fn from_hessian(fxx: f64, fxy: f64, fyy: f64) -> Self {
        let det = fxx * fyy - fxy * fxy;
        Self::from_det(det, fxx)
    }

    #[inline]
    pub fn from_det(det: f64, fxx: f64) -> Self {
        if det > 0.0 {
            if fxx > 0.0 {
                return Curvature::Convex;
            }
            if fxx < 0.0 {
                return Curvature::Concave;
            }
        }
        Curvature::Neither
    }
}

/// Which labels count as foreground when building a region mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RegionMode {
    ConvexOnly,
    ConcaveOnly,
    /// Convex or concave; exactly the pixels with `det > 0`.
    #[default]
    Combined,
}

impl RegionMode {
    pub fn accepts(self, label: Curvature) -> bool {
        match self {
            RegionMode::ConvexOnly => label == Curvature::Convex,
            RegionMode::ConcaveOnly => label == Curvature::Concave,
            RegionMode::Combined => label != Curvature::Neither,
        }
    }
}

impl fmt::Display for RegionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegionMode::ConvexOnly => "convex-only",
            RegionMode::ConcaveOnly => "concave-only",
            RegionMode::Combined => "combined",
        })
    }
}

impl FromStr for RegionMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "convex-only" | "convex" => Ok(RegionMode::ConvexOnly),
            "concave-only" | "concave" => Ok(RegionMode::ConcaveOnly),
            "combined" => Ok(RegionMode::Combined),
            other => Err(format!(
                "unknown region mode `{other}` (expected convex-only|concave-only|combined)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassificationMap {
    width: usize,
    height: usize,
    labels: Vec<Curvature>,
}

impl ClassificationMap {
    pub fn new(width: usize, height: usize, labels: Vec<Curvature>) -> Option<Self> {
        (width > 0 && height > 0 && labels.len() == width * height).then_some(Self {
            width,
            height,
            labels,
        })
    }

    pub fn uniform(width: usize, height: usize, label: Curvature) -> Option<Self> {
        Self::new(width, height, vec![label; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn labels(&self) -> &[Curvature] {
        &self.labels
    }

    pub fn get(&self, x: usize, y: usize) -> Curvature {
        self.labels[y * self.width + x]
    }

    pub fn count(&self, label: Curvature) -> usize {
        self.labels.iter().filter(|&&l| l == label).count()
    }

    /// Fraction of pixels carrying `label`.
    pub fn fraction(&self, label: Curvature) -> f64 {
        self.count(label) as f64 / self.labels.len() as f64
    }

    /// Labels as bytes (`0` neither, `1` convex, `2` concave).
    pub fn to_bytes(&self) -> Vec<u8> {
        self.labels.iter().map(|&l| l as u8).collect()
    }
}

pub fn classify(maps: &DifferentialMaps) -> ClassificationMap {
    let (width, height) = maps.dimensions();
    let labels = maps
        .det
        .samples()
        .iter()
        .zip(maps.fxx.samples())
        .map(|(&d, &fxx)| Curvature::from_det(d, fxx))
        .collect();
    ClassificationMap {
        width,
        height,
        labels,
    }
}

pub fn region_mask(classification: &ClassificationMap, mode: RegionMode) -> BinaryMask {
    BinaryMask::from_parts(
        classification.width,
        classification.height,
        classification
            .labels
            .iter()
            .map(|&l| mode.accepts(l))
            .collect(),
    )
}
