//! Grayscale image representation.
//!
//! Samples are real intensities stored row-major with the origin at the
//! top-left corner; `y` grows downward. Loaded images are normalized to
//! `[0, 1]`, but intermediate images (derivative fields, synthetic test
//! surfaces) may hold any finite value.

use crate::error::{Error, Result};

/// A pixel position that is known to be inside some image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PixelCoord {
    pub x: usize,
    pub y: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    width: usize,
    height: usize,
    samples: Vec<f64>,
}

impl Image {
    /// Builds an image, checking that the buffer matches the dimensions and
    /// holds only finite values.
    pub fn new(width: usize, height: usize, samples: Vec<f64>) -> Result<Self> {
        check_dimensions(width, height)?;
        if samples.len() != width * height {
            return Err(Error::SampleCount {
                width,
                height,
                expected: width * height,
                actual: samples.len(),
            });
        }
        if let Some(index) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            width,
            height,
            samples,
        })
    }

    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> f64,
    ) -> Result<Self> {
        check_dimensions(width, height)?;
        let mut samples = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                samples.push(f(x, y));
            }
        }
        Self::new(width, height, samples)
    }

    pub fn constant(width: usize, height: usize, value: f64) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    /// Internal constructor for buffers produced by arithmetic on a valid
    /// image. Skips the finiteness scan.
    pub(crate) fn from_parts(width: usize, height: usize, samples: Vec<f64>) -> Self {
        debug_assert_eq!(samples.len(), width * height);
        Self {
            width,
            height,
            samples,
        }
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

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn row(&self, y: usize) -> &[f64] {
        &self.samples[y * self.width..(y + 1) * self.width]
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.samples[y * self.width + x]
    }

    pub fn at(&self, p: PixelCoord) -> f64 {
        self.get(p.x, p.y)
    }

    pub fn coord(&self, x: usize, y: usize) -> Option<PixelCoord> {
        (x < self.width && y < self.height).then_some(PixelCoord { x, y })
    }

    pub fn min_max(&self) -> (f64, f64) {
        self.samples
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            })
    }

    /// Applies `f` to every sample. Non-finite results are rejected.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(
            self.width,
            self.height,
            self.samples.iter().map(|&v| f(v)).collect(),
        )
    }

    /// Affine rescale onto `[0, 1]`. A constant image maps to 0.5.
    pub fn rescaled_unit(&self) -> Self {
        let (lo, hi) = self.min_max();
        let samples = if hi > lo {
            let span = hi - lo;
            self.samples.iter().map(|&v| (v - lo) / span).collect()
        } else {
            vec![0.5; self.samples.len()]
        };
        Self::from_parts(self.width, self.height, samples)
    }

    /// Rotates the image a quarter turn counter-clockwise. Output pixel
    /// `(x', y')` takes input pixel `(width - 1 - y', x')`.
    pub fn rotated_ccw(&self) -> Self {
        let (w, h) = (self.width, self.height);
        let mut out = Vec::with_capacity(w * h);
        for y in 0..w {
            for x in 0..h {
                out.push(self.get(w - 1 - y, x));
            }
        }
        Self::from_parts(h, w, out)
    }

    pub fn flipped_horizontal(&self) -> Self {
        let mut out = Vec::with_capacity(self.len());
        for y in 0..self.height {
            out.extend(self.row(y).iter().rev());
        }
        Self::from_parts(self.width, self.height, out)
    }

    pub fn flipped_vertical(&self) -> Self {
        let mut out = Vec::with_capacity(self.len());
        for y in (0..self.height).rev() {
            out.extend_from_slice(self.row(y));
        }
        Self::from_parts(self.width, self.height, out)
    }
}

pub(crate) fn check_dimensions(width: usize, height: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::InvalidDimensions { width, height });
    }
    Ok(())
}
