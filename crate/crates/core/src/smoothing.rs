//! Separable Gaussian smoothing with clamp-to-edge borders.

use crate::error::{Error, Result};
use crate::image::Image;

/// One-dimensional half of a separable, truncated Gaussian.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianKernel {
    sigma: f64,
    radius: usize,
    weights: Vec<f64>,
}

impl GaussianKernel {
    /// Radius is `ceil(2 * sigma)`, giving a window of `2 * ceil(2 * sigma) + 1`
    /// taps. Weights are renormalized after truncation so they sum to one.
    pub fn new(sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidSigma(sigma));
        }
        let radius = (2.0 * sigma).ceil() as usize;
        let denom = 2.0 * sigma * sigma;
        let mut weights: Vec<f64> = (0..=2 * radius)
            .map(|i| {
                let d = i as f64 - radius as f64;
                (-d * d / denom).exp()
            })
            .collect();
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }
        Ok(Self {
            sigma,
            radius,
            weights,
        })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
}

/// Convenience wrapper for [`GaussianKernel::new`].
pub fn make_kernel(sigma: f64) -> Result<GaussianKernel> {
    GaussianKernel::new(sigma)
}

/// Horizontal pass then vertical pass. Every output sample is accumulated in
/// ascending tap order, so results do not depend on how rows are scheduled.
pub fn smooth(image: &Image, kernel: &GaussianKernel) -> Image {
    let (w, h) = image.dimensions();
    let r = kernel.radius;
    let weights = kernel.weights();

    let mut horiz = vec![0.0; w * h];
    let mut padded = vec![0.0; w + 2 * r];
    for y in 0..h {
        let row = image.row(y);
        for (i, p) in padded.iter_mut().enumerate() {
            let x = (i as isize - r as isize).clamp(0, w as isize - 1) as usize;
            *p = row[x];
        }
        let out = &mut horiz[y * w..(y + 1) * w];
        for (x, o) in out.iter_mut().enumerate() {
            let window = &padded[x..x + weights.len()];
            let mut acc = 0.0;
            for (wt, v) in weights.iter().zip(window) {
                acc += wt * v;
            }
            *o = acc;
        }
    }

    // Row-wise accumulation keeps the vertical pass cache friendly while
    // preserving per-pixel tap order.
    let mut out = vec![0.0; w * h];
    for y in 0..h {
        let dst = &mut out[y * w..(y + 1) * w];
        for (k, wt) in weights.iter().enumerate() {
            let sy = (y as isize + k as isize - r as isize).clamp(0, h as isize - 1) as usize;
            let src = &horiz[sy * w..(sy + 1) * w];
            for (d, s) in dst.iter_mut().zip(src) {
                *d += wt * s;
            }
        }
    }
    Image::from_parts(w, h, out)
}

/// Builds the kernel for `sigma` and smooths.
pub fn gaussian_smooth(image: &Image, sigma: f64) -> Result<Image> {
    Ok(smooth(image, &GaussianKernel::new(sigma)?))
}
