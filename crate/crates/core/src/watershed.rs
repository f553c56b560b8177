//! Marker-less watershed by flooding, applied to the gradient modulus.
//!
//! Relief values are quantized to 16-bit levels. Every regional minimum (an
//! 8-connected plateau with no strictly lower 8-neighbor) seeds its own basin.
//! Pixels leave a priority queue in `(level, insertion sequence)` order; at pop
//! time a pixel joins the single basin among its labeled 8-neighbors, or
//! becomes a watershed pixel when it sees two or more. Watershed pixels do not
//! propagate. Pixels never reached because they are walled in by watershed
//! pixels are themselves marked as watershed.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::derivatives::{gradient, Stencil};
use crate::error::Result;
use crate::image::Image;
use crate::morphology::{for_each_neighbor, BinaryMask, LabelMap, NEIGHBORS_8};
use crate::smoothing::gaussian_smooth;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasinLabeling {
    /// Basin ids `1..=count`; watershed pixels carry 0.
    pub labels: LabelMap,
    pub watershed: BinaryMask,
}

impl BasinLabeling {
    pub fn basin_count(&self) -> u32 {
        self.labels.count()
    }
}

/// Per-pixel `sqrt(fx^2 + fy^2)`.
pub fn gradient_modulus(image: &Image, stencil: Stencil) -> Result<Image> {
    let (fx, fy) = gradient(image, stencil)?;
    let samples = fx
        .samples()
        .iter()
        .zip(fy.samples())
        .map(|(a, b)| (a * a + b * b).sqrt())
        .collect();
    Ok(Image::from_parts(image.width(), image.height(), samples))
}

/// Affine map of the relief range onto `0..=65535`, rounded. A constant
/// relief quantizes to all zeros.
pub fn quantize_relief(relief: &Image) -> Vec<u16> {
    let (lo, hi) = relief.min_max();
    if hi <= lo {
        return vec![0; relief.len()];
    }
    let scale = f64::from(u16::MAX) / (hi - lo);
    relief
        .samples()
        .iter()
        .map(|&v| ((v - lo) * scale).round().clamp(0.0, f64::from(u16::MAX)) as u16)
        .collect()
}

/// Regional minima of a level grid, labeled `1..=count` in raster order of
/// their first pixel. Non-minimum pixels are 0.
pub fn regional_minima(width: usize, height: usize, levels: &[u16]) -> (Vec<u32>, u32) {
    assert_eq!(levels.len(), width * height);
    let mut visited = vec![false; levels.len()];
    let mut labels = vec![0u32; levels.len()];
    let mut count = 0u32;
    let mut plateau = Vec::new();
    let mut queue = VecDeque::new();

    for start in 0..levels.len() {
        if visited[start] {
            continue;
        }
        let level = levels[start];
        let mut has_lower = false;
        plateau.clear();
        visited[start] = true;
        queue.push_back(start);
        while let Some(i) = queue.pop_front() {
            plateau.push(i);
            for_each_neighbor(width, height, i % width, i / width, &NEIGHBORS_8, |n| {
                let lv = levels[n];
                if lv < level {
                    has_lower = true;
                } else if lv == level && !visited[n] {
                    visited[n] = true;
                    queue.push_back(n);
                }
            });
        }
        if !has_lower {
            count += 1;
            for &i in &plateau {
                labels[i] = count;
            }
        }
    }
    (labels, count)
}

/// Floods an already quantized relief.
pub fn flood_levels(width: usize, height: usize, levels: &[u16]) -> BasinLabeling {
    let n = width * height;
    let (mut labels, count) = regional_minima(width, height, levels);
    let mut watershed = vec![false; n];
    let mut queued = vec![false; n];
    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;

    for i in 0..n {
        if labels[i] != 0 {
            queued[i] = true;
            heap.push(Reverse((levels[i], seq, i)));
            seq += 1;
        }
    }

    while let Some(Reverse((level, _, i))) = heap.pop() {
        let (x, y) = (i % width, i / width);
        if labels[i] == 0 {
            let mut seen = 0u32;
            let mut conflict = false;
            for_each_neighbor(width, height, x, y, &NEIGHBORS_8, |nb| {
                let l = labels[nb];
                if l != 0 {
                    if seen == 0 {
                        seen = l;
                    } else if l != seen {
                        conflict = true;
                    }
                }
            });
            if conflict {
                watershed[i] = true;
                continue;
            }
            debug_assert_ne!(seen, 0, "queued pixel without a labeled neighbor");
            labels[i] = seen;
        }
        for_each_neighbor(width, height, x, y, &NEIGHBORS_8, |nb| {
            if !queued[nb] && labels[nb] == 0 {
                queued[nb] = true;
                heap.push(Reverse((levels[nb].max(level), seq, nb)));
                seq += 1;
            }
        });
    }

    for i in 0..n {
        if labels[i] == 0 {
            watershed[i] = true;
        }
    }

    BasinLabeling {
        labels: LabelMap::from_parts(width, height, labels, count),
        watershed: BinaryMask::from_parts(width, height, watershed),
    }
}

/// Quantizes `relief` to 16-bit levels and floods it.
pub fn flood(relief: &Image) -> BasinLabeling {
    flood_levels(relief.width(), relief.height(), &quantize_relief(relief))
}

/// Optional smoothing (`sigma > 0`), gradient modulus, flood; returns the
/// full basin labeling.
pub fn watershed_basins(image: &Image, sigma: f64, stencil: Stencil) -> Result<BasinLabeling> {
    let relief = if sigma > 0.0 {
        gradient_modulus(&gaussian_smooth(image, sigma)?, stencil)?
    } else {
        gradient_modulus(image, stencil)?
    };
    Ok(flood(&relief))
}

/// The watershed-line mask of [`watershed_basins`].
pub fn watershed_contours(image: &Image, sigma: f64, stencil: Stencil) -> Result<BinaryMask> {
    Ok(watershed_basins(image, sigma, stencil)?.watershed)
}
