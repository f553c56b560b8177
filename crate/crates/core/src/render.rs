//! RGB visualizations: classification overlays, mask overlays, basin maps.

use crate::classify::{ClassificationMap, Curvature};
use crate::error::{Error, Result};
use crate::image::Image;
use crate::io::to_u8;
use crate::morphology::{BinaryMask, LabelMap};
use crate::watershed::BasinLabeling;

pub type Rgb = [u8; 3];

pub const BLUE: Rgb = [0, 0, 255];
pub const RED: Rgb = [255, 0, 0];
pub const WHITE: Rgb = [255, 255, 255];
pub const BLACK: Rgb = [0, 0, 0];
pub const YELLOW: Rgb = [255, 255, 0];

/// Packed 8-bit RGB, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl RgbImage {
    pub fn new(width: usize, height: usize, fill: Rgb) -> Self {
        let mut data = Vec::with_capacity(width * height * 3);
        for _ in 0..width * height {
            data.extend_from_slice(&fill);
        }
        Self {
            width,
            height,
            data,
        }
    }

    /// Replicates the gray level of each sample into all three channels.
    pub fn from_gray(image: &Image) -> Self {
        let mut data = Vec::with_capacity(image.len() * 3);
        for &v in image.samples() {
            let g = to_u8(v);
            data.extend_from_slice(&[g, g, g]);
        }
        Self {
            width: image.width(),
            height: image.height(),
            data,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn get(&self, x: usize, y: usize) -> Rgb {
        let i = 3 * (y * self.width + x);
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    pub fn put(&mut self, x: usize, y: usize, c: Rgb) {
        let i = 3 * (y * self.width + x);
        self.data[i..i + 3].copy_from_slice(&c);
    }

    fn blend_at(&mut self, i: usize, c: Rgb) {
        let px = &mut self.data[3 * i..3 * i + 3];
        for (p, &t) in px.iter_mut().zip(&c) {
            *p = ((u16::from(*p) + u16::from(t)) / 2) as u8;
        }
    }

    fn paint_at(&mut self, i: usize, c: Rgb) {
        self.data[3 * i..3 * i + 3].copy_from_slice(&c);
    }

    /// 50% blend of `color` over every set pixel of `mask`.
    pub fn tint(&mut self, mask: &BinaryMask, color: Rgb) -> Result<()> {
        self.check(mask.dimensions())?;
        for (i, _) in mask.bits().iter().enumerate().filter(|(_, &b)| b) {
            self.blend_at(i, color);
        }
        Ok(())
    }

    /// Opaque `color` over every set pixel of `mask`.
    pub fn paint(&mut self, mask: &BinaryMask, color: Rgb) -> Result<()> {
        self.check(mask.dimensions())?;
        for (i, _) in mask.bits().iter().enumerate().filter(|(_, &b)| b) {
            self.paint_at(i, color);
        }
        Ok(())
    }

    fn check(&self, dims: (usize, usize)) -> Result<()> {
        if dims != (self.width, self.height) {
            return Err(Error::DimensionMismatch {
                expected: (self.width, self.height),
                actual: dims,
            });
        }
        Ok(())
    }

    /// Places `right` beside `self` with a `gap`-pixel black gutter.
    pub fn beside(&self, right: &RgbImage, gap: usize) -> RgbImage {
        let width = self.width + gap + right.width;
        let height = self.height.max(right.height);
        let mut out = RgbImage::new(width, height, BLACK);
        for y in 0..self.height {
            for x in 0..self.width {
                out.put(x, y, self.get(x, y));
            }
        }
        for y in 0..right.height {
            for x in 0..right.width {
                out.put(self.width + gap + x, y, right.get(x, y));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OverlayStyle {
    RegionFill,
    BoundaryOnly,
    #[default]
    Both,
}

impl std::str::FromStr for OverlayStyle {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "fill" | "region-fill" => Ok(OverlayStyle::RegionFill),
            "boundary" | "boundary-only" => Ok(OverlayStyle::BoundaryOnly),
            "both" => Ok(OverlayStyle::Both),
            other => Err(format!("unknown overlay style `{other}` (expected fill|boundary|both)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OverlayColors {
    pub convex: Rgb,
    pub concave: Rgb,
    pub boundary: Rgb,
}

impl Default for OverlayColors {
    fn default() -> Self {
        Self {
            convex: BLUE,
            concave: RED,
            boundary: YELLOW,
        }
    }
}

/// Gray base, convex pixels tinted blue and concave red at 50%, boundary
/// pixels drawn opaque on top.
pub fn render_overlay(
    base: &Image,
    classification: &ClassificationMap,
    boundary: &BinaryMask,
    style: OverlayStyle,
    colors: &OverlayColors,
) -> Result<RgbImage> {
    let dims = base.dimensions();
    for actual in [classification.dimensions(), boundary.dimensions()] {
        if actual != dims {
            return Err(Error::DimensionMismatch {
                expected: dims,
                actual,
            });
        }
    }
    let mut out = RgbImage::from_gray(base);
    if matches!(style, OverlayStyle::RegionFill | OverlayStyle::Both) {
        for (i, &label) in classification.labels().iter().enumerate() {
            match label {
                Curvature::Convex => out.blend_at(i, colors.convex),
                Curvature::Concave => out.blend_at(i, colors.concave),
                Curvature::Neither => {}
            }
        }
    }
    if matches!(style, OverlayStyle::BoundaryOnly | OverlayStyle::Both) {
        out.paint(boundary, colors.boundary)?;
    }
    Ok(out)
}

/// Deterministic color for a nonzero label.
pub fn label_color(label: u32) -> Rgb {
    // splitmix-style scramble; keep channels away from pure black/white.
    let mut z = u64::from(label).wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    let ch = |s: u32| 40 + ((z >> s) & 0xff) as u8 % 176;
    [ch(0), ch(8), ch(16)]
}

/// Label 0 black, every other label a hashed color.
pub fn render_labels(labels: &LabelMap) -> RgbImage {
    let mut out = RgbImage::new(labels.width(), labels.height(), BLACK);
    for (i, &l) in labels.labels().iter().enumerate() {
        if l != 0 {
            out.paint_at(i, label_color(l));
        }
    }
    out
}

/// Basin colors with watershed pixels in white.
pub fn render_basins(basins: &BasinLabeling) -> RgbImage {
    let mut out = render_labels(&basins.labels);
    out.paint(&basins.watershed, WHITE)
        .expect("basin masks share dimensions");
    out
}
