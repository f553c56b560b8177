//! First and second derivative fields, the Hessian determinant and Gaussian
//! curvature of an image viewed as a height surface.
//!
//! Second derivatives are obtained by applying the first-derivative stencil
//! twice: `fxx` and `fxy` come from differentiating `fx`, `fyy` from
//! differentiating `fy`. The y-then-x mixed partial is never formed.
//!
//! Borders replicate the nearest edge pixel. With `y` pointing down, a
//! positive `fy` means intensity increases toward the bottom of the image.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::image::Image;

/// Discrete first-derivative operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Stencil {
    /// 3x3 Sobel correlation, `[[-1,0,1],[-2,0,2],[-1,0,1]]` for x and its
    /// transpose for y. Scales a true derivative by 8.
    #[default]
    Sobel,
    /// `(f(x+1) - f(x-1)) / 2`.
    Central,
}

impl fmt::Display for Stencil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stencil::Sobel => "sobel",
            Stencil::Central => "central",
        })
    }
}

impl FromStr for Stencil {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "sobel" => Ok(Stencil::Sobel),
            "central" => Ok(Stencil::Central),
            other => Err(format!("unknown stencil `{other}` (expected sobel|central)")),
        }
    }
}

/// Pixels closer than this to the frame see the replicated border in at least
/// one of the two stacked stencil applications.
pub const INTERIOR_MARGIN: usize = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct DifferentialMaps {
    pub fx: Image,
    pub fy: Image,
    pub fxx: Image,
    pub fxy: Image,
    pub fyy: Image,
    /// Hessian determinant `fxx * fyy - fxy^2`.
    pub det: Image,
    /// Gaussian curvature `det / (1 + fx^2 + fy^2)^2`.
    pub curvature: Image,
    pub stencil: Stencil,
}

impl DifferentialMaps {
    pub fn width(&self) -> usize {
        self.det.width()
    }

    pub fn height(&self) -> usize {
        self.det.height()
    }

    pub fn dimensions(&self) -> (usize, usize) {
        self.det.dimensions()
    }

    /// `(name, field)` pairs in a fixed order, for export.
    pub fn fields(&self) -> [(&'static str, &Image); 7] {
        [
            ("fx", &self.fx),
            ("fy", &self.fy),
            ("fxx", &self.fxx),
            ("fxy", &self.fxy),
            ("fyy", &self.fyy),
            ("det", &self.det),
            ("curvature", &self.curvature),
        ]
    }
}

fn require_size(image: &Image, min: usize) -> Result<()> {
    let (width, height) = image.dimensions();
    if width < min || height < min {
        return Err(Error::TooSmall { width, height, min });
    }
    Ok(())
}

fn d_dx(image: &Image, stencil: Stencil) -> Image {
    let (w, h) = image.dimensions();
    let mut out = Vec::with_capacity(w * h);
    for y in 0..h {
        let mid = image.row(y);
        match stencil {
            Stencil::Central => {
                for x in 0..w {
                    let l = x.saturating_sub(1);
                    let r = (x + 1).min(w - 1);
                    out.push((mid[r] - mid[l]) / 2.0);
                }
            }
            Stencil::Sobel => {
                let up = image.row(y.saturating_sub(1));
                let down = image.row((y + 1).min(h - 1));
                for x in 0..w {
                    let l = x.saturating_sub(1);
                    let r = (x + 1).min(w - 1);
                    out.push((up[r] - up[l]) + 2.0 * (mid[r] - mid[l]) + (down[r] - down[l]));
                }
            }
        }
    }
    Image::from_parts(w, h, out)
}

fn d_dy(image: &Image, stencil: Stencil) -> Image {
    let (w, h) = image.dimensions();
    let mut out = Vec::with_capacity(w * h);
    for y in 0..h {
        let up = image.row(y.saturating_sub(1));
        let down = image.row((y + 1).min(h - 1));
        match stencil {
            Stencil::Central => {
                out.extend(up.iter().zip(down).map(|(u, d)| (d - u) / 2.0));
            }
            Stencil::Sobel => {
                for x in 0..w {
                    let l = x.saturating_sub(1);
                    let r = (x + 1).min(w - 1);
                    out.push((down[l] - up[l]) + 2.0 * (down[x] - up[x]) + (down[r] - up[r]));
                }
            }
        }
    }
    Image::from_parts(w, h, out)
}

/// `(fx, fy)` under the chosen stencil. Needs at least a 3x3 image.
pub fn gradient(image: &Image, stencil: Stencil) -> Result<(Image, Image)> {
    require_size(image, 3)?;
    Ok((d_dx(image, stencil), d_dy(image, stencil)))
}

/// All derivative fields plus determinant and curvature. Needs at least 5x5.
pub fn hessian_maps(image: &Image, stencil: Stencil) -> Result<DifferentialMaps> {
    require_size(image, 5)?;
    let fx = d_dx(image, stencil);
    let fy = d_dy(image, stencil);
    let fxx = d_dx(&fx, stencil);
    let fxy = d_dy(&fx, stencil);
    let fyy = d_dy(&fy, stencil);

    let (w, h) = image.dimensions();
    let mut det = Vec::with_capacity(w * h);
    let mut curvature = Vec::with_capacity(w * h);
    for i in 0..w * h {
        let (a, b, c) = (fxx.samples()[i], fxy.samples()[i], fyy.samples()[i]);
        let d = a * c - b * b;
        let (gx, gy) = (fx.samples()[i], fy.samples()[i]);
        let n = 1.0 + gx * gx + gy * gy;
        det.push(d);
        curvature.push(d / (n * n));
    }

    Ok(DifferentialMaps {
        fx,
        fy,
        fxx,
        fxy,
        fyy,
        det: Image::from_parts(w, h, det),
        curvature: Image::from_parts(w, h, curvature),
        stencil,
    })
}

/// Per-pixel sign of the determinant, which is also the sign of the Gaussian
/// curvature since the curvature denominator is positive.
pub fn curvature_sign_field(maps: &DifferentialMaps) -> Vec<i8> {
    maps.det
        .samples()
        .iter()
        .map(|&d| {
            if d > 0.0 {
                1
            } else if d < 0.0 {
                -1
            } else {
                0
            }
        })
        .collect()
}

/// True for pixels whose 5x5 neighborhood lies inside the image.
pub fn is_interior(width: usize, height: usize, x: usize, y: usize) -> bool {
    x >= INTERIOR_MARGIN
        && y >= INTERIOR_MARGIN
        && x + INTERIOR_MARGIN < width
        && y + INTERIOR_MARGIN < height
}
