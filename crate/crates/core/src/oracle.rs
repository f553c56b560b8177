//! Closed-form test surfaces with exact derivatives.
//!
//! These give ground truth for the discrete pipeline: sample a surface onto a
//! grid, run the pipeline, and compare against the second-derivative test
//! applied to the exact partials at each node.

use crate::classify::{ClassificationMap, Curvature};
use crate::error::{Error, Result};
use crate::image::Image;

/// Value and partial derivatives up to second order at one point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet {
    pub z: f64,
    pub zx: f64,
    pub zy: f64,
    pub zxx: f64,
    pub zxy: f64,
    pub zyy: f64,
}

impl Jet {
    pub fn det(&self) -> f64 {
        self.zxx * self.zyy - self.zxy * self.zxy
    }

    pub fn curvature(&self) -> f64 {
        let n = 1.0 + self.zx * self.zx + self.zy * self.zy;
        self.det() / (n * n)
    }

    pub fn classify(&self) -> Curvature {
        Curvature::from_det(self.det(), self.zxx)
    }
}

impl std::ops::Add for Jet {
    type Output = Jet;

    fn add(self, o: Jet) -> Jet {
        Jet {
            z: self.z + o.z,
            zx: self.zx + o.zx,
            zy: self.zy + o.zy,
            zxx: self.zxx + o.zxx,
            zxy: self.zxy + o.zxy,
            zyy: self.zyy + o.zyy,
        }
    }
}

pub trait AnalyticSurface {
    fn eval(&self, x: f64, y: f64) -> Jet;
}

/// `P(x, y) * exp(Q(x, y))` with `Q = -a (x - x0)^2 - a (y - y0)^2`, given
/// the polynomial's value and partials at the point.
fn poly_times_gaussian(p: Jet, a: f64, dx: f64, dy: f64) -> Jet {
    let e = (-a * (dx * dx + dy * dy)).exp();
    let (qx, qy) = (-2.0 * a * dx, -2.0 * a * dy);
    let (qxx, qyy) = (-2.0 * a, -2.0 * a);
    Jet {
        z: p.z * e,
        zx: (p.zx + p.z * qx) * e,
        zy: (p.zy + p.z * qy) * e,
        zxx: (p.zxx + 2.0 * p.zx * qx + p.z * (qxx + qx * qx)) * e,
        zxy: (p.zxy + p.zx * qy + p.zy * qx + p.z * qx * qy) * e,
        zyy: (p.zyy + 2.0 * p.zy * qy + p.z * (qyy + qy * qy)) * e,
    }
}

/// The three-Gaussian "peaks" test surface
/// `3(1-x)^2 e^{-x^2-(y+1)^2} - 2(x - 5x^3 - 5y^5) e^{-x^2-y^2} - e^{-(x+1)^2-y^2} / 3`.
#[derive(Debug, Clone, Copy, Default)]
pub struct PeaksSurface;

impl AnalyticSurface for PeaksSurface {
    fn eval(&self, x: f64, y: f64) -> Jet {
        let u = 1.0 - x;
        let first = poly_times_gaussian(
            Jet {
                z: 3.0 * u * u,
                zx: -6.0 * u,
                zxx: 6.0,
                ..Jet::default()
            },
            1.0,
            x,
            y + 1.0,
        );
        let (x2, y2) = (x * x, y * y);
        let middle = poly_times_gaussian(
            Jet {
                z: -2.0 * x + 10.0 * x2 * x + 10.0 * y2 * y2 * y,
                zx: -2.0 + 30.0 * x2,
                zy: 50.0 * y2 * y2,
                zxx: 60.0 * x,
                zxy: 0.0,
                zyy: 200.0 * y2 * y,
            },
            1.0,
            x,
            y,
        );
        let last = poly_times_gaussian(
            Jet {
                z: -1.0 / 3.0,
                ..Jet::default()
            },
            1.0,
            x + 1.0,
            y,
        );
        first + middle + last
    }
}

/// `a x^2 + b x y + c y^2`.
#[derive(Debug, Clone, Copy)]
pub struct Quadratic {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Quadratic {
    pub const BOWL: Quadratic = Quadratic { a: 1.0, b: 0.0, c: 1.0 };
    pub const DOME: Quadratic = Quadratic { a: -1.0, b: 0.0, c: -1.0 };
    pub const SADDLE: Quadratic = Quadratic { a: 1.0, b: 0.0, c: -1.0 };
}

impl AnalyticSurface for Quadratic {
    fn eval(&self, x: f64, y: f64) -> Jet {
        let Quadratic { a, b, c } = *self;
        Jet {
            z: a * x * x + b * x * y + c * y * y,
            zx: 2.0 * a * x + b * y,
            zy: b * x + 2.0 * c * y,
            zxx: 2.0 * a,
            zxy: b,
            zyy: 2.0 * c,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Constant(pub f64);

impl AnalyticSurface for Constant {
    fn eval(&self, _: f64, _: f64) -> Jet {
        Jet {
            z: self.0,
            ..Jet::default()
        }
    }
}

/// Isotropic Gaussian bump `amplitude * exp(-r^2 / (2 sigma^2))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianBlob {
    pub cx: f64,
    pub cy: f64,
    pub sigma: f64,
    pub amplitude: f64,
}

impl GaussianBlob {
    /// The blob after convolution with a unit-mass Gaussian of width `sigma`:
    /// variances add and the peak drops to keep the volume.
    pub fn smoothed(&self, sigma: f64) -> GaussianBlob {
        let var = self.sigma * self.sigma + sigma * sigma;
        GaussianBlob {
            sigma: var.sqrt(),
            amplitude: self.amplitude * self.sigma * self.sigma / var,
            ..*self
        }
    }
}

impl AnalyticSurface for GaussianBlob {
    fn eval(&self, x: f64, y: f64) -> Jet {
        let a = 1.0 / (2.0 * self.sigma * self.sigma);
        poly_times_gaussian(
            Jet {
                z: self.amplitude,
                ..Jet::default()
            },
            a,
            x - self.cx,
            y - self.cy,
        )
    }
}

/// Sum of Gaussian bumps on a constant background.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GaussianBlobs {
    pub background: f64,
    pub blobs: Vec<GaussianBlob>,
}

impl GaussianBlobs {
    pub fn smoothed(&self, sigma: f64) -> GaussianBlobs {
        GaussianBlobs {
            background: self.background,
            blobs: self.blobs.iter().map(|b| b.smoothed(sigma)).collect(),
        }
    }
}

impl AnalyticSurface for GaussianBlobs {
    fn eval(&self, x: f64, y: f64) -> Jet {
        self.blobs.iter().fold(
            Jet {
                z: self.background,
                ..Jet::default()
            },
            |acc, b| acc + b.eval(x, y),
        )
    }
}

/// Sampling lattice. Node `(i, j)` sits at
/// `(x_min + i * (x_max - x_min) / (nx - 1), y_min + j * (y_max - y_min) / (ny - 1))`;
/// image row `j` is the `j`-th y value, so row 0 is `y_min`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec::square(-3.0, 3.0, 512)
    }
}

impl GridSpec {
    pub fn square(lo: f64, hi: f64, n: usize) -> Self {
        GridSpec {
            x_min: lo,
            x_max: hi,
            y_min: lo,
            y_max: hi,
            nx: n,
            ny: n,
        }
    }

    /// Grid whose nodes are pixel centers `0..width` by `0..height`.
    pub fn pixels(width: usize, height: usize) -> Self {
        GridSpec {
            x_min: 0.0,
            x_max: (width - 1) as f64,
            y_min: 0.0,
            y_max: (height - 1) as f64,
            nx: width,
            ny: height,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max]
            .iter()
            .all(|v| v.is_finite());
        if !finite || !(self.x_min < self.x_max) || !(self.y_min < self.y_max) {
            return Err(Error::DegenerateGrid(format!(
                "extent [{}, {}] x [{}, {}]",
                self.x_min, self.x_max, self.y_min, self.y_max
            )));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::DegenerateGrid(format!(
                "need at least 2x2 nodes, got {}x{}",
                self.nx, self.ny
            )));
        }
        Ok(())
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x_min + i as f64 * (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn y(&self, j: usize) -> f64 {
        self.y_min + j as f64 * (self.y_max - self.y_min) / (self.ny - 1) as f64
    }
}

/// A sampled surface: the raw heights and the same heights rescaled to `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Raster {
    pub raw: Image,
    pub image: Image,
}

pub fn rasterize(surface: &impl AnalyticSurface, grid: &GridSpec) -> Result<Raster> {
    grid.validate()?;
    let raw = Image::from_fn(grid.nx, grid.ny, |i, j| surface.eval(grid.x(i), grid.y(j)).z)?;
    let image = raw.rescaled_unit();
    Ok(Raster { raw, image })
}

/// Exact jets at every grid node, row-major.
pub fn sample_jets(surface: &impl AnalyticSurface, grid: &GridSpec) -> Result<Vec<Jet>> {
    grid.validate()?;
    let mut out = Vec::with_capacity(grid.nx * grid.ny);
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            out.push(surface.eval(grid.x(i), grid.y(j)));
        }
    }
    Ok(out)
}

/// Second-derivative test on the exact partials at every grid node.
pub fn analytic_classification(
    surface: &impl AnalyticSurface,
    grid: &GridSpec,
) -> Result<ClassificationMap> {
    let labels = sample_jets(surface, grid)?
        .iter()
        .map(Jet::classify)
        .collect();
    Ok(ClassificationMap::new(grid.nx, grid.ny, labels).expect("grid validated"))
}
