//! Closed-contour segmentation from the curvature of a smoothed image.
//!
//! An image is treated as a height surface. After Gaussian smoothing, every
//! pixel gets the second-partial-derivative test: where the Hessian
//! determinant is positive the surface is locally a bowl (convex, `fxx > 0`)
//! or a dome (concave, `fxx < 0`). The exterior boundary of those regions is
//! a set of closed one-pixel contours; smoothing width picks the feature
//! scale.
//!
//! ```
//! use curvseg::{detect_at_scale, Image, RegionMode, Stencil};
//!
//! let img = Image::from_fn(64, 64, |x, y| {
//!     let (dx, dy) = (x as f64 - 32.0, y as f64 - 32.0);
//!     (-(dx * dx + dy * dy) / 128.0).exp()
//! })
//! .unwrap();
//! let found = detect_at_scale(&img, 2.0, RegionMode::ConcaveOnly, Stencil::Sobel).unwrap();
//! assert!(found.region.get(32, 32));
//! assert!(!found.boundary.get(32, 32));
//! ```
//!
//! A marker-less gradient watershed is included in [`watershed`] as a
//! baseline, and [`oracle`] provides analytic surfaces with exact
//! derivatives for validating the discrete pipeline.

pub mod bench;
pub mod classify;
pub mod cli;
pub mod derivatives;
pub mod error;
pub mod image;
pub mod io;
pub mod morphology;
pub mod multiscale;
pub mod oracle;
pub mod render;
pub mod smoothing;
pub mod synthetic;
pub mod watershed;

pub use classify::{classify, region_mask, ClassificationMap, Curvature, RegionMode};
pub use derivatives::{curvature_sign_field, gradient, hessian_maps, DifferentialMaps, Stencil};
pub use error::{Error, Result};
pub use image::{Image, PixelCoord};
pub use io::{load_image, load_mask, save_image, save_mask, LoadOptions, LumaCoefficients};
pub use morphology::{
    dilate3, exterior_boundary, label_components, prune_small, BinaryMask, Connectivity, LabelMap,
};
pub use multiscale::{
    detect, detect_at_scale, multiscale_composite, Composite, DetectOptions, Detection, ScalePair,
};
pub use render::{render_overlay, OverlayColors, OverlayStyle, RgbImage};
pub use smoothing::{gaussian_smooth, make_kernel, smooth, GaussianKernel};
pub use watershed::{flood, gradient_modulus, watershed_contours, BasinLabeling};
