//! Seeded synthetic test images built from Gaussian blobs.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::Result;
use crate::image::Image;
use crate::oracle::{rasterize, GaussianBlob, GaussianBlobs, GridSpec};

/// Samples `surface` at integer pixel positions.
pub fn render_blobs(surface: &GaussianBlobs, width: usize, height: usize) -> Result<Image> {
    Ok(rasterize(surface, &GridSpec::pixels(width, height))?.raw)
}

/// Adds zero-mean Gaussian noise with standard deviation `std`.
pub fn add_noise(image: &Image, std: f64, seed: u64) -> Result<Image> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, std).expect("noise std must be finite and non-negative");
    let samples = image
        .samples()
        .iter()
        .map(|&v| v + normal.sample(&mut rng))
        .collect();
    Image::new(image.width(), image.height(), samples)
}

/// Two unit-amplitude blobs (`sigma` 20) on a zero background, placed a
/// fixed fraction of the way across the image.
pub fn two_blob_surface(width: usize, height: usize) -> GaussianBlobs {
    let (w, h) = (width as f64, height as f64);
    GaussianBlobs {
        background: 0.0,
        blobs: vec![
            GaussianBlob {
                cx: 0.3 * w,
                cy: 0.4 * h,
                sigma: 20.0,
                amplitude: 1.0,
            },
            GaussianBlob {
                cx: 0.7 * w,
                cy: 0.6 * h,
                sigma: 20.0,
                amplitude: 1.0,
            },
        ],
    }
}

/// Two blobs plus 1% (relative to blob amplitude) additive Gaussian noise.
pub fn noisy_two_blob(width: usize, height: usize, seed: u64) -> Result<Image> {
    add_noise(&render_blobs(&two_blob_surface(width, height), width, height)?, 0.01, seed)
}

/// The fixed comparison corpus: ten noisy two-blob images, 256x256, seeds 0..10.
pub fn two_blob_corpus() -> Result<Vec<Image>> {
    (0..10).map(|seed| noisy_two_blob(256, 256, seed)).collect()
}

/// A narrow blob (`sigma` 3) and a wide blob (`sigma` 40) on a 256x256 image.
/// The narrow one sits 90 px from the wide one's center, well outside its
/// curved cap.
pub fn small_large_surface() -> GaussianBlobs {
    GaussianBlobs {
        background: 0.0,
        blobs: vec![
            GaussianBlob {
                cx: 60.0,
                cy: 128.0,
                sigma: 3.0,
                amplitude: 1.0,
            },
            GaussianBlob {
                cx: 150.0,
                cy: 128.0,
                sigma: 40.0,
                amplitude: 1.0,
            },
        ],
    }
}

pub fn small_large_image() -> Result<Image> {
    render_blobs(&small_large_surface(), 256, 256)
}
