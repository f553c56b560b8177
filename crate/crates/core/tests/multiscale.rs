use curvseg::morphology::unenclosed_components;
use curvseg::oracle::{GaussianBlob, GaussianBlobs};
use curvseg::synthetic::{noisy_two_blob, render_blobs};
use curvseg::{
    detect, detect_at_scale, dilate3, label_components, multiscale_composite, Connectivity, DetectOptions,
    Image, RegionMode, ScalePair, Stencil,
};

fn single_blob() -> Image {
    let surface = GaussianBlobs {
        background: 0.0,
        blobs: vec![GaussianBlob { cx: 128.0, cy: 128.0, sigma: 20.0, amplitude: 1.0 }],
    };
    render_blobs(&surface, 256, 256).unwrap()
}

#[test]
fn single_blob_is_one_component() {
    let img = single_blob();

    let peak = detect_at_scale(&img, 5.0, RegionMode::ConcaveOnly, Stencil::Sobel).unwrap();
    let labels = label_components(&peak.region, Connectivity::Eight);
    assert_eq!(labels.count(), 1);
    assert_ne!(labels.get(128, 128), 0);
    assert!(unenclosed_components(&peak.region).is_empty());

    // In combined mode the far-field corners, where the image is below 1e-9,
    // pick up spurious positive determinants: there the tangential curvature
    // is smaller than the stencils' truncation error. Those pieces all touch
    // the frame; the blob is the only enclosed component.
    let found = detect_at_scale(&img, 5.0, RegionMode::Combined, Stencil::Sobel).unwrap();
    let all = label_components(&found.region, Connectivity::Eight);
    let touches = all.touches_frame();
    let centre = all.get(128, 128);
    assert_ne!(centre, 0);
    let enclosed: Vec<u32> = (1..=all.count()).filter(|&l| !touches[l as usize]).collect();
    assert_eq!(enclosed, [centre]);
    for (i, &l) in all.labels().iter().enumerate() {
        if l != 0 && l != centre {
            assert!(img.samples()[i] < 1e-8, "stray region pixel {i} at intensity {}", img.samples()[i]);
        }
    }
    assert!(peak.region.is_subset_of(&found.region));

    let convex = detect_at_scale(&img, 5.0, RegionMode::ConvexOnly, Stencil::Sobel).unwrap();
    assert!(!convex.region.get(128, 128));
}

#[test]
fn region_radius_tracks_smoothed_width() {
    // D > 0 exactly inside radius sigma_eff = sqrt(20^2 + 5^2) for a smoothed
    // isotropic Gaussian.
    let found = detect_at_scale(&single_blob(), 5.0, RegionMode::Combined, Stencil::Central).unwrap();
    let radius = (400.0f64 + 25.0).sqrt();
    let inside = (0..40).take_while(|&r| found.region.get(128 + r, 128)).count() as f64;
    assert!((inside - radius).abs() <= 1.5, "{inside} vs {radius}");
}

#[test]
fn nearly_equal_scales_coincide() {
    let img = single_blob();
    let large = 6.0;
    let c = multiscale_composite(
        &img,
        ScalePair::new(large - 1e-6, large).unwrap(),
        RegionMode::Combined,
        Stencil::Sobel,
    )
    .unwrap();
    let outlined = detect_at_scale(&img, large, RegionMode::Combined, Stencil::Sobel).unwrap().region;
    // The fill lies inside the outline's ring, and fills everything it encloses
    // up to one ring of pixels.
    assert!(c.fill.is_subset_of(&dilate3(&outlined)));
    assert!(outlined.is_subset_of(&dilate3(&c.fill)));
    assert!(c.fill.and(&c.outline).unwrap().is_all_false());
}

#[test]
fn composite_equals_single_scale_runs() {
    let img = noisy_two_blob(96, 80, 3).unwrap();
    let c = multiscale_composite(&img, ScalePair::new(2.0, 6.0).unwrap(), RegionMode::Combined, Stencil::Sobel)
        .unwrap();
    let small = detect_at_scale(&img, 2.0, RegionMode::Combined, Stencil::Sobel).unwrap();
    let large = detect_at_scale(&img, 6.0, RegionMode::Combined, Stencil::Sobel).unwrap();
    assert_eq!(c.fill, small.region);
    assert_eq!(c.outline, large.boundary);
}

#[test]
fn constant_image_gives_empty_masks() {
    let img = Image::constant(40, 30, 0.25).unwrap();
    let c = multiscale_composite(&img, ScalePair::new(7.5, 30.0).unwrap(), RegionMode::Combined, Stencil::Sobel)
        .unwrap();
    assert!(c.fill.is_all_false() && c.outline.is_all_false());
}

#[test]
fn deterministic() {
    let img = noisy_two_blob(128, 128, 7).unwrap();
    let opts = DetectOptions {
        sigma: 3.0,
        min_area: 10,
        ..DetectOptions::default()
    };
    let a = detect(&img, &opts).unwrap();
    for _ in 0..3 {
        assert_eq!(detect(&img, &opts).unwrap(), a);
    }
}

#[test]
fn pruning_removes_small_components_before_boundary() {
    let img = noisy_two_blob(128, 128, 1).unwrap();
    let raw = detect(&img, &DetectOptions { sigma: 2.0, ..DetectOptions::default() }).unwrap();
    let pruned = detect(&img, &DetectOptions { sigma: 2.0, min_area: 25, ..DetectOptions::default() }).unwrap();
    assert!(pruned.region.is_subset_of(&raw.region));
    let labels = label_components(&pruned.region, Connectivity::Eight);
    assert!(labels.areas().iter().skip(1).all(|&a| a >= 25));
    assert_eq!(pruned.boundary, curvseg::exterior_boundary(&pruned.region));
}

#[test]
fn scale_pair_validation() {
    assert!(ScalePair::new(30.0, 7.5).is_err());
    assert!(ScalePair::new(5.0, 5.0).is_err());
    assert!(ScalePair::new(0.0, 5.0).is_err());
    assert!(ScalePair::new(f64::NAN, 5.0).is_err());
    let p = ScalePair::new(7.5, 30.0).unwrap();
    assert_eq!((p.small(), p.large()), (7.5, 30.0));
}
