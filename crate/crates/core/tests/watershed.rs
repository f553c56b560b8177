mod common;

use curvseg::oracle::{GaussianBlob, GaussianBlobs};
use curvseg::synthetic::render_blobs;
use curvseg::watershed::{flood_levels, quantize_relief, regional_minima, watershed_basins};
use curvseg::{flood, watershed_contours, Image, Stencil};
use proptest::prelude::*;

fn assert_matches_oracle(w: usize, h: usize, levels: &[u16]) {
    let got = flood_levels(w, h, levels);
    let (labels, watershed) = common::immersion_oracle(w, h, levels);
    assert_eq!(got.labels.labels(), labels.as_slice(), "{w}x{h} {levels:?}");
    assert_eq!(got.watershed.bits(), watershed.as_slice(), "{w}x{h} {levels:?}");
}

#[test]
fn exhaustive_small_shapes() {
    // Every relief over {0, 1, 2} for every shape with at most 8 pixels.
    for w in 1..=8usize {
        for h in 1..=8 / w {
            let n = w * h;
            let mut levels = vec![0u16; n];
            for code in 0..3usize.pow(n as u32) {
                let mut c = code;
                for v in levels.iter_mut() {
                    *v = (c % 3) as u16;
                    c /= 3;
                }
                assert_matches_oracle(w, h, &levels);
            }
        }
    }
}

fn relief_strategy() -> impl Strategy<Value = (usize, usize, Vec<u16>)> {
    (1usize..=6, 1usize..=6, prop_oneof![Just(3u16), Just(8u16), Just(60000u16)]).prop_flat_map(
        |(w, h, top)| prop::collection::vec(0..top, w * h).prop_map(move |v| (w, h, v)),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn random_reliefs_match_oracle((w, h, levels) in relief_strategy()) {
        let got = flood_levels(w, h, &levels);
        let (labels, watershed) = common::immersion_oracle(w, h, &levels);
        prop_assert_eq!(got.labels.labels(), labels.as_slice());
        prop_assert_eq!(got.watershed.bits(), watershed.as_slice());

        // Every pixel is in exactly one basin or on a watershed line, and
        // every regional minimum seeds exactly one basin.
        for (l, &ws) in got.labels.labels().iter().zip(got.watershed.bits()) {
            prop_assert!((*l != 0) ^ ws);
        }
        let (_, minima) = regional_minima(w, h, &levels);
        prop_assert_eq!(got.basin_count(), minima);
    }
}

#[test]
fn two_blobs_are_separated() {
    let surface = GaussianBlobs {
        background: 0.0,
        blobs: vec![
            GaussianBlob { cx: 20.0, cy: 32.0, sigma: 6.0, amplitude: 1.0 },
            GaussianBlob { cx: 44.0, cy: 32.0, sigma: 6.0, amplitude: 1.0 },
        ],
    };
    let img = render_blobs(&surface, 64, 64).unwrap();
    let basins = watershed_basins(&img, 2.0, Stencil::Sobel).unwrap();
    let (a, b) = (basins.labels.get(20, 32), basins.labels.get(44, 32));
    assert!(a != 0 && b != 0);
    assert_ne!(a, b);
    // A watershed pixel lies on the straight path between the two centers.
    assert!((21..44).any(|x| basins.watershed.get(x, 32)));
}

#[test]
fn single_blob_ring_at_crest() {
    let sigma_b = 8.0;
    let surface = GaussianBlobs {
        background: 0.0,
        blobs: vec![GaussianBlob { cx: 32.0, cy: 32.0, sigma: sigma_b, amplitude: 1.0 }],
    };
    let img = render_blobs(&surface, 64, 64).unwrap();
    let basins = watershed_basins(&img, 1.0, Stencil::Central).unwrap();
    let centre = basins.labels.get(32, 32);
    assert_ne!(centre, 0);
    // The central basin is ringed by watershed pixels near the crest of the
    // gradient modulus, which for a Gaussian sits at radius sigma.
    let crest = (sigma_b * sigma_b + 1.0f64).sqrt();
    for angle in 0..32 {
        let t = angle as f64 * std::f64::consts::TAU / 32.0;
        let hit = (0..40).map(|k| k as f64 * 0.5).find(|&r| {
            let (x, y) = (32.0 + r * t.cos(), 32.0 + r * t.sin());
            basins.watershed.get(x.round() as usize, y.round() as usize)
        });
        let r = hit.expect("ray from the center never meets the watershed");
        assert!((r - crest).abs() <= 2.0, "angle {angle}: ring at radius {r}, crest {crest}");
    }
}

#[test]
fn constant_image_has_empty_contours() {
    let img = Image::constant(24, 24, 0.4).unwrap();
    assert!(watershed_contours(&img, 2.0, Stencil::Sobel).unwrap().is_all_false());
    assert!(quantize_relief(&img).iter().all(|&v| v == 0));
    assert_eq!(flood(&img).basin_count(), 1);
}
