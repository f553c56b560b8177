use curvseg::derivatives::is_interior;
use curvseg::oracle::{rasterize, sample_jets, GridSpec, PeaksSurface, Quadratic};
use curvseg::{classify, gaussian_smooth, hessian_maps, region_mask, Curvature, Image, RegionMode, Stencil};
use proptest::prelude::*;

fn random_image() -> impl Strategy<Value = Image> {
    (5usize..20, 5usize..20).prop_flat_map(|(w, h)| {
        prop::collection::vec(-1.0f64..1.0, w * h).prop_map(move |v| Image::new(w, h, v).unwrap())
    })
}

#[test]
fn quadratic_regions() {
    let grid = GridSpec::square(-2.0, 2.0, 20);
    let bowl = rasterize(&Quadratic::BOWL, &grid).unwrap().raw;
    let cls = classify(&hessian_maps(&bowl, Stencil::Central).unwrap());
    let convex = region_mask(&cls, RegionMode::ConvexOnly);
    let concave = region_mask(&cls, RegionMode::ConcaveOnly);
    for y in 2..18 {
        for x in 2..18 {
            assert!(convex.get(x, y));
            assert!(!concave.get(x, y));
        }
    }

    let saddle = rasterize(&Quadratic::SADDLE, &grid).unwrap().raw;
    let cls = classify(&hessian_maps(&saddle, Stencil::Central).unwrap());
    for y in 2..18 {
        for x in 2..18 {
            assert_eq!(cls.get(x, y), Curvature::Neither);
        }
    }
}

#[test]
fn peaks_combined_mask_matches_oracle() {
    let grid = GridSpec::square(-3.0, 3.0, 512);
    let raster = rasterize(&PeaksSurface, &grid).unwrap();
    let jets = sample_jets(&PeaksSurface, &grid).unwrap();
    let smoothed = gaussian_smooth(&raster.image, 1.0).unwrap();
    let found = region_mask(
        &classify(&hessian_maps(&smoothed, Stencil::Central).unwrap()),
        RegionMode::Combined,
    );
    let max_d = jets.iter().map(|j| j.det().abs()).fold(0.0, f64::max);
    let (mut n, mut agree) = (0, 0);
    for (i, jet) in jets.iter().enumerate() {
        if is_interior(512, 512, i % 512, i / 512) && jet.det().abs() >= 0.01 * max_d {
            n += 1;
            agree += usize::from(found.bits()[i] == (jet.det() > 0.0));
        }
    }
    assert!(agree as f64 >= 0.97 * n as f64, "{agree}/{n}");
}

proptest! {
    #[test]
    fn modes_partition_the_image(img in random_image(), sigma in 0.5f64..2.0) {
        let maps = hessian_maps(&gaussian_smooth(&img, sigma).unwrap(), Stencil::Sobel).unwrap();
        let cls = classify(&maps);
        let convex = region_mask(&cls, RegionMode::ConvexOnly);
        let concave = region_mask(&cls, RegionMode::ConcaveOnly);
        let combined = region_mask(&cls, RegionMode::Combined);
        prop_assert!(convex.and(&concave).unwrap().is_all_false());
        prop_assert_eq!(&convex.or(&concave).unwrap(), &combined);
        for (i, &d) in maps.det.samples().iter().enumerate() {
            prop_assert_eq!(combined.bits()[i], d > 0.0);
        }
        let total = cls.count(Curvature::Convex) + cls.count(Curvature::Concave) + cls.count(Curvature::Neither);
        prop_assert_eq!(total, img.len());
    }

    #[test]
    fn scale_and_negation(img in random_image(), sigma in 0.5f64..2.0) {
        let run = |f: &Image| classify(&hessian_maps(&gaussian_smooth(f, sigma).unwrap(), Stencil::Central).unwrap());
        let base = run(&img);
        for c in [0.5, 100.0] {
            prop_assert_eq!(run(&img.map(|v| c * v).unwrap()).to_bytes(), base.to_bytes());
        }
        let neg = run(&img.map(|v| -v).unwrap());
        for (a, b) in base.labels().iter().zip(neg.labels()) {
            let expected = match a {
                Curvature::Convex => Curvature::Concave,
                Curvature::Concave => Curvature::Convex,
                Curvature::Neither => Curvature::Neither,
            };
            prop_assert_eq!(*b, expected);
        }
    }
}
