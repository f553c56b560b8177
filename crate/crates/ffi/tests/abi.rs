use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use curvseg::synthetic::noisy_two_blob;
use curvseg::{detect, DetectOptions, RegionMode, Stencil};
use curvseg_ffi::*;

fn last_error() -> String {
    let p = cs_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn new_image(w: usize, h: usize, samples: &[f64]) -> *mut CsImage {
    let mut img = ptr::null_mut();
    assert_eq!(unsafe { cs_image_new(w, h, samples.as_ptr(), &mut img) }, CsStatus::Ok);
    img
}

fn mask_bytes(mask: *const CsMask) -> Vec<u8> {
    let n = unsafe { cs_mask_width(mask) * cs_mask_height(mask) };
    let mut buf = vec![7u8; n];
    assert_eq!(unsafe { cs_mask_copy(mask, buf.as_mut_ptr(), n) }, CsStatus::Ok);
    buf
}

#[test]
fn detect_matches_library() {
    let src = noisy_two_blob(80, 64, 1).unwrap();
    let img = new_image(80, 64, src.samples());
    assert_eq!(unsafe { (cs_image_width(img), cs_image_height(img)) }, (80, 64));

    let (mut region, mut boundary) = (ptr::null_mut(), ptr::null_mut());
    let status = unsafe {
        cs_detect(img, 3.0, CsRegionMode::Combined, CsStencil::Central, 0, &mut region, &mut boundary)
    };
    assert_eq!(status, CsStatus::Ok);

    let expected = detect(
        &src,
        &DetectOptions { sigma: 3.0, mode: RegionMode::Combined, stencil: Stencil::Central, ..DetectOptions::default() },
    )
    .unwrap();
    let to_bytes = |m: &curvseg::BinaryMask| m.bits().iter().map(|&b| u8::from(b)).collect::<Vec<_>>();
    assert_eq!(mask_bytes(region), to_bytes(&expected.region));
    assert_eq!(mask_bytes(boundary), to_bytes(&expected.boundary));
    assert_eq!(unsafe { cs_mask_count(region) }, expected.region.count());

    unsafe {
        cs_mask_free(region);
        cs_mask_free(boundary);
        cs_image_free(img);
    }
}

#[test]
fn smooth_and_copy_samples() {
    let samples: Vec<f64> = (0..36).map(|i| f64::from(i % 5)).collect();
    let img = new_image(6, 6, &samples);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cs_smooth(img, 1.0, &mut out) }, CsStatus::Ok);
    let mut buf = vec![0.0; 36];
    assert_eq!(unsafe { cs_image_copy_samples(out, buf.as_mut_ptr(), buf.len()) }, CsStatus::Ok);
    let expected = curvseg::gaussian_smooth(&curvseg::Image::new(6, 6, samples).unwrap(), 1.0).unwrap();
    assert_eq!(buf.as_slice(), expected.samples());

    let mut short = vec![0.0; 10];
    assert_eq!(
        unsafe { cs_image_copy_samples(out, short.as_mut_ptr(), short.len()) },
        CsStatus::InvalidArgument
    );
    unsafe {
        cs_image_free(out);
        cs_image_free(img);
    }
}

#[test]
fn watershed_and_save_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let src = noisy_two_blob(48, 48, 2).unwrap();
    let img = new_image(48, 48, src.samples());
    let mut lines = ptr::null_mut();
    assert_eq!(unsafe { cs_watershed_contours(img, 1.0, CsStencil::Sobel, &mut lines) }, CsStatus::Ok);
    assert!(unsafe { cs_mask_count(lines) } > 0);

    let path = dir.path().join("lines.pgm");
    let cpath = CString::new(path.to_str().unwrap()).unwrap();
    assert_eq!(unsafe { cs_mask_save(lines, cpath.as_ptr()) }, CsStatus::Ok);
    let loaded = curvseg::load_mask(&path).unwrap();
    let expected = curvseg::watershed_contours(&src, 1.0, Stencil::Sobel).unwrap();
    assert_eq!(loaded, expected);

    let mut reloaded = ptr::null_mut();
    assert_eq!(unsafe { cs_image_load(cpath.as_ptr(), &mut reloaded) }, CsStatus::Ok);
    assert_eq!(unsafe { cs_image_width(reloaded) }, 48);
    unsafe {
        cs_image_free(reloaded);
        cs_mask_free(lines);
        cs_image_free(img);
    }
}

#[test]
fn error_reporting() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cs_smooth(ptr::null(), 1.0, &mut out) }, CsStatus::NullPointer);
    assert!(last_error().contains("image"));

    let img = new_image(2, 2, &[0.0; 4]);
    assert_eq!(unsafe { cs_smooth(img, -1.0, &mut out) }, CsStatus::InvalidArgument);
    let (mut r, mut b) = (ptr::null_mut(), ptr::null_mut());
    let status = unsafe { cs_detect(img, 1.0, CsRegionMode::Combined, CsStencil::Sobel, 0, &mut r, &mut b) };
    assert_eq!(status, CsStatus::TooSmall);
    assert!(r.is_null() && b.is_null());

    let bad = [f64::NAN; 4];
    assert_eq!(unsafe { cs_image_new(2, 2, bad.as_ptr(), &mut out) }, CsStatus::InvalidArgument);

    let missing = CString::new("/nonexistent/file.pgm").unwrap();
    assert_eq!(unsafe { cs_image_load(missing.as_ptr(), &mut out) }, CsStatus::Io);
    assert!(!last_error().is_empty());

    assert_eq!(unsafe { cs_image_width(ptr::null()) }, 0);
    unsafe {
        cs_image_free(ptr::null_mut());
        cs_mask_free(ptr::null_mut());
        cs_image_free(img);
    }
}

#[test]
fn static_strings() {
    let v = unsafe { CStr::from_ptr(cs_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
    let s = unsafe { CStr::from_ptr(cs_status_string(CsStatus::TooSmall)) };
    assert!(!s.to_bytes().is_empty());
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/curvseg.h")).unwrap();
    for symbol in [
        "typedef struct CsImage CsImage;",
        "typedef struct CsMask CsMask;",
        "CS_STATUS_OK",
        "CS_STATUS_TOO_SMALL",
        "CS_REGION_MODE_CONCAVE_ONLY",
        "CS_STENCIL_CENTRAL",
        "cs_image_new",
        "cs_image_load",
        "cs_image_copy_samples",
        "cs_image_free",
        "cs_smooth",
        "cs_detect",
        "cs_watershed_contours",
        "cs_mask_copy",
        "cs_mask_save",
        "cs_mask_free",
        "cs_last_error_message",
        "cs_version",
    ] {
        assert!(header.contains(symbol), "header lacks {symbol}");
    }
}

#[test]
fn header_compiles_as_c() {
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"curvseg.h\"\nint main(void) { CsImage *img = 0; return (int)cs_image_width(img) + CS_STATUS_OK; }\n",
    )
    .unwrap();
    let status = match Command::new("cc")
        .arg("-fsyntax-only")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .status()
    {
        Ok(s) => s,
        Err(_) => {
            eprintln!("no C compiler found; skipping");
            return;
        }
    };
    assert!(status.success());
}
