//! C ABI for the curvseg detector.
//!
//! Images and masks cross the boundary as opaque handles created and freed
//! by this library. Every fallible call returns a [`CsStatus`]; on failure a
//! description is available from [`cs_last_error_message`] on the same
//! thread. The header `include/curvseg.h` is regenerated by the build script.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use curvseg::{
    detect, gaussian_smooth, io, watershed_contours, BinaryMask, Connectivity, DetectOptions,
    Error, Image, LoadOptions, RegionMode, Stencil,
};

/// Opaque grayscale image.
pub struct CsImage(Image);

/// Opaque binary mask.
pub struct CsMask(BinaryMask);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Io = 3,
    Format = 4,
    TooSmall = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsRegionMode {
    Combined = 0,
    ConvexOnly = 1,
    ConcaveOnly = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsStencil {
    Sobel = 0,
    Central = 1,
}

impl From<CsRegionMode> for RegionMode {
    fn from(m: CsRegionMode) -> Self {
        match m {
            CsRegionMode::Combined => RegionMode::Combined,
            CsRegionMode::ConvexOnly => RegionMode::ConvexOnly,
            CsRegionMode::ConcaveOnly => RegionMode::ConcaveOnly,
        }
    }
}

impl From<CsStencil> for Stencil {
    fn from(s: CsStencil) -> Self {
        match s {
            CsStencil::Sobel => Stencil::Sobel,
            CsStencil::Central => Stencil::Central,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> CsStatus {
    match err {
        Error::Read { .. } | Error::Write { .. } => CsStatus::Io,
        Error::UnknownFormat
        | Error::MalformedHeader(_)
        | Error::Truncated { .. }
        | Error::SampleOutOfRange { .. }
        | Error::UnsupportedBitDepth(_)
        | Error::UnsupportedColorType(_)
        | Error::PngDecode(_)
        | Error::PngEncode(_) => CsStatus::Format,
        Error::TooSmall { .. } => CsStatus::TooSmall,
        _ => CsStatus::InvalidArgument,
    }
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), (CsStatus, String)>) -> CsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CsStatus::Ok,
        Ok(Err((status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            CsStatus::Internal
        }
    }
}

fn lib_err(err: Error) -> (CsStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(what: &str) -> (CsStatus, String) {
    (CsStatus::NullPointer, format!("{what} is null"))
}

unsafe fn path_arg(path: *const c_char) -> Result<String, (CsStatus, String)> {
    if path.is_null() {
        return Err(null("path"));
    }
    CStr::from_ptr(path)
        .to_str()
        .map(str::to_owned)
        .map_err(|_| (CsStatus::InvalidArgument, "path is not valid UTF-8".to_string()))
}

unsafe fn image_arg<'a>(image: *const CsImage) -> Result<&'a Image, (CsStatus, String)> {
    image.as_ref().map(|i| &i.0).ok_or_else(|| null("image"))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn cs_status_string(status: CsStatus) -> *const c_char {
    let s: &'static str = match status {
        CsStatus::Ok => "ok\0",
        CsStatus::NullPointer => "null pointer\0",
        CsStatus::InvalidArgument => "invalid argument\0",
        CsStatus::Io => "i/o error\0",
        CsStatus::Format => "unsupported or malformed image\0",
        CsStatus::TooSmall => "image too small\0",
        CsStatus::Internal => "internal error\0",
    };
    s.as_ptr().cast()
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Copies `width * height` samples into a new image.
///
/// # Safety
/// `samples` must point to `width * height` readable doubles and `out` must
/// be a valid pointer to write the handle to.
#[no_mangle]
pub unsafe extern "C" fn cs_image_new(
    width: usize,
    height: usize,
    samples: *const f64,
    out: *mut *mut CsImage,
) -> CsStatus {
    guard(|| {
        if samples.is_null() {
            return Err(null("samples"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let n = width
            .checked_mul(height)
            .ok_or((CsStatus::InvalidArgument, "dimensions overflow".to_string()))?;
        let data = std::slice::from_raw_parts(samples, n).to_vec();
        let image = Image::new(width, height, data).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(CsImage(image)));
        Ok(())
    })
}

/// Loads a PGM or PNG file, normalized to `[0, 1]`.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_image_load(path: *const c_char, out: *mut *mut CsImage) -> CsStatus {
    guard(|| {
        let path = path_arg(path)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let image = io::load_image(path, &LoadOptions::default()).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(CsImage(image)));
        Ok(())
    })
}

/// # Safety
/// `image` must be NULL or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn cs_image_width(image: *const CsImage) -> usize {
    image.as_ref().map_or(0, |i| i.0.width())
}

/// # Safety
/// `image` must be NULL or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn cs_image_height(image: *const CsImage) -> usize {
    image.as_ref().map_or(0, |i| i.0.height())
}

/// Copies the samples row-major into `buf`, which must hold `len >= width * height`.
///
/// # Safety
/// `image` must be a live handle and `buf` must be writable for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn cs_image_copy_samples(
    image: *const CsImage,
    buf: *mut f64,
    len: usize,
) -> CsStatus {
    guard(|| {
        let image = image_arg(image)?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        let src = image.samples();
        if len < src.len() {
            return Err((
                CsStatus::InvalidArgument,
                format!("buffer holds {len} values, need {}", src.len()),
            ));
        }
        ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
        Ok(())
    })
}

/// # Safety
/// `image` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cs_image_free(image: *mut CsImage) {
    if !image.is_null() {
        drop(Box::from_raw(image));
    }
}

/// Gaussian smoothing into a new image.
///
/// # Safety
/// `image` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_smooth(
    image: *const CsImage,
    sigma: f64,
    out: *mut *mut CsImage,
) -> CsStatus {
    guard(|| {
        let image = image_arg(image)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let smoothed = gaussian_smooth(image, sigma).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(CsImage(smoothed)));
        Ok(())
    })
}

/// Full detector: region and exterior-boundary masks. `min_area` of 0 keeps
/// every component; components are 8-connected.
///
/// # Safety
/// `image` must be a live handle; `region_out` and `boundary_out` must be
/// valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cs_detect(
    image: *const CsImage,
    sigma: f64,
    mode: CsRegionMode,
    stencil: CsStencil,
    min_area: usize,
    region_out: *mut *mut CsMask,
    boundary_out: *mut *mut CsMask,
) -> CsStatus {
    guard(|| {
        let image = image_arg(image)?;
        if region_out.is_null() || boundary_out.is_null() {
            return Err(null("output"));
        }
        let options = DetectOptions {
            sigma,
            mode: mode.into(),
            stencil: stencil.into(),
            min_area,
            connectivity: Connectivity::Eight,
        };
        let found = detect(image, &options).map_err(lib_err)?;
        *region_out = Box::into_raw(Box::new(CsMask(found.region)));
        *boundary_out = Box::into_raw(Box::new(CsMask(found.boundary)));
        Ok(())
    })
}

/// Watershed lines of the gradient modulus; `sigma` 0 skips smoothing.
///
/// # Safety
/// `image` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cs_watershed_contours(
    image: *const CsImage,
    sigma: f64,
    stencil: CsStencil,
    out: *mut *mut CsMask,
) -> CsStatus {
    guard(|| {
        let image = image_arg(image)?;
        if out.is_null() {
            return Err(null("out"));
        }
        if !(sigma.is_finite() && sigma >= 0.0) {
            return Err((CsStatus::InvalidArgument, format!("invalid sigma {sigma}")));
        }
        let mask = watershed_contours(image, sigma, stencil.into()).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(CsMask(mask)));
        Ok(())
    })
}

/// # Safety
/// `mask` must be NULL or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn cs_mask_width(mask: *const CsMask) -> usize {
    mask.as_ref().map_or(0, |m| m.0.width())
}

/// # Safety
/// `mask` must be NULL or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn cs_mask_height(mask: *const CsMask) -> usize {
    mask.as_ref().map_or(0, |m| m.0.height())
}

/// Number of set pixels.
///
/// # Safety
/// `mask` must be NULL or a handle from this library.
#[no_mangle]
pub unsafe extern "C" fn cs_mask_count(mask: *const CsMask) -> usize {
    mask.as_ref().map_or(0, |m| m.0.count())
}

/// Writes one byte per pixel (1 set, 0 clear) into `buf`.
///
/// # Safety
/// `mask` must be a live handle and `buf` writable for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn cs_mask_copy(mask: *const CsMask, buf: *mut u8, len: usize) -> CsStatus {
    guard(|| {
        let mask = mask.as_ref().map(|m| &m.0).ok_or_else(|| null("mask"))?;
        if buf.is_null() {
            return Err(null("buf"));
        }
        let bits = mask.bits();
        if len < bits.len() {
            return Err((
                CsStatus::InvalidArgument,
                format!("buffer holds {len} bytes, need {}", bits.len()),
            ));
        }
        let dst = std::slice::from_raw_parts_mut(buf, bits.len());
        for (d, &b) in dst.iter_mut().zip(bits) {
            *d = u8::from(b);
        }
        Ok(())
    })
}

/// Saves as binary PGM (P5, maxval 255; set pixels 255).
///
/// # Safety
/// `mask` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn cs_mask_save(mask: *const CsMask, path: *const c_char) -> CsStatus {
    guard(|| {
        let mask = mask.as_ref().map(|m| &m.0).ok_or_else(|| null("mask"))?;
        let path = path_arg(path)?;
        io::save_mask(mask, path).map_err(lib_err)
    })
}

/// # Safety
/// `mask` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cs_mask_free(mask: *mut CsMask) {
    if !mask.is_null() {
        drop(Box::from_raw(mask));
    }
}
