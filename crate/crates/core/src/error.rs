use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },

    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },

    #[error("unrecognized image format (expected PGM P2/P5 or PNG)")]
    UnknownFormat,

    #[error("malformed header: {0}")]
    MalformedHeader(String),

    #[error("pixel data truncated: expected {expected} samples, found {found}")]
    Truncated { expected: usize, found: usize },

    #[error("sample value {value} exceeds maxval {maxval}")]
    SampleOutOfRange { value: u32, maxval: u32 },

    #[error("unsupported bit depth: {0}")]
    UnsupportedBitDepth(String),

    #[error("unsupported color type: {0}")]
    UnsupportedColorType(String),

    #[error("png decode failed: {0}")]
    PngDecode(String),

    #[error("png encode failed: {0}")]
    PngEncode(String),

    #[error("invalid dimensions {width}x{height}")]
    InvalidDimensions { width: usize, height: usize },

    #[error("sample buffer has {actual} values, {width}x{height} needs {expected}")]
    SampleCount {
        width: usize,
        height: usize,
        expected: usize,
        actual: usize,
    },

    #[error("sample {index} is not finite")]
    NonFinite { index: usize },

    #[error("dimension mismatch: {expected:?} vs {actual:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        actual: (usize, usize),
    },

    #[error("image is {width}x{height}; this stage needs at least {min}x{min}")]
    TooSmall {
        width: usize,
        height: usize,
        min: usize,
    },

    #[error("sigma must be positive and finite, got {0}")]
    InvalidSigma(f64),

    #[error("scale pair must satisfy 0 < small < large, got ({small}, {large})")]
    InvalidScalePair { small: f64, large: f64 },

    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),
}
