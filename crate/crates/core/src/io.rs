//! PGM and PNG reading, PGM mask and image writing, PNG overlay writing.
//!
//! Loaded samples are divided by the format's maximum value so every image
//! lands in `[0, 1]`. Color PNGs are reduced to luma first.

use std::fs;
use std::io::Cursor;
use std::path::Path;

use crate::error::{Error, Result};
use crate::image::Image;
use crate::morphology::BinaryMask;
use crate::render::RgbImage;

const PNG_SIGNATURE: [u8; 8] = [0x89, b'P', b'N', b'G', b'\r', b'\n', 0x1a, b'\n'];

/// Weights for RGB to gray conversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LumaCoefficients {
    pub r: f64,
    pub g: f64,
    pub b: f64,
}

impl LumaCoefficients {
    pub const REC601: LumaCoefficients = LumaCoefficients {
        r: 0.299,
        g: 0.587,
        b: 0.114,
    };
}

impl Default for LumaCoefficients {
    fn default() -> Self {
        Self::REC601
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LoadOptions {
    pub luma: LumaCoefficients,
}

pub fn load_image(path: impl AsRef<Path>, options: &LoadOptions) -> Result<Image> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|source| Error::Read {
        path: path.to_path_buf(),
        source,
    })?;
    decode_image(&bytes, options)
}

/// Decodes PGM (P2/P5) or PNG bytes, chosen by magic number.
pub fn decode_image(bytes: &[u8], options: &LoadOptions) -> Result<Image> {
    if bytes.starts_with(&PNG_SIGNATURE) {
        decode_png(bytes, options)
    } else if bytes.starts_with(b"P2") || bytes.starts_with(b"P5") {
        decode_pgm(bytes)
    } else {
        Err(Error::UnknownFormat)
    }
}

/// Loads any supported image and treats nonzero samples as set.
pub fn load_mask(path: impl AsRef<Path>) -> Result<BinaryMask> {
    let image = load_image(path, &LoadOptions::default())?;
    mask_from_image(&image)
}

pub fn decode_mask(bytes: &[u8]) -> Result<BinaryMask> {
    mask_from_image(&decode_image(bytes, &LoadOptions::default())?)
}

fn mask_from_image(image: &Image) -> Result<BinaryMask> {
    BinaryMask::new(
        image.width(),
        image.height(),
        image.samples().iter().map(|&v| v > 0.0).collect(),
    )
}

/// Binary P5 with maxval 255; set pixels are 255, clear pixels 0.
pub fn encode_mask_pgm(mask: &BinaryMask) -> Vec<u8> {
    let (w, h) = mask.dimensions();
    let mut out = format!("P5\n{w} {h}\n255\n").into_bytes();
    out.extend(mask.bits().iter().map(|&b| if b { 255u8 } else { 0 }));
    out
}

pub fn save_mask(mask: &BinaryMask, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &encode_mask_pgm(mask))
}

/// 8-bit P5; samples are clamped to `[0, 1]` and rounded to 255 levels.
pub fn encode_image_pgm(image: &Image) -> Vec<u8> {
    let (w, h) = image.dimensions();
    let mut out = format!("P5\n{w} {h}\n255\n").into_bytes();
    out.extend(image.samples().iter().map(|&v| to_u8(v)));
    out
}

pub fn save_image(image: &Image, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &encode_image_pgm(image))
}

/// Affine-rescales a real field to `[0, 1]` and writes it as 8-bit PGM.
/// For viewing only; the mapping depends on the field's range.
pub fn save_heatmap(field: &Image, path: impl AsRef<Path>) -> Result<()> {
    save_image(&field.rescaled_unit(), path)
}

pub fn encode_png_rgb(image: &RgbImage) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    {
        let mut encoder = png::Encoder::new(&mut out, image.width() as u32, image.height() as u32);
        encoder.set_color(png::ColorType::Rgb);
        encoder.set_depth(png::BitDepth::Eight);
        let mut writer = encoder
            .write_header()
            .map_err(|e| Error::PngEncode(e.to_string()))?;
        writer
            .write_image_data(image.data())
            .map_err(|e| Error::PngEncode(e.to_string()))?;
    }
    Ok(out)
}

pub fn save_png(image: &RgbImage, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &encode_png_rgb(image)?)
}

pub(crate) fn to_u8(v: f64) -> u8 {
    (v.clamp(0.0, 1.0) * 255.0).round() as u8
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|source| Error::Write {
        path: path.to_path_buf(),
        source,
    })
}

struct HeaderCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> HeaderCursor<'a> {
    fn skip_space_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::MalformedHeader(format!("expected {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::MalformedHeader(format!("{what} out of range")))
    }
}

fn decode_pgm(bytes: &[u8]) -> Result<Image> {
    let binary = bytes[1] == b'5';
    let mut cur = HeaderCursor { bytes, pos: 2 };
    let width = cur.number("width")? as usize;
    let height = cur.number("height")? as usize;
    let maxval = cur.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::MalformedHeader(format!(
            "zero dimension {width}x{height}"
        )));
    }
    if maxval == 0 {
        return Err(Error::MalformedHeader("maxval is zero".into()));
    }
    if maxval > 65535 {
        return Err(Error::UnsupportedBitDepth(format!("maxval {maxval}")));
    }
    let expected = width
        .checked_mul(height)
        .ok_or_else(|| Error::MalformedHeader("dimensions overflow".into()))?;

    let mut raw = Vec::with_capacity(expected);
    if binary {
        // Exactly one whitespace byte separates maxval from the raster.
        match bytes.get(cur.pos) {
            Some(c) if c.is_ascii_whitespace() => cur.pos += 1,
            _ => return Err(Error::MalformedHeader("missing raster separator".into())),
        }
        let data = &bytes[cur.pos..];
        if maxval < 256 {
            if data.len() < expected {
                return Err(Error::Truncated {
                    expected,
                    found: data.len(),
                });
            }
            raw.extend(data[..expected].iter().map(|&b| u32::from(b)));
        } else {
            if data.len() < 2 * expected {
                return Err(Error::Truncated {
                    expected,
                    found: data.len() / 2,
                });
            }
            raw.extend(
                data[..2 * expected]
                    .chunks_exact(2)
                    .map(|c| u32::from(u16::from_be_bytes([c[0], c[1]]))),
            );
        }
    } else {
        for _ in 0..expected {
            cur.skip_space_and_comments();
            if cur.pos >= bytes.len() {
                return Err(Error::Truncated {
                    expected,
                    found: raw.len(),
                });
            }
            raw.push(cur.number("sample")?);
        }
    }

    if let Some(&value) = raw.iter().find(|&&v| v > maxval) {
        return Err(Error::SampleOutOfRange { value, maxval });
    }
    let scale = f64::from(maxval);
    Image::new(
        width,
        height,
        raw.into_iter().map(|v| f64::from(v) / scale).collect(),
    )
}

fn decode_png(bytes: &[u8], options: &LoadOptions) -> Result<Image> {
    let mut decoder = png::Decoder::new(Cursor::new(bytes));
    decoder.set_transformations(png::Transformations::IDENTITY);
    let mut reader = decoder
        .read_info()
        .map_err(|e| Error::PngDecode(e.to_string()))?;
    let mut buf = vec![0; reader.output_buffer_size()];
    let info = reader
        .next_frame(&mut buf)
        .map_err(|e| Error::PngDecode(e.to_string()))?;

    if info.bit_depth != png::BitDepth::Eight {
        return Err(Error::UnsupportedBitDepth(format!(
            "png {:?}",
            info.bit_depth
        )));
    }
    let channels = match info.color_type {
        png::ColorType::Grayscale => 1,
        png::ColorType::Rgb => 3,
        other => return Err(Error::UnsupportedColorType(format!("png {other:?}"))),
    };

    let (w, h) = (info.width as usize, info.height as usize);
    let luma = options.luma;
    let mut samples = Vec::with_capacity(w * h);
    for row in buf.chunks(info.line_size).take(h) {
        let row = &row[..w * channels];
        if channels == 1 {
            samples.extend(row.iter().map(|&v| f64::from(v) / 255.0));
        } else {
            samples.extend(row.chunks_exact(3).map(|p| {
                (luma.r * f64::from(p[0]) + luma.g * f64::from(p[1]) + luma.b * f64::from(p[2]))
                    / 255.0
            }));
        }
    }
    // Coefficients that sum past one could overshoot; keep the [0, 1] contract.
    for s in &mut samples {
        *s = s.clamp(0.0, 1.0);
    }
    Image::new(w, h, samples)
}
