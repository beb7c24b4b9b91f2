//! Reading and writing cover, tag and watermarked images.
//!
//! Binary PGM is the canonical format and the only one written. PNG is read
//! when it is 8-bit grayscale. Anything in colour (or otherwise not 8-bit
//! gray) is refused unless the caller asks for BT.601 luma conversion.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::pnm::{self, Pnm};

const PNG_SIGNATURE: &[u8; 8] = b"\x89PNG\r\n\x1a\n";

/// How to treat input that is not already 8-bit grayscale.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReadOptions {
    pub to_gray: bool,
}

pub fn decode_image(bytes: &[u8], opts: ReadOptions) -> Result<GrayImage> {
    if pnm::is_pnm(bytes) {
        return match pnm::decode_pnm(bytes)? {
            Pnm::Gray(img) => Ok(img),
            Pnm::Rgb {
                rows,
                cols,
                samples,
            } if opts.to_gray => rgb_to_gray(rows, cols, &samples),
            Pnm::Rgb { .. } => Err(Error::UnsupportedFormat(
                "colour PPM (pass --to-gray to convert)".into(),
            )),
        };
    }
    if bytes.starts_with(PNG_SIGNATURE) {
        return decode_png(bytes, opts);
    }
    Err(Error::UnsupportedFormat(
        "expected binary PGM or PNG".into(),
    ))
}

fn decode_png(bytes: &[u8], opts: ReadOptions) -> Result<GrayImage> {
    let decoded = image::load_from_memory_with_format(bytes, image::ImageFormat::Png)?;
    let rows = decoded.height() as usize;
    let cols = decoded.width() as usize;
    match decoded {
        image::DynamicImage::ImageLuma8(buf) => GrayImage::new(rows, cols, buf.into_raw()),
        other if opts.to_gray => rgb_to_gray(rows, cols, other.to_rgb8().as_raw()),
        other => Err(Error::UnsupportedFormat(format!(
            "PNG colour type {:?} (pass --to-gray to convert)",
            other.color()
        ))),
    }
}

/// BT.601 luma: `round(0.299 R + 0.587 G + 0.114 B)`.
pub fn luma(r: u8, g: u8, b: u8) -> u8 {
    let y = 0.299 * r as f64 + 0.587 * g as f64 + 0.114 * b as f64;
    y.round().clamp(0.0, 255.0) as u8
}

fn rgb_to_gray(rows: usize, cols: usize, samples: &[u8]) -> Result<GrayImage> {
    let pixels = samples
        .chunks_exact(3)
        .map(|px| luma(px[0], px[1], px[2]))
        .collect();
    GrayImage::new(rows, cols, pixels)
}

pub fn read_image(path: impl AsRef<Path>, opts: ReadOptions) -> Result<GrayImage> {
    decode_image(&fs::read(path)?, opts)
}

/// Always writes binary PGM, whatever the file extension.
pub fn write_image(image: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, pnm::encode_pgm(image))?;
    Ok(())
}
