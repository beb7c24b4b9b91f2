//! Binary PGM (`P5`) and PPM (`P6`) with maxval 255.

use crate::error::{Error, Result};
use crate::image::GrayImage;

/// Decoded raster from a binary PNM file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pnm {
    Gray(GrayImage),
    /// Interleaved RGB, row-major.
    Rgb {
        rows: usize,
        cols: usize,
        samples: Vec<u8>,
    },
}

pub fn is_pnm(bytes: &[u8]) -> bool {
    bytes.len() >= 2 && bytes[0] == b'P' && matches!(bytes[1], b'1'..=b'7')
}

pub fn decode_pnm(bytes: &[u8]) -> Result<Pnm> {
    if bytes.len() < 2 || bytes[0] != b'P' {
        return Err(Error::MalformedHeader("missing P magic".into()));
    }
    let channels = match bytes[1] {
        b'5' => 1,
        b'6' => 3,
        other => {
            return Err(Error::UnsupportedFormat(format!(
                "PNM variant P{}",
                other as char
            )));
        }
    };
    let mut cursor = Cursor { bytes, at: 2 };
    let cols = cursor.number("width")?;
    let rows = cursor.number("height")?;
    let maxval = cursor.number("maxval")?;
    if maxval == 0 || maxval > 65535 {
        return Err(Error::MalformedHeader(format!("maxval {maxval}")));
    }
    if maxval != 255 {
        return Err(Error::UnsupportedMaxval(maxval as u32));
    }
    // Exactly one whitespace byte separates the header from the raster.
    match bytes.get(cursor.at) {
        Some(b) if b.is_ascii_whitespace() => cursor.at += 1,
        _ => return Err(Error::MalformedHeader("no whitespace after maxval".into())),
    }
    if rows == 0 || cols == 0 {
        return Err(Error::MalformedHeader(format!(
            "zero dimension {cols}x{rows}"
        )));
    }
    let len = rows
        .checked_mul(cols)
        .and_then(|n| n.checked_mul(channels))
        .ok_or_else(|| Error::MalformedHeader(format!("{cols}x{rows} overflows")))?;
    let raster = bytes
        .get(cursor.at..cursor.at + len)
        .ok_or_else(|| Error::InvalidImage(format!("raster shorter than {len} bytes")))?;
    Ok(if channels == 1 {
        Pnm::Gray(GrayImage::new(rows, cols, raster.to_vec())?)
    } else {
        Pnm::Rgb {
            rows,
            cols,
            samples: raster.to_vec(),
        }
    })
}

pub fn encode_pgm(image: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", image.cols(), image.rows()).into_bytes();
    out.extend_from_slice(image.pixels());
    out
}

struct Cursor<'a> {
    bytes: &'a [u8],
    at: usize,
}

impl Cursor<'_> {
    fn skip_blank(&mut self) {
        while let Some(&b) = self.bytes.get(self.at) {
            if b.is_ascii_whitespace() {
                self.at += 1;
            } else if b == b'#' {
                while let Some(&c) = self.bytes.get(self.at) {
                    self.at += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        let before = self.at;
        self.skip_blank();
        if self.at == before {
            return Err(Error::MalformedHeader(format!(
                "expected whitespace before {what}"
            )));
        }
        let start = self.at;
        while self.bytes.get(self.at).is_some_and(u8::is_ascii_digit) {
            self.at += 1;
        }
        if start == self.at {
            return Err(Error::MalformedHeader(format!("missing {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.at])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::MalformedHeader(format!("{what} out of range")))
    }
}
