//! Imperceptibility and tamper-damage metrics.

use crate::error::{Error, Result};
use crate::image::{GrayImage, NibblePlane};

/// Peak signal-to-noise ratio in dB for 8-bit images. Identical images
/// give `f64::INFINITY`.
pub fn psnr(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    check_dims(a.dims(), b.dims())?;
    let sse: u64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&x, &y)| {
            let d = x.abs_diff(y) as u64;
            d * d
        })
        .sum();
    if sse == 0 {
        return Ok(f64::INFINITY);
    }
    let mse = sse as f64 / a.len() as f64;
    Ok(10.0 * (255.0 * 255.0 / mse).log10())
}

/// Fraction of nibble positions where the two planes disagree.
pub fn ber(a: &NibblePlane, b: &NibblePlane) -> Result<f64> {
    check_dims(a.dims(), b.dims())?;
    let wrong = a
        .nibbles()
        .iter()
        .zip(b.nibbles())
        .filter(|(x, y)| x != y)
        .count();
    Ok(wrong as f64 / a.len() as f64)
}

fn check_dims(a: (usize, usize), b: (usize, usize)) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch(a.0, a.1, b.0, b.1));
    }
    Ok(())
}
