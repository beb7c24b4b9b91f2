//! A small lab of seeded attacks used to show the watermark breaks.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::image::GrayImage;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AttackKind {
    /// Each pixel becomes 0 or 255 (even odds) with probability `density`.
    SaltPepper { density: f64 },
    /// Adds rounded zero-mean Gaussian noise, clamped to [0, 255].
    AdditiveNoise { sigma: f64 },
    RegionOverwrite {
        row: usize,
        col: usize,
        height: usize,
        width: usize,
        fill: u8,
    },
    /// Flips one random bit in each of `count` distinct random pixels.
    BitFlip { count: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttackSpec {
    pub kind: AttackKind,
    pub rng_seed: u64,
}

impl AttackSpec {
    pub fn new(kind: AttackKind, rng_seed: u64) -> Self {
        AttackSpec { kind, rng_seed }
    }

    /// Checks the parameters against an image of the given size.
    pub fn validate(&self, rows: usize, cols: usize) -> Result<()> {
        match self.kind {
            AttackKind::SaltPepper { density } if !(0.0..=1.0).contains(&density) => Err(
                Error::InvalidAttack(format!("density {density} outside [0, 1]")),
            ),
            AttackKind::AdditiveNoise { sigma } if !(sigma >= 0.0 && sigma.is_finite()) => Err(
                Error::InvalidAttack(format!("sigma {sigma} must be finite and >= 0")),
            ),
            AttackKind::RegionOverwrite {
                row,
                col,
                height,
                width,
                ..
            } => {
                let fits = height > 0
                    && width > 0
                    && row.checked_add(height).is_some_and(|end| end <= rows)
                    && col.checked_add(width).is_some_and(|end| end <= cols);
                if fits {
                    Ok(())
                } else {
                    Err(Error::InvalidAttack(format!(
                        "rect ({row}, {col}, {height}, {width}) outside {rows}x{cols} image"
                    )))
                }
            }
            AttackKind::BitFlip { count } if count == 0 || count > rows * cols => Err(
                Error::InvalidAttack(format!("bit flip count {count} not in 1..={}", rows * cols)),
            ),
            _ => Ok(()),
        }
    }
}

/// Applies `spec` to a copy of `image`. Output depends only on the inputs.
pub fn apply_attack(image: &GrayImage, spec: &AttackSpec) -> Result<GrayImage> {
    let (rows, cols) = image.dims();
    spec.validate(rows, cols)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
    let mut out = image.clone();

    match spec.kind {
        AttackKind::SaltPepper { density } => {
            for p in out.pixels_mut() {
                if rng.gen_bool(density) {
                    *p = if rng.gen_bool(0.5) { 255 } else { 0 };
                }
            }
        }
        AttackKind::AdditiveNoise { sigma } => {
            let normal =
                Normal::new(0.0, sigma).map_err(|e| Error::InvalidAttack(e.to_string()))?;
            for p in out.pixels_mut() {
                let noisy = *p as f64 + normal.sample(&mut rng).round();
                *p = noisy.clamp(0.0, 255.0) as u8;
            }
        }
        AttackKind::RegionOverwrite {
            row,
            col,
            height,
            width,
            fill,
        } => {
            for r in row..row + height {
                for c in col..col + width {
                    out.set(r, c, fill);
                }
            }
        }
        AttackKind::BitFlip { count } => {
            let picks = index::sample(&mut rng, rows * cols, count);
            let pixels = out.pixels_mut();
            for i in picks.iter() {
                let bit = rng.gen_range(0..8);
                pixels[i] ^= 1 << bit;
            }
        }
    }
    Ok(out)
}
