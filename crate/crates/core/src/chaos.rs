//! Logistic-map keystream that drives pixel position selection.
//!
//! Each draw runs the map twice from the current iterate `k`: the first
//! iterate becomes the row draw and the new `k`, the second becomes the
//! column draw and is not fed back. All arithmetic is plain `f64` with no
//! fused multiply-add, so a given `(k, r)` replays identically everywhere.

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Logistic parameter used unless the caller picks another one. Sits just
/// under 4 so iterates can never reach exactly 1.
pub const DEFAULT_PARAMETER: f64 = 3.999;

/// Current iterate of the logistic map together with its parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChaosState {
    k: f64,
    r: f64,
}

impl ChaosState {
    /// Builds a state from an explicit iterate. `k` must lie strictly inside
    /// (0, 1) and off the excluded points; `r` must lie in (0, 4].
    pub fn new(k: f64, r: f64) -> Result<Self> {
        if !(r > 0.0 && r <= 4.0) || !(k > 0.0 && k < 1.0) || is_excluded(k, r) {
            return Err(Error::DegenerateChaos);
        }
        Ok(ChaosState { k, r })
    }

    /// Maps the leading 53 bits of a digest into [0, 1) and steps off any
    /// excluded point one ulp at a time.
    pub fn from_digest(digest: &[u8; 32], r: f64) -> Result<Self> {
        if !(r > 0.0 && r <= 4.0) {
            return Err(Error::DegenerateChaos);
        }
        let mut lead = [0u8; 8];
        lead.copy_from_slice(&digest[..8]);
        let mantissa = u64::from_be_bytes(lead) >> 11;
        let mut k = mantissa as f64 / (1u64 << 53) as f64;
        while is_excluded(k, r) {
            k = k.next_up();
        }
        Ok(ChaosState { k, r })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn parameter(&self) -> f64 {
        self.r
    }

    /// One keystream draw. Returns the pair `(x, y)` and the advanced state.
    pub fn step(self) -> Result<(f64, f64, ChaosState)> {
        let r = self.r;
        let x = r * self.k * (1.0 - self.k);
        let y = r * x * (1.0 - x);
        let inside = |v: f64| v > 0.0 && v < 1.0;
        if !inside(x) || !inside(y) || x == fixed_point(r) {
            return Err(Error::DegenerateChaos);
        }
        Ok((x, y, ChaosState { k: x, r }))
    }
}

/// Seeds the keystream from arbitrary key material with the default parameter.
pub fn chaos_seed(key_material: &[u8]) -> Result<ChaosState> {
    chaos_seed_with_parameter(key_material, DEFAULT_PARAMETER)
}

pub fn chaos_seed_with_parameter(key_material: &[u8], r: f64) -> Result<ChaosState> {
    if key_material.is_empty() {
        return Err(Error::EmptyKey);
    }
    let digest: [u8; 32] = Sha256::digest(key_material).into();
    ChaosState::from_digest(&digest, r)
}

fn fixed_point(r: f64) -> f64 {
    1.0 - 1.0 / r
}

fn is_excluded(k: f64, r: f64) -> bool {
    k <= 0.0 || k >= 1.0 || k == 0.25 || k == 0.5 || k == 0.75 || k == fixed_point(r)
}

/// Anything that can hand out pairs of unit-interval draws. Position
/// selection is generic over this so tests can replay scripted streams.
pub trait UnitPairSource {
    fn next_pair(&mut self) -> Result<(f64, f64)>;
}

impl UnitPairSource for ChaosState {
    fn next_pair(&mut self) -> Result<(f64, f64)> {
        let (x, y, next) = self.step()?;
        *self = next;
        Ok((x, y))
    }
}
