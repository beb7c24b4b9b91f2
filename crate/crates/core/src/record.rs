use std::collections::HashSet;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::image::NibblePlane;

/// A 0-based cover coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Position {
    pub row: usize,
    pub col: usize,
}

impl Position {
    pub fn new(row: usize, col: usize) -> Self {
        Position { row, col }
    }
}

/// The secret key: where each payload nibble lives, in tag row-major order,
/// plus the SHA-256 of the payload that was embedded there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionRecord {
    cover_rows: usize,
    cover_cols: usize,
    tag_rows: usize,
    tag_cols: usize,
    positions: Vec<Position>,
    tag_digest: [u8; 32],
}

impl PositionRecord {
    /// Validates bounds, length and uniqueness of `positions`.
    pub fn new(
        cover_dims: (usize, usize),
        tag_dims: (usize, usize),
        positions: Vec<Position>,
        tag_digest: [u8; 32],
    ) -> Result<Self> {
        let (cover_rows, cover_cols) = cover_dims;
        let (tag_rows, tag_cols) = tag_dims;
        if cover_rows == 0 || cover_cols == 0 || tag_rows == 0 || tag_cols == 0 {
            return Err(Error::InvalidRecord("zero dimension"));
        }
        if tag_rows.checked_mul(tag_cols) != Some(positions.len()) {
            return Err(Error::InvalidRecord(
                "position count does not match tag size",
            ));
        }
        if positions
            .iter()
            .any(|p| p.row >= cover_rows || p.col >= cover_cols)
        {
            return Err(Error::InvalidRecord("position out of bounds"));
        }
        let mut seen = HashSet::with_capacity(positions.len());
        if !positions.iter().all(|p| seen.insert(*p)) {
            return Err(Error::InvalidRecord("duplicate position"));
        }
        Ok(PositionRecord {
            cover_rows,
            cover_cols,
            tag_rows,
            tag_cols,
            positions,
            tag_digest,
        })
    }

    pub fn cover_dims(&self) -> (usize, usize) {
        (self.cover_rows, self.cover_cols)
    }

    pub fn tag_dims(&self) -> (usize, usize) {
        (self.tag_rows, self.tag_cols)
    }

    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn tag_digest(&self) -> &[u8; 32] {
        &self.tag_digest
    }

    pub(crate) fn set_tag_digest(&mut self, digest: [u8; 32]) {
        self.tag_digest = digest;
    }
}

/// SHA-256 over the payload, one nibble per byte, row-major.
pub fn payload_digest(payload: &NibblePlane) -> [u8; 32] {
    Sha256::digest(payload.nibbles()).into()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(row: usize, col: usize) -> Position {
        Position::new(row, col)
    }

    #[test]
    fn validates_invariants() {
        assert!(PositionRecord::new((4, 4), (1, 2), vec![p(0, 0), p(3, 3)], [0; 32]).is_ok());
        assert!(PositionRecord::new((4, 4), (1, 2), vec![p(0, 0), p(0, 0)], [0; 32]).is_err());
        assert!(PositionRecord::new((4, 4), (1, 2), vec![p(0, 0), p(4, 0)], [0; 32]).is_err());
        assert!(PositionRecord::new((4, 4), (1, 2), vec![p(0, 0)], [0; 32]).is_err());
        assert!(PositionRecord::new((0, 4), (1, 1), vec![p(0, 0)], [0; 32]).is_err());
    }
}
