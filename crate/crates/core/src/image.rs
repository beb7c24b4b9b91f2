use crate::error::{Error, Result};

/// An 8-bit single-channel raster stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GrayImage {
    rows: usize,
    cols: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(rows: usize, cols: usize, pixels: Vec<u8>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidImage(format!("zero dimension {rows}x{cols}")));
        }
        if rows.checked_mul(cols) != Some(pixels.len()) {
            return Err(Error::InvalidImage(format!(
                "{} pixels for a {rows}x{cols} image",
                pixels.len()
            )));
        }
        Ok(GrayImage { rows, cols, pixels })
    }

    pub fn filled(rows: usize, cols: usize, value: u8) -> Result<Self> {
        let len = rows
            .checked_mul(cols)
            .ok_or_else(|| Error::InvalidImage(format!("{rows}x{cols} overflows")))?;
        Self::new(rows, cols, vec![value; len])
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u8,
    ) -> Result<Self> {
        let mut pixels = Vec::with_capacity(rows.saturating_mul(cols));
        for r in 0..rows {
            for c in 0..cols {
                pixels.push(f(r, c));
            }
        }
        Self::new(rows, cols, pixels)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [u8] {
        &mut self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    /// Panics when `(row, col)` is out of bounds.
    pub fn get(&self, row: usize, col: usize) -> u8 {
        assert!(
            row < self.rows && col < self.cols,
            "pixel ({row}, {col}) out of bounds"
        );
        self.pixels[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: u8) {
        assert!(
            row < self.rows && col < self.cols,
            "pixel ({row}, {col}) out of bounds"
        );
        self.pixels[row * self.cols + col] = value;
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        row < self.rows && col < self.cols
    }
}

/// Per-pixel 4-bit values; the payload actually carried by the cover.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NibblePlane {
    rows: usize,
    cols: usize,
    nibbles: Vec<u8>,
}

impl NibblePlane {
    pub fn new(rows: usize, cols: usize, nibbles: Vec<u8>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidImage(format!("zero dimension {rows}x{cols}")));
        }
        if rows.checked_mul(cols) != Some(nibbles.len()) {
            return Err(Error::InvalidImage(format!(
                "{} nibbles for a {rows}x{cols} plane",
                nibbles.len()
            )));
        }
        if let Some(bad) = nibbles.iter().find(|&&n| n > 0x0F) {
            return Err(Error::InvalidImage(format!(
                "nibble value {bad} exceeds 15"
            )));
        }
        Ok(NibblePlane {
            rows,
            cols,
            nibbles,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn len(&self) -> usize {
        self.nibbles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nibbles.is_empty()
    }

    pub fn nibbles(&self) -> &[u8] {
        &self.nibbles
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        assert!(
            row < self.rows && col < self.cols,
            "nibble ({row}, {col}) out of bounds"
        );
        self.nibbles[row * self.cols + col]
    }
}
