//! Embedding, extraction and verification of a tag's high nibbles.
//!
//! The pipeline runs in two phases. First every pixel of the cover is forced
//! odd, which guarantees a nonzero low nibble everywhere. Position selection
//! then claims one pixel per tag pixel by zeroing its low nibble, so a zero
//! low nibble means "already claimed". Only after every position is claimed
//! are the payload nibbles written, since a written nibble may itself be 0.

use serde::Serialize;

use crate::chaos::{chaos_seed, ChaosState, UnitPairSource};
use crate::error::{Error, Result};
use crate::image::{GrayImage, NibblePlane};
use crate::metrics;
use crate::record::{payload_digest, Position, PositionRecord};

const LOW_NIBBLE: u8 = 0x0F;
const HIGH_NIBBLE: u8 = 0xF0;

/// Forces every pixel odd. Even pixels gain 1, which never carries out of
/// the low nibble, so the high nibble is untouched.
pub fn initialize_cover(cover: &GrayImage) -> GrayImage {
    let mut out = cover.clone();
    for p in out.pixels_mut() {
        if *p % 2 == 0 {
            *p += 1;
        }
    }
    out
}

/// Keeps each tag pixel's high nibble, shifted down into the low half.
pub fn prepare_tag(tag: &GrayImage) -> NibblePlane {
    let nibbles = tag.pixels().iter().map(|p| p >> 4).collect();
    NibblePlane::new(tag.rows(), tag.cols(), nibbles).expect("dimensions come from a valid image")
}

/// Maps a unit draw onto a 0-based index in `[0, extent)` using
/// `round(fmod(u * 1000, extent - 1))`, rounding half away from zero.
pub fn map_unit_to_coord(u: f64, extent: usize) -> Result<usize> {
    if extent < 2 {
        return Err(Error::CoverTooSmall);
    }
    let modulus = (extent - 1) as f64;
    // 1-based value is this + 1; the 0-based result subtracts it again.
    Ok((u * 1000.0).rem_euclid(modulus).round() as usize)
}

/// Largest payload a cover of the given size accepts: half its pixels.
pub fn capacity(cover_rows: usize, cover_cols: usize) -> usize {
    cover_rows.saturating_mul(cover_cols) / 2
}

/// Claims one cover pixel per tag pixel using the keyed logistic stream.
pub fn select_positions(
    cover_init: &GrayImage,
    tag_dims: (usize, usize),
    chaos: ChaosState,
) -> Result<(GrayImage, PositionRecord)> {
    let mut stream = chaos;
    select_positions_with(cover_init, tag_dims, &mut stream)
}

/// [`select_positions`] over any source of unit pairs.
///
/// A drawn pixel that is already claimed is probed away from by stepping the
/// row with the 1-based rule `x = rem(x + 1, rows - 1) + 1`, which is
/// `(row + 2) mod (rows - 1)` in 0-based terms. After `rows` failed probes in
/// one column the column steps by the same rule. The rule's orbit does not
/// reach every pixel, so once `rows * cols` probes have failed the search
/// falls back to a row-major scan for the next free pixel.
pub fn select_positions_with<S: UnitPairSource + ?Sized>(
    cover_init: &GrayImage,
    tag_dims: (usize, usize),
    source: &mut S,
) -> Result<(GrayImage, PositionRecord)> {
    let (rows, cols) = cover_init.dims();
    if rows < 2 || cols < 2 {
        return Err(Error::CoverTooSmall);
    }
    let (tag_rows, tag_cols) = tag_dims;
    if tag_rows == 0 || tag_cols == 0 {
        return Err(Error::InvalidImage(format!(
            "zero tag dimension {tag_rows}x{tag_cols}"
        )));
    }
    let wanted = tag_rows
        .checked_mul(tag_cols)
        .ok_or(Error::CapacityExceeded)?;
    if wanted > capacity(rows, cols) {
        return Err(Error::CapacityExceeded);
    }
    if let Some(idx) = cover_init.pixels().iter().position(|p| p % 2 == 0) {
        return Err(Error::CoverNotInitialized {
            row: idx / cols,
            col: idx % cols,
        });
    }

    let mut cleared = cover_init.clone();
    let mut claimed = vec![false; rows * cols];
    let mut positions = Vec::with_capacity(wanted);
    let budget = rows * cols;

    for _ in 0..wanted {
        let (x, y) = source.next_pair()?;
        let mut row = map_unit_to_coord(x, rows)?;
        let mut col = map_unit_to_coord(y, cols)?;

        let is_taken = |img: &GrayImage, claimed: &[bool], r: usize, c: usize| {
            let sentinel = img.get(r, c) & LOW_NIBBLE == 0;
            debug_assert_eq!(sentinel, claimed[r * cols + c]);
            sentinel || claimed[r * cols + c]
        };

        let mut probes = 0;
        let mut in_column = 0;
        while is_taken(&cleared, &claimed, row, col) {
            if probes == budget {
                let start = row * cols + col;
                let free = (0..budget)
                    .map(|i| (start + i) % budget)
                    .find(|&i| !claimed[i])
                    .ok_or(Error::CapacityExceeded)?;
                row = free / cols;
                col = free % cols;
                break;
            }
            row = (row + 2) % (rows - 1);
            probes += 1;
            in_column += 1;
            if in_column == rows {
                col = (col + 2) % (cols - 1);
                in_column = 0;
            }
        }

        let value = cleared.get(row, col);
        cleared.set(row, col, value & HIGH_NIBBLE);
        claimed[row * cols + col] = true;
        positions.push(Position::new(row, col));
    }

    let record = PositionRecord::new((rows, cols), tag_dims, positions, [0; 32])?;
    Ok((cleared, record))
}

/// Writes payload nibble `i` into the low nibble of `record.positions()[i]`
/// and stamps the record with the payload digest.
pub fn embed_payload(
    cover_cleared: &GrayImage,
    payload: &NibblePlane,
    mut record: PositionRecord,
) -> Result<(GrayImage, PositionRecord)> {
    if record.tag_dims() != payload.dims() || record.len() != payload.len() {
        return Err(Error::RecordPayloadMismatch);
    }
    if record.cover_dims() != cover_cleared.dims() {
        return Err(Error::RecordDimensionMismatch);
    }
    let mut out = cover_cleared.clone();
    for (pos, &nibble) in record.positions().iter().zip(payload.nibbles()) {
        let value = out.get(pos.row, pos.col);
        if value & LOW_NIBBLE != 0 {
            return Err(Error::InvalidRecord("recorded pixel was not cleared"));
        }
        out.set(pos.row, pos.col, (value & HIGH_NIBBLE) | nibble);
    }
    record.set_tag_digest(payload_digest(payload));
    Ok((out, record))
}

/// Full pipeline: initialize, select keyed positions, write the payload.
pub fn embed(
    cover: &GrayImage,
    tag: &GrayImage,
    key_material: &[u8],
) -> Result<(GrayImage, PositionRecord)> {
    let chaos = chaos_seed(key_material)?;
    let initialized = initialize_cover(cover);
    let (cleared, record) = select_positions(&initialized, tag.dims(), chaos)?;
    embed_payload(&cleared, &prepare_tag(tag), record)
}

/// Reads the payload back out. The reconstructed tag puts each nibble back
/// in the high half with zero low bits.
pub fn extract(
    watermarked: &GrayImage,
    record: &PositionRecord,
) -> Result<(GrayImage, NibblePlane)> {
    if record.cover_dims() != watermarked.dims()
        || record
            .positions()
            .iter()
            .any(|p| !watermarked.contains(p.row, p.col))
    {
        return Err(Error::RecordDimensionMismatch);
    }
    let nibbles: Vec<u8> = record
        .positions()
        .iter()
        .map(|p| watermarked.get(p.row, p.col) & LOW_NIBBLE)
        .collect();
    let (tag_rows, tag_cols) = record.tag_dims();
    let tag = GrayImage::new(tag_rows, tag_cols, nibbles.iter().map(|n| n << 4).collect())?;
    let payload = NibblePlane::new(tag_rows, tag_cols, nibbles)?;
    Ok((tag, payload))
}

/// One corrupted payload element and the cover pixel that carried it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TamperedPosition {
    pub tag_row: usize,
    pub tag_col: usize,
    pub cover_row: usize,
    pub cover_col: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub authentic: bool,
    /// `None` only when the image is tampered and no reference was given.
    pub ber: Option<f64>,
    #[serde(rename = "tampered")]
    pub tampered_positions: Vec<TamperedPosition>,
}

/// Checks the extracted payload against the digest in the record and, when
/// a reference plane is supplied, localizes every mismatching nibble.
pub fn verify(
    watermarked: &GrayImage,
    record: &PositionRecord,
    reference: Option<&NibblePlane>,
) -> Result<VerifyReport> {
    let (_, payload) = extract(watermarked, record)?;
    if let Some(reference) = reference {
        if reference.dims() != payload.dims() {
            let (r, c) = reference.dims();
            let (pr, pc) = payload.dims();
            return Err(Error::DimensionMismatch(r, c, pr, pc));
        }
    }
    let authentic = payload_digest(&payload) == *record.tag_digest();
    if authentic {
        return Ok(VerifyReport {
            authentic,
            ber: Some(0.0),
            tampered_positions: Vec::new(),
        });
    }
    let Some(reference) = reference else {
        return Ok(VerifyReport {
            authentic,
            ber: None,
            tampered_positions: Vec::new(),
        });
    };

    let tag_cols = payload.cols();
    let tampered_positions = payload
        .nibbles()
        .iter()
        .zip(reference.nibbles())
        .zip(record.positions())
        .enumerate()
        .filter(|(_, ((got, want), _))| got != want)
        .map(|(i, (_, pos))| TamperedPosition {
            tag_row: i / tag_cols,
            tag_col: i % tag_cols,
            cover_row: pos.row,
            cover_col: pos.col,
        })
        .collect();
    let ber = metrics::ber(&payload, reference)?;
    Ok(VerifyReport {
        authentic,
        ber: Some(ber),
        tampered_positions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Scripted(Vec<(f64, f64)>);

    impl UnitPairSource for Scripted {
        fn next_pair(&mut self) -> Result<(f64, f64)> {
            Ok(self.0.remove(0))
        }
    }

    fn gradient(rows: usize, cols: usize) -> GrayImage {
        GrayImage::from_fn(rows, cols, |r, c| ((r * 31 + c * 17) % 256) as u8).unwrap()
    }

    #[test]
    fn initialize_examples() {
        let img = GrayImage::new(1, 3, vec![128, 255, 0]).unwrap();
        assert_eq!(initialize_cover(&img).pixels(), &[129, 255, 1]);
        let zeros = GrayImage::filled(4, 4, 0).unwrap();
        assert_eq!(
            initialize_cover(&zeros),
            GrayImage::filled(4, 4, 1).unwrap()
        );
    }

    #[test]
    fn prepare_examples() {
        let tag = GrayImage::new(1, 3, vec![0xAB, 0, 255]).unwrap();
        assert_eq!(prepare_tag(&tag).nibbles(), &[0xA, 0, 15]);
    }

    #[test]
    fn map_examples() {
        assert_eq!(map_unit_to_coord(0.5, 512).unwrap(), 500);
        assert_eq!(map_unit_to_coord(0.0005, 512).unwrap(), 1);
        assert_eq!(map_unit_to_coord(1e-12, 512).unwrap(), 0);
        assert_eq!(map_unit_to_coord(f64::MIN_POSITIVE, 3).unwrap(), 0);
        assert!(matches!(
            map_unit_to_coord(0.5, 1),
            Err(Error::CoverTooSmall)
        ));
        // fmod lands at 510.7 -> rounds to 511, the last 0-based index.
        assert_eq!(map_unit_to_coord(0.5107, 512).unwrap(), 511);
    }

    #[test]
    fn single_pixel_tag_claims_one_pixel() {
        let cover = initialize_cover(&gradient(512, 512));
        let chaos = chaos_seed(b"one").unwrap();
        let (cleared, record) = select_positions(&cover, (1, 1), chaos).unwrap();
        assert_eq!(record.len(), 1);
        let pos = record.positions()[0];
        assert_eq!(cleared.get(pos.row, pos.col) & 0x0F, 0);
        let changed = cover
            .pixels()
            .iter()
            .zip(cleared.pixels())
            .filter(|(a, b)| a != b)
            .count();
        assert_eq!(changed, 1);
    }

    #[test]
    fn repeated_draw_is_probed_away() {
        let cover = initialize_cover(&gradient(16, 16));
        let mut stream = Scripted(vec![(0.3, 0.7), (0.3, 0.7)]);
        let (_, record) = select_positions_with(&cover, (2, 1), &mut stream).unwrap();
        let [a, b] = [record.positions()[0], record.positions()[1]];
        assert_ne!(a, b);
        // One probe step moves the row by two (mod rows - 1) in the same column.
        assert_eq!(b, Position::new((a.row + 2) % 15, a.col));
    }

    #[test]
    fn probing_terminates_when_orbit_is_full() {
        // Rows 3 with modulus 2: probing from row 0 only revisits row 0, so
        // the raster fallback has to find the remaining free pixels.
        let cover = initialize_cover(&gradient(3, 4));
        let draws = vec![(1e-9, 1e-9); 6];
        let mut stream = Scripted(draws);
        let (cleared, record) = select_positions_with(&cover, (1, 6), &mut stream).unwrap();
        let cleared_count = cleared.pixels().iter().filter(|p| *p & 0x0F == 0).count();
        assert_eq!(cleared_count, 6);
        assert_eq!(record.len(), 6);
    }

    #[test]
    fn over_capacity_rejected() {
        let cover = initialize_cover(&gradient(8, 8));
        let chaos = chaos_seed(b"k").unwrap();
        assert!(select_positions(&cover, (4, 8), chaos).is_ok());
        assert!(matches!(
            select_positions(&cover, (33, 1), chaos),
            Err(Error::CapacityExceeded)
        ));
    }

    #[test]
    fn uninitialized_cover_rejected() {
        let cover = gradient(8, 8);
        let chaos = chaos_seed(b"k").unwrap();
        assert!(matches!(
            select_positions(&cover, (1, 1), chaos),
            Err(Error::CoverNotInitialized { .. })
        ));
    }

    #[test]
    fn thin_cover_rejected() {
        let cover = GrayImage::filled(1, 64, 1).unwrap();
        let chaos = chaos_seed(b"k").unwrap();
        assert!(matches!(
            select_positions(&cover, (1, 1), chaos),
            Err(Error::CoverTooSmall)
        ));
    }

    #[test]
    fn payload_replaces_cleared_nibble() {
        let cleared = GrayImage::new(2, 2, vec![0xC0, 0x11, 0x20, 0x33]).unwrap();
        let record = PositionRecord::new(
            (2, 2),
            (1, 2),
            vec![Position::new(0, 0), Position::new(1, 0)],
            [0; 32],
        )
        .unwrap();
        let payload = NibblePlane::new(1, 2, vec![0xA, 0x0]).unwrap();
        let (out, record) = embed_payload(&cleared, &payload, record).unwrap();
        assert_eq!(out.pixels(), &[0xCA, 0x11, 0x20, 0x33]);
        assert_eq!(record.tag_digest(), &payload_digest(&payload));

        let short = NibblePlane::new(1, 1, vec![1]).unwrap();
        assert!(matches!(
            embed_payload(&cleared, &short, record),
            Err(Error::RecordPayloadMismatch)
        ));
    }

    #[test]
    fn embed_dimensions_and_determinism() {
        let cover = gradient(512, 512);
        let tag = gradient(64, 64);
        let (w1, r1) = embed(&cover, &tag, b"secret").unwrap();
        let (w2, r2) = embed(&cover, &tag, b"secret").unwrap();
        assert_eq!(r1.len(), 4096);
        assert_eq!(w1, w2);
        assert_eq!(r1, r2);
        for (a, b) in cover.pixels().iter().zip(w1.pixels()) {
            assert_eq!(a >> 4, b >> 4);
        }
    }

    #[test]
    fn extract_examples() {
        let cover = gradient(32, 32);
        let tag = gradient(8, 8);
        let (w, record) = embed(&cover, &tag, b"x").unwrap();
        let (reconstructed, payload) = extract(&w, &record).unwrap();
        assert_eq!(payload, prepare_tag(&tag));
        for (r, p) in reconstructed.pixels().iter().zip(payload.nibbles()) {
            assert_eq!(*r, p << 4);
        }

        // Record built for a taller cover: its (rows, 0) coordinate falls off this image.
        let oob =
            PositionRecord::new((33, 32), (1, 1), vec![Position::new(32, 0)], [0; 32]).unwrap();
        assert!(matches!(
            extract(&w, &oob),
            Err(Error::RecordDimensionMismatch)
        ));
    }

    #[test]
    fn verify_examples() {
        let cover = gradient(64, 64);
        let tag = gradient(8, 8);
        let (w, record) = embed(&cover, &tag, b"k").unwrap();
        let reference = prepare_tag(&tag);

        let report = verify(&w, &record, None).unwrap();
        assert!(report.authentic);
        assert_eq!(report.ber, Some(0.0));
        assert!(report.tampered_positions.is_empty());

        let mut flipped = w.clone();
        let target = record.positions()[9];
        flipped.set(
            target.row,
            target.col,
            flipped.get(target.row, target.col) ^ 0b0100,
        );
        let report = verify(&flipped, &record, Some(&reference)).unwrap();
        assert!(!report.authentic);
        assert_eq!(
            report.tampered_positions,
            vec![TamperedPosition {
                tag_row: 1,
                tag_col: 1,
                cover_row: target.row,
                cover_col: target.col
            }]
        );
        assert_eq!(report.ber, Some(1.0 / 64.0));
        assert_eq!(verify(&flipped, &record, None).unwrap().ber, None);

        let mut outside = w.clone();
        let recorded: std::collections::HashSet<_> = record.positions().iter().copied().collect();
        for r in 0..64 {
            for c in 0..64 {
                if !recorded.contains(&Position::new(r, c)) {
                    outside.set(r, c, outside.get(r, c) ^ 0xFF);
                }
            }
        }
        assert!(verify(&outside, &record, None).unwrap().authentic);
    }
}
