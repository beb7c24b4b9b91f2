//! Brute-force referees for the engine. They recompute expected values with
//! plain arithmetic on raw pixel buffers and only call the engine for the
//! operation under test.

use crate::engine::{embed, extract};
use crate::image::GrayImage;
use crate::record::PositionRecord;

/// Embeds then extracts, and checks by exhaustive comparison that the payload
/// equals every tag pixel divided by 16 and that every watermarked pixel kept
/// the cover's value divided by 16.
pub fn oracle_roundtrip(cover: &GrayImage, tag: &GrayImage, key: &[u8]) -> bool {
    let Ok((watermarked, record)) = embed(cover, tag, key) else {
        return false;
    };
    let Ok((_, payload)) = extract(&watermarked, &record) else {
        return false;
    };
    if payload.len() != tag.len() || watermarked.len() != cover.len() {
        return false;
    }
    let payload_ok = tag
        .pixels()
        .iter()
        .zip(payload.nibbles())
        .all(|(&t, &n)| t / 16 == n);
    let high_ok = cover
        .pixels()
        .iter()
        .zip(watermarked.pixels())
        .all(|(&c, &w)| c / 16 == w / 16);
    payload_ok && high_ok
}

/// For every recorded pixel and each of its 15 alternative low nibbles,
/// extraction must change exactly the one payload element that pixel owns.
pub fn oracle_fragility(watermarked: &GrayImage, record: &PositionRecord) -> bool {
    let Some(baseline) = raw_payload(watermarked, record) else {
        return false;
    };
    let cols = watermarked.cols();
    for (owner, pos) in record.positions().iter().enumerate() {
        let idx = pos.row * cols + pos.col;
        let original = watermarked.pixels()[idx];
        for alteration in 1..16u8 {
            let mut attacked = watermarked.clone();
            attacked.pixels_mut()[idx] = (original & 0xF0) | ((original & 0x0F) ^ alteration);
            let Some(changed) = changed_indices(&attacked, record, &baseline) else {
                return false;
            };
            if changed != [owner] {
                return false;
            }
        }
    }
    true
}

/// Altering any pixel outside the record must leave the payload untouched.
pub fn oracle_isolation(watermarked: &GrayImage, record: &PositionRecord) -> bool {
    let Some(baseline) = raw_payload(watermarked, record) else {
        return false;
    };
    let cols = watermarked.cols();
    let mut recorded = vec![false; watermarked.len()];
    for p in record.positions() {
        recorded[p.row * cols + p.col] = true;
    }
    (0..watermarked.len()).filter(|&i| !recorded[i]).all(|i| {
        let mut attacked = watermarked.clone();
        attacked.pixels_mut()[i] ^= 0xFF;
        changed_indices(&attacked, record, &baseline).is_some_and(|c| c.is_empty())
    })
}

/// Zero alterations must produce zero changes.
pub fn oracle_identity(watermarked: &GrayImage, record: &PositionRecord) -> bool {
    raw_payload(watermarked, record)
        .and_then(|b| changed_indices(watermarked, record, &b))
        .is_some_and(|c| c.is_empty())
}

fn raw_payload(image: &GrayImage, record: &PositionRecord) -> Option<Vec<u8>> {
    extract(image, record)
        .ok()
        .map(|(_, p)| p.nibbles().to_vec())
}

fn changed_indices(
    image: &GrayImage,
    record: &PositionRecord,
    baseline: &[u8],
) -> Option<Vec<usize>> {
    let now = raw_payload(image, record)?;
    Some(
        (0..baseline.len())
            .filter(|&i| now[i] != baseline[i])
            .collect(),
    )
}
