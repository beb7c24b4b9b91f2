//! Binary key file (`FTWK`, version 1) holding a [`PositionRecord`].
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! magic      4 bytes  "FTWK"
//! version    u16      1
//! cover_rows u32
//! cover_cols u32
//! tag_rows   u32
//! tag_cols   u32
//! tag_digest 32 bytes
//! positions  tag_rows * tag_cols pairs of (row u32, col u32), record order
//! ```

use std::collections::HashSet;
use std::io::{Read, Write};

use crate::error::{Error, KeyFileDefect, Result};
use crate::record::{Position, PositionRecord};

pub const MAGIC: &[u8; 4] = b"FTWK";
pub const VERSION: u16 = 1;
pub const HEADER_LEN: usize = 4 + 2 + 4 * 4 + 32;

pub fn encode_key(record: &PositionRecord) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(HEADER_LEN + record.len() * 8);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    let (cover_rows, cover_cols) = record.cover_dims();
    let (tag_rows, tag_cols) = record.tag_dims();
    for v in [cover_rows, cover_cols, tag_rows, tag_cols] {
        out.extend_from_slice(&to_u32(v)?.to_le_bytes());
    }
    out.extend_from_slice(record.tag_digest());
    for p in record.positions() {
        out.extend_from_slice(&to_u32(p.row)?.to_le_bytes());
        out.extend_from_slice(&to_u32(p.col)?.to_le_bytes());
    }
    Ok(out)
}

pub fn decode_key(bytes: &[u8]) -> Result<PositionRecord> {
    let corrupt = |d| Error::CorruptKeyFile(d);
    if bytes.len() < 4 || &bytes[..4] != MAGIC {
        return Err(Error::NotAKeyFile);
    }
    if bytes.len() < 6 {
        return Err(corrupt(KeyFileDefect::Truncated));
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    if bytes.len() < HEADER_LEN {
        return Err(corrupt(KeyFileDefect::Truncated));
    }
    let dims: Vec<usize> = (0..4)
        .map(|i| read_u32(bytes, 6 + 4 * i) as usize)
        .collect();
    let (cover_rows, cover_cols, tag_rows, tag_cols) = (dims[0], dims[1], dims[2], dims[3]);
    if dims.contains(&0) {
        return Err(corrupt(KeyFileDefect::ZeroDimension));
    }
    let mut digest = [0u8; 32];
    digest.copy_from_slice(&bytes[22..HEADER_LEN]);

    let count = tag_rows as u128 * tag_cols as u128;
    let expected = HEADER_LEN as u128 + count * 8;
    match (bytes.len() as u128).cmp(&expected) {
        std::cmp::Ordering::Less => return Err(corrupt(KeyFileDefect::Truncated)),
        std::cmp::Ordering::Greater => return Err(corrupt(KeyFileDefect::TrailingData)),
        std::cmp::Ordering::Equal => {}
    }

    let mut seen = HashSet::with_capacity(count as usize);
    let mut positions = Vec::with_capacity(count as usize);
    for pair in bytes[HEADER_LEN..].chunks_exact(8) {
        let p = Position::new(read_u32(pair, 0) as usize, read_u32(pair, 4) as usize);
        if p.row >= cover_rows || p.col >= cover_cols {
            return Err(corrupt(KeyFileDefect::OutOfBounds));
        }
        if !seen.insert(p) {
            return Err(corrupt(KeyFileDefect::DuplicateCoordinate));
        }
        positions.push(p);
    }
    PositionRecord::new(
        (cover_rows, cover_cols),
        (tag_rows, tag_cols),
        positions,
        digest,
    )
}

pub fn write_key<W: Write>(record: &PositionRecord, mut sink: W) -> Result<()> {
    sink.write_all(&encode_key(record)?)?;
    sink.flush()?;
    Ok(())
}

pub fn read_key<R: Read>(mut source: R) -> Result<PositionRecord> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    decode_key(&bytes)
}

fn read_u32(bytes: &[u8], at: usize) -> u32 {
    u32::from_le_bytes(bytes[at..at + 4].try_into().expect("four bytes"))
}

fn to_u32(v: usize) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::InvalidRecord("dimension does not fit in 32 bits"))
}
