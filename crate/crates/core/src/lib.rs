//! Fragile tag watermarking for 8-bit grayscale images.
//!
//! A tag image's high nibbles are hidden in the low nibbles of cover pixels
//! chosen by a keyed logistic-map stream. The chosen coordinates, together
//! with a SHA-256 of the payload, form a [`PositionRecord`] that is needed to
//! extract the tag again. Any change to a carrying pixel's low nibble breaks
//! the digest and is localized to the tag pixel it carried.
//!
//! ```
//! use tagmark::{embed, verify, GrayImage};
//!
//! let cover = GrayImage::from_fn(64, 64, |r, c| (r * 4 + c) as u8)?;
//! let tag = GrayImage::from_fn(8, 8, |r, c| (r * 32 + c * 4) as u8)?;
//! let (watermarked, record) = embed(&cover, &tag, b"passphrase")?;
//! assert!(verify(&watermarked, &record, None)?.authentic);
//! # Ok::<(), tagmark::Error>(())
//! ```

pub mod attack;
pub mod chaos;
pub mod engine;
pub mod error;
pub mod image;
pub mod imageio;
pub mod keyfile;
pub mod metrics;
pub mod pnm;
pub mod record;

#[cfg(feature = "oracles")]
pub mod oracle;

pub use attack::{apply_attack, AttackKind, AttackSpec};
pub use chaos::{chaos_seed, ChaosState, UnitPairSource, DEFAULT_PARAMETER};
pub use engine::{
    capacity, embed, embed_payload, extract, initialize_cover, map_unit_to_coord, prepare_tag,
    select_positions, select_positions_with, verify, TamperedPosition, VerifyReport,
};
pub use error::{Error, KeyFileDefect, Result};
pub use image::{GrayImage, NibblePlane};
pub use imageio::{read_image, write_image, ReadOptions};
pub use keyfile::{decode_key, encode_key, read_key, write_key};
pub use metrics::{ber, psnr};
pub use record::{payload_digest, Position, PositionRecord};
