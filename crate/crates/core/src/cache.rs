//! Integrity-checked on-disk cache for enumerated groups.
//!
//! Cache files hold a fixed header (format version, family, `q`, field
//! modulus, element count), the sorted element encodings as little-endian
//! `u128` values, and a SHA-256 digest of everything before the trailer.
//! A file that exists but fails any check — digest, header echo, count,
//! sortedness — is reported as a cache-integrity error, never silently
//! recomputed, so a corrupted artifact cannot masquerade as a fresh
//! enumeration.

use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::group::Family;
use crate::{Error, Result};

const MAGIC: &[u8; 8] = b"TWCGRP\x00\x01";

fn family_tag(f: Family) -> u8 {
    match f {
        Family::Sl2 => 0,
        Family::Psl2 => 1,
        Family::Sl3 => 2,
        Family::Sz => 3,
    }
}

/// Cache file path for a `(family, q)` pair inside `dir`.
pub fn group_cache_path(dir: &Path, family: Family, q: u32) -> PathBuf {
    dir.join(format!("{}_{q}.grp", family.name()))
}

fn header_bytes(family: Family, q: u32, modulus: &[u32], count: u64) -> Vec<u8> {
    let mut h = Vec::with_capacity(32 + 4 * modulus.len());
    h.extend_from_slice(MAGIC);
    h.push(family_tag(family));
    h.extend_from_slice(&q.to_le_bytes());
    h.extend_from_slice(&(modulus.len() as u32).to_le_bytes());
    for &c in modulus {
        h.extend_from_slice(&c.to_le_bytes());
    }
    h.extend_from_slice(&count.to_le_bytes());
    h
}

/// Writes the encodings of an enumerated group.
pub fn store_group(
    dir: &Path,
    family: Family,
    q: u32,
    modulus: &[u32],
    codes: &[u128],
) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let path = group_cache_path(dir, family, q);
    let tmp = path.with_extension("grp.tmp");
    {
        let file = std::fs::File::create(&tmp)?;
        let mut w = std::io::BufWriter::new(file);
        let mut hasher = Sha256::new();
        let header = header_bytes(family, q, modulus, codes.len() as u64);
        hasher.update(&header);
        w.write_all(&header)?;
        for &c in codes {
            let b = c.to_le_bytes();
            hasher.update(b);
            w.write_all(&b)?;
        }
        w.write_all(&hasher.finalize())?;
        w.flush()?;
    }
    std::fs::rename(&tmp, &path)?;
    Ok(())
}

/// Loads a cached enumeration if present.
///
/// Returns `Ok(None)` when no cache file exists.  An existing file that
/// fails verification yields [`Error::Cache`].
pub fn load_group(
    dir: &Path,
    family: Family,
    q: u32,
    modulus: &[u32],
    expected_count: u64,
) -> Result<Option<Vec<u128>>> {
    let path = group_cache_path(dir, family, q);
    if !path.exists() {
        return Ok(None);
    }
    let bytes = std::fs::read(&path)?;
    let fail = |why: &str| Error::Cache(format!("{}: {why}", path.display()));

    let expected_header = header_bytes(family, q, modulus, expected_count);
    let body_len = expected_header.len() + expected_count as usize * 16;
    if bytes.len() != body_len + 32 {
        return Err(fail("wrong file size"));
    }
    let (body, digest) = bytes.split_at(body_len);
    let actual = Sha256::digest(body);
    if actual.as_slice() != digest {
        return Err(fail("digest mismatch"));
    }
    if body[..expected_header.len()] != expected_header[..] {
        return Err(fail("header mismatch"));
    }
    let mut codes = Vec::with_capacity(expected_count as usize);
    for chunk in body[expected_header.len()..].chunks_exact(16) {
        codes.push(u128::from_le_bytes(chunk.try_into().unwrap()));
    }
    if !codes.windows(2).all(|w| w[0] < w[1]) {
        return Err(fail("encodings are not strictly ascending"));
    }
    Ok(Some(codes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_missing_file() {
        let dir = tempfile::tempdir().unwrap();
        let codes: Vec<u128> = vec![1, 5, 9, 1 << 100];
        assert!(load_group(dir.path(), Family::Sl2, 5, &[0, 1], 4)
            .unwrap()
            .is_none());
        store_group(dir.path(), Family::Sl2, 5, &[0, 1], &codes).unwrap();
        let loaded = load_group(dir.path(), Family::Sl2, 5, &[0, 1], 4)
            .unwrap()
            .unwrap();
        assert_eq!(loaded, codes);
    }

    #[test]
    fn corrupted_payload_is_an_error_not_a_recompute() {
        let dir = tempfile::tempdir().unwrap();
        let codes: Vec<u128> = vec![2, 3, 4];
        store_group(dir.path(), Family::Psl2, 5, &[0, 1], &codes).unwrap();
        let path = group_cache_path(dir.path(), Family::Psl2, 5);
        let mut bytes = std::fs::read(&path).unwrap();
        let mid = bytes.len() / 2;
        bytes[mid] ^= 0xff;
        std::fs::write(&path, &bytes).unwrap();
        match load_group(dir.path(), Family::Psl2, 5, &[0, 1], 3) {
            Err(Error::Cache(msg)) => assert!(msg.contains("digest")),
            other => panic!("expected cache error, got {other:?}"),
        }
    }

    #[test]
    fn header_mismatch_is_detected() {
        let dir = tempfile::tempdir().unwrap();
        let codes: Vec<u128> = vec![2, 3, 4];
        store_group(dir.path(), Family::Sl2, 5, &[0, 1], &codes).unwrap();
        // Same file interrogated with a different modulus: hard error.
        match load_group(dir.path(), Family::Sl2, 5, &[1, 1], 3) {
            Err(Error::Cache(msg)) => assert!(msg.contains("header")),
            other => panic!("expected cache error, got {other:?}"),
        }
    }

    #[test]
    fn truncated_file_is_detected() {
        let dir = tempfile::tempdir().unwrap();
        let codes: Vec<u128> = vec![2, 3, 4];
        store_group(dir.path(), Family::Sl3, 2, &[0, 1], &codes).unwrap();
        let path = group_cache_path(dir.path(), Family::Sl3, 2);
        let bytes = std::fs::read(&path).unwrap();
        std::fs::write(&path, &bytes[..bytes.len() - 7]).unwrap();
        assert!(matches!(
            load_group(dir.path(), Family::Sl3, 2, &[0, 1], 3),
            Err(Error::Cache(_))
        ));
    }

    #[test]
    fn unsorted_codes_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        store_group(dir.path(), Family::Sz, 8, &[1, 1, 0, 1], &[9, 3]).unwrap();
        assert!(matches!(
            load_group(dir.path(), Family::Sz, 8, &[1, 1, 0, 1], 2),
            Err(Error::Cache(_))
        ));
    }
}
