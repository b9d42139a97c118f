//! Binary dump of an assembled system for diffing against other
//! implementations: the 8-byte magic `TFLAP001`, then `diag`,
//! `toeplitz_col` and `F`, each `M` little-endian `f64`. `M` follows from the
//! file length.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use crate::error::{Error, Result};

pub const MAGIC: &[u8; 8] = b"TFLAP001";

/// A dumped system.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemDump {
    pub diag: Vec<f64>,
    pub toeplitz_col: Vec<f64>,
    pub rhs: Vec<f64>,
}

pub fn write_system<W: Write>(mut out: W, diag: &[f64], toeplitz_col: &[f64], rhs: &[f64]) -> io::Result<()> {
    assert!(diag.len() == toeplitz_col.len() && diag.len() == rhs.len());
    out.write_all(MAGIC)?;
    for v in diag.iter().chain(toeplitz_col).chain(rhs) {
        out.write_all(&v.to_le_bytes())?;
    }
    out.flush()
}

pub fn dump_system(path: &Path, diag: &[f64], toeplitz_col: &[f64], rhs: &[f64]) -> Result<()> {
    let file = io::BufWriter::new(fs::File::create(path)?);
    Ok(write_system(file, diag, toeplitz_col, rhs)?)
}

pub fn parse_system(bytes: &[u8]) -> Result<SystemDump> {
    let body = bytes
        .strip_prefix(MAGIC.as_slice())
        .ok_or_else(|| Error::Parse("missing TFLAP001 header".into()))?;
    if body.len() % 24 != 0 {
        return Err(Error::Parse(format!("body of {} bytes is not 3 M doubles", body.len())));
    }
    let values: Vec<f64> = body
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
        .collect();
    let m = values.len() / 3;
    Ok(SystemDump {
        diag: values[..m].to_vec(),
        toeplitz_col: values[m..2 * m].to_vec(),
        rhs: values[2 * m..].to_vec(),
    })
}

pub fn load_system(path: &Path) -> Result<SystemDump> {
    parse_system(&fs::read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut buf = Vec::new();
        write_system(&mut buf, &[1.0, 2.0], &[0.0, -0.5], &[3.5, f64::MIN_POSITIVE]).unwrap();
        assert_eq!(buf.len(), 8 + 48);
        assert_eq!(&buf[..8], MAGIC);
        let back = parse_system(&buf).unwrap();
        assert_eq!(back.diag, vec![1.0, 2.0]);
        assert_eq!(back.toeplitz_col, vec![0.0, -0.5]);
        assert_eq!(back.rhs, vec![3.5, f64::MIN_POSITIVE]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_system(b"TFLAP002").is_err());
        assert!(parse_system(b"TFLAP001\0\0\0\0\0\0\0\0").is_err());
    }
}
