//! `SF4` binary snapshots.
//!
//! Layout (little-endian): magic `b"SF4\0"`, `u32` n_per_axis, `f64`
//! box_length, `f64` time, `u8` real_valued_flag, then `n^3` modes in
//! row-major order, each as four interleaved complex components
//! `(re, im)` of `f64`.

use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::SpectralField4;
use crate::grid::GridSpec;

pub const MAGIC: [u8; 4] = *b"SF4\0";
pub const HEADER_LEN: usize = 4 + 4 + 8 + 8 + 1;

pub fn encode(field: &SpectralField4, time: f64) -> Vec<u8> {
    let g = field.grid;
    let mut out = Vec::with_capacity(HEADER_LEN + g.len() * 64);
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&(g.n_per_axis() as u32).to_le_bytes());
    out.extend_from_slice(&g.box_length().to_le_bytes());
    out.extend_from_slice(&time.to_le_bytes());
    out.push(field.real_valued as u8);
    for f in 0..g.len() {
        for c in &field.comps {
            out.extend_from_slice(&c[f].re.to_le_bytes());
            out.extend_from_slice(&c[f].im.to_le_bytes());
        }
    }
    out
}

fn f64_at(bytes: &[u8], at: usize) -> f64 {
    f64::from_le_bytes(bytes[at..at + 8].try_into().expect("8 bytes"))
}

pub fn decode(bytes: &[u8]) -> Result<(SpectralField4, f64)> {
    if bytes.len() < HEADER_LEN {
        return Err(Error::Snapshot(format!("{} bytes is shorter than the header", bytes.len())));
    }
    if bytes[..4] != MAGIC {
        return Err(Error::Snapshot("bad magic".into()));
    }
    let n = u32::from_le_bytes(bytes[4..8].try_into().expect("4 bytes")) as usize;
    let box_length = f64_at(bytes, 8);
    let time = f64_at(bytes, 16);
    let flag = match bytes[24] {
        0 => false,
        1 => true,
        b => return Err(Error::Snapshot(format!("bad real_valued_flag byte {b}"))),
    };
    let grid = GridSpec::new(n, box_length).map_err(|e| Error::Snapshot(e.to_string()))?;
    let expected = HEADER_LEN + grid.len() * 64;
    if bytes.len() != expected {
        return Err(Error::Snapshot(format!("expected {expected} bytes, got {}", bytes.len())));
    }
    let mut field = SpectralField4::zeros(grid);
    let mut at = HEADER_LEN;
    for f in 0..grid.len() {
        for c in field.comps.iter_mut() {
            c[f] = Complex64::new(f64_at(bytes, at), f64_at(bytes, at + 8));
            at += 16;
        }
    }
    field.real_valued = flag;
    Ok((field, time))
}

pub fn write_snapshot(path: &Path, field: &SpectralField4, time: f64) -> Result<()> {
    let mut file = std::fs::File::create(path)?;
    file.write_all(&encode(field, time))?;
    Ok(())
}

pub fn read_snapshot(path: &Path) -> Result<(SpectralField4, f64)> {
    let mut bytes = Vec::new();
    std::fs::File::open(path)?.read_to_end(&mut bytes)?;
    decode(&bytes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_layout_is_fixed() {
        let g = GridSpec::new(4, 2.5).unwrap();
        let mut field = SpectralField4::zeros(g);
        field.comps[3][1] = Complex64::new(1.5, -2.0);
        field.real_valued = false;
        let bytes = encode(&field, 0.75);
        assert_eq!(&bytes[..4], b"SF4\0");
        assert_eq!(&bytes[4..8], &4u32.to_le_bytes());
        assert_eq!(&bytes[8..16], &2.5f64.to_le_bytes());
        assert_eq!(&bytes[16..24], &0.75f64.to_le_bytes());
        assert_eq!(bytes[24], 0);
        // mode 1, component 3 -> after 4 complex of mode 0 and 3 of mode 1
        let at = HEADER_LEN + (4 + 3) * 16;
        assert_eq!(&bytes[at..at + 8], &1.5f64.to_le_bytes());
        assert_eq!(&bytes[at + 8..at + 16], &(-2.0f64).to_le_bytes());
        assert_eq!(bytes.len(), HEADER_LEN + 64 * 64);
        let (back, t) = decode(&bytes).unwrap();
        assert_eq!(back, field);
        assert_eq!(t, 0.75);
    }

    #[test]
    fn rejects_garbage() {
        assert!(decode(b"nope").is_err());
        let g = GridSpec::new(4, 1.0).unwrap();
        let mut bytes = encode(&SpectralField4::zeros(g), 0.0);
        bytes.pop();
        assert!(decode(&bytes).is_err());
        bytes[0] = b'X';
        assert!(decode(&bytes).is_err());
    }
}
