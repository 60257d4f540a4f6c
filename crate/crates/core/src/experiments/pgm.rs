use std::path::Path;

use crate::error::{check_dim, Error, Result};

/// Binary 8-bit PGM (P5). Values are mapped linearly from `range` onto
/// `0..=255` and clamped.
pub fn pgm_bytes(data: &[f64], height: usize, width: usize, range: (f64, f64)) -> Result<Vec<u8>> {
    check_dim(height * width, data.len())?;
    let (lo, hi) = range;
    let span = if hi > lo { hi - lo } else { 1.0 };
    let mut out = format!("P5\n{width} {height}\n255\n").into_bytes();
    out.extend(data.iter().map(|&v| {
        let s = ((v - lo) / span * 255.0).round();
        s.clamp(0.0, 255.0) as u8
    }));
    Ok(out)
}

pub fn write_pgm(
    path: impl AsRef<Path>,
    data: &[f64],
    height: usize,
    width: usize,
    range: (f64, f64),
) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, pgm_bytes(data, height, width, range)?).map_err(|e| Error::io(path, e))
}
