//! Tabulated `h⁽ᵏ⁾(s) - s`.

use super::fixed::h_map;
use super::pgf::Pgf;
use super::profile::reduce_chain;
use crate::error::{Error, Result};

/// `samples` evenly spaced points `(s, h⁽ˡᵉᵛᵉˡ⁾(s) - s)` on `[0, 1]`. Every
/// level below `level` must be draw-free.
pub fn curve_data(phi: &Pgf, level: usize, samples: usize) -> Result<Vec<(f64, f64)>> {
    if samples < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 samples, got {samples}")));
    }
    let target = reduce_chain(phi, level)?;
    (0..samples)
        .map(|i| {
            let s = i as f64 / (samples - 1) as f64;
            Ok((s, h_map(&target, s)? - s))
        })
        .collect()
}

/// Sign changes along a tabulated curve.
pub fn crossings(points: &[(f64, f64)]) -> usize {
    points.windows(2).filter(|w| (w[0].1 > 0.0) != (w[1].1 > 0.0)).count()
}
