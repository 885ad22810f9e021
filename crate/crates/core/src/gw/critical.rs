//! Bisection for the parameter at which draws first appear.

use serde::Serialize;

use super::pgf::FamilyKind;
use super::profile::stability_profile;
use crate::error::{Error, Result};
use crate::report::ser_sig;

/// Points in the monotonicity scan that precedes bisection.
pub const SCAN_POINTS: usize = 32;

#[derive(Debug, Clone, Serialize)]
pub struct CriticalReport {
    pub family: String,
    pub level: usize,
    #[serde(serialize_with = "ser_sig")]
    pub value: f64,
    /// Final bracket.
    #[serde(serialize_with = "ser_sig")]
    pub lo: f64,
    #[serde(serialize_with = "ser_sig")]
    pub hi: f64,
    /// Whether the chain has draws at the upper end of the search interval.
    pub draws_above: bool,
    pub bisection_steps: usize,
}

/// True if the reduction chain of `family(param)` has draws at some level
/// up to `level`.
pub fn draws_within(family: FamilyKind, param: f64, level: usize) -> Result<bool> {
    Ok(stability_profile(&family.pgf(param)?, level)?.has_draws())
}

/// Locates, to within `tol`, the parameter in `[lo, hi]` where
/// [`draws_within`] switches value.
pub fn critical_parameter(family: FamilyKind, level: usize, lo: f64, hi: f64, tol: f64) -> Result<CriticalReport> {
    let valid = lo < hi && tol > 0.0;
    if !valid {
        return Err(Error::InvalidParameter(format!("need lo < hi and tol > 0, got [{lo}, {hi}], tol {tol}")));
    }
    let pred = |x: f64| draws_within(family, x, level);
    let grid: Vec<f64> = (0..SCAN_POINTS)
        .map(|i| lo + (hi - lo) * i as f64 / (SCAN_POINTS - 1) as f64)
        .collect();
    let marks = grid.iter().map(|&x| pred(x)).collect::<Result<Vec<bool>>>()?;
    let flips: Vec<usize> = (1..SCAN_POINTS).filter(|&i| marks[i] != marks[i - 1]).collect();
    match flips.len() {
        0 => return Err(Error::ConstantPredicate { lo, hi }),
        1 => {}
        n => return Err(Error::NonMonotone { lo, hi, flips: n }),
    }
    let i = flips[0];
    let (mut a, mut b) = (grid[i - 1], grid[i]);
    let low_mark = marks[i - 1];
    let mut steps = 0;
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if pred(mid)? == low_mark {
            a = mid;
        } else {
            b = mid;
        }
        steps += 1;
    }
    Ok(CriticalReport {
        family: family.name().to_string(),
        level,
        value: 0.5 * (a + b),
        lo: a,
        hi: b,
        draws_above: marks[SCAN_POINTS - 1],
        bisection_steps: steps,
    })
}
