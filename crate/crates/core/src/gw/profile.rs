//! Chains of reductions `φ, φ⁽¹⁾, φ⁽²⁾, ...` and where they stop.

use serde::Serialize;

use super::fixed::{fixed_points, FixedPointReport};
use super::pgf::Pgf;
use crate::error::{Error, Result};
use crate::report::ser_sig;

/// Offspring law of the N-children of an N-root, conditioned on the root
/// being N. Only defined for draw-free laws.
pub fn reduced_pgf(phi: &Pgf) -> Result<Pgf> {
    let rep = fixed_points(phi)?;
    reduced_with(phi, &rep)
}

fn reduced_with(phi: &Pgf, rep: &FixedPointReport) -> Result<Pgf> {
    if !rep.draw_free {
        return Err(Error::NotDrawFree { tag: phi.tag(), gap: rep.gap() });
    }
    if rep.p >= 1.0 {
        return Err(Error::InvalidParameter(format!("`{phi}` has P = 1; no N-roots to condition on")));
    }
    Ok(Pgf::reduced_unchecked(phi, rep.p))
}

/// `φ⁽ᵏ⁾`, failing with the level at which a draw blocks the chain.
pub fn reduce_chain(phi: &Pgf, k: usize) -> Result<Pgf> {
    let mut cur = phi.clone();
    for level in 0..k {
        cur = reduced_pgf(&cur).map_err(|e| Error::AtLevel { level, source: Box::new(e) })?;
    }
    Ok(cur)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiniteReason {
    /// Mean offspring at most one: the tree is almost surely finite.
    Subcritical,
    /// At most one child per vertex: a path, finite since `p_0 > 0`.
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Verdict {
    /// Every value is finite almost surely; the chain stopped at `level`.
    AllFiniteRank { reason: FiniteReason, level: usize },
    /// Levels `0..=level` are draw-free, so the tree is `level`-stable.
    StableUpTo { level: usize },
    /// The first level with a positive draw probability.
    DrawsAtLevel { level: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub pgf: String,
    #[serde(rename = "P", serialize_with = "ser_sig")]
    pub p: f64,
    #[serde(rename = "D", serialize_with = "ser_sig")]
    pub d: f64,
    #[serde(serialize_with = "ser_sig")]
    pub mean: f64,
    pub max_out_degree: Option<u32>,
    pub draw_free: bool,
    pub marginal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct StabilityProfile {
    pub levels: Vec<LevelReport>,
    pub verdict: Verdict,
    pub max_level_checked: usize,
}

impl StabilityProfile {
    /// True if some level up to the last one checked has draws.
    pub fn has_draws(&self) -> bool {
        matches!(self.verdict, Verdict::DrawsAtLevel { .. })
    }
}

/// Runs the reduction chain up to `max_k` levels.
pub fn stability_profile(phi: &Pgf, max_k: usize) -> Result<StabilityProfile> {
    let mut levels = Vec::new();
    let mut cur = phi.clone();
    for level in 0..=max_k {
        let at = |e: Error| Error::AtLevel { level, source: Box::new(e) };
        let rep = fixed_points(&cur).map_err(at)?;
        let mean = cur.mean();
        levels.push(LevelReport {
            level,
            pgf: cur.tag(),
            p: rep.p,
            d: rep.d,
            mean,
            max_out_degree: cur.max_out_degree(),
            draw_free: rep.draw_free,
            marginal: rep.marginal,
        });
        let stop = if mean <= 1.0 {
            Some(Verdict::AllFiniteRank { reason: FiniteReason::Subcritical, level })
        } else if cur.max_out_degree().is_some_and(|d| d <= 1) {
            Some(Verdict::AllFiniteRank { reason: FiniteReason::Degenerate, level })
        } else if !rep.draw_free {
            Some(Verdict::DrawsAtLevel { level })
        } else if level == max_k {
            Some(Verdict::StableUpTo { level })
        } else {
            None
        };
        if let Some(verdict) = stop {
            return Ok(StabilityProfile { levels, verdict, max_level_checked: level });
        }
        cur = reduced_with(&cur, &rep).map_err(at)?;
    }
    unreachable!("the last level always yields a verdict")
}
