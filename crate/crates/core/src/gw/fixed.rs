//! Fixed points of `h(s) = 1 - φ(1 - φ(s))`.
//!
//! Let `u` be the probability that the root is an N-position. A root is P
//! exactly when every child is N, so `P = φ(u)`, and it is N exactly when
//! some child is P, so `u = 1 - φ(1 - P) = h(u)`. Iterating from `0`
//! counts wins for the first player in a bounded number of moves and climbs
//! to the smallest fixed point, which is `N`. Iterating from `1` descends to
//! the largest fixed point, which is `1 - P`. Draws carry the mass between.

use serde::Serialize;

use super::pgf::Pgf;
use crate::error::{Error, Result};
use crate::report::{ser_sig, ser_sig_vec};

/// Root scan resolution on each side of the central fixed point.
pub const GRID_POINTS: usize = 2048;
/// Gap between extreme fixed points below which the law is draw-free.
pub const GAP_TOLERANCE: f64 = 1e-8;
/// Gaps below this (and at least [`GAP_TOLERANCE`]) are flagged as marginal.
pub const MARGINAL_GAP: f64 = 1e-5;
/// Step count after which [`iterate_h`] gives up.
pub const MAX_ITERATIONS: usize = 1_000_000;

#[derive(Debug, Clone, Serialize)]
pub struct FixedPointReport {
    /// Smallest fixed point of `h`; equals `N`.
    #[serde(serialize_with = "ser_sig")]
    pub smallest: f64,
    /// Largest fixed point of `h`; equals `1 - P`.
    #[serde(serialize_with = "ser_sig")]
    pub largest: f64,
    /// The unique fixed point of `1 - φ`, always a fixed point of `h`.
    #[serde(serialize_with = "ser_sig")]
    pub sstar: f64,
    #[serde(serialize_with = "ser_sig_vec")]
    pub roots: Vec<f64>,
    #[serde(rename = "P", serialize_with = "ser_sig")]
    pub p: f64,
    #[serde(rename = "N", serialize_with = "ser_sig")]
    pub n: f64,
    #[serde(rename = "D", serialize_with = "ser_sig")]
    pub d: f64,
    pub draw_free: bool,
    pub marginal: bool,
}

impl FixedPointReport {
    /// `largest - smallest`, the draw probability.
    pub fn gap(&self) -> f64 {
        self.largest - self.smallest
    }
}

fn check_domain(s: f64) -> Result<()> {
    if (0.0..=1.0).contains(&s) {
        Ok(())
    } else {
        Err(Error::Domain { value: s })
    }
}

/// `h(s) = 1 - φ(1 - φ(s))`.
pub fn h_map(phi: &Pgf, s: f64) -> Result<f64> {
    check_domain(s)?;
    Ok(h(phi, s))
}

fn h(phi: &Pgf, s: f64) -> f64 {
    1.0 - phi.eval(1.0 - phi.eval(s))
}

/// `h'(s) = φ'(1 - φ(s)) φ'(s)`.
pub fn h_derivative(phi: &Pgf, s: f64) -> Result<f64> {
    check_domain(s)?;
    Ok(phi.derivative(1.0 - phi.eval(s)) * phi.derivative(s))
}

/// Bisection on a continuous `f` with `f(lo)` and `f(hi)` of opposite sign
/// (zero allowed), run until the bracket stops shrinking.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let lo_positive = f(lo) > 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f(mid);
        if v == 0.0 {
            return mid;
        }
        if (v > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The unique root of the strictly decreasing `1 - φ(s) - s` on `[0, 1]`.
pub fn sstar(phi: &Pgf) -> f64 {
    let f = |s: f64| 1.0 - phi.eval(s) - s;
    if f(0.0) <= 0.0 {
        return 0.0;
    }
    bisect(f, 0.0, 1.0)
}

/// Golden-section search for the extremum of `g` on `[a, b]`, minimising when
/// `minimise` is set. Returns the abscissa.
fn extremum(g: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, minimise: bool) -> f64 {
    let sign = if minimise { 1.0 } else { -1.0 };
    let f = |s: f64| sign * g(s);
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Roots of `g` among the sample points `xs`: sign changes between
/// neighbours, plus pairs of roots hidden between samples around a discrete
/// extremum that fails to cross zero on the grid.
fn scan_roots(g: &impl Fn(f64) -> f64, xs: &[f64], roots: &mut Vec<f64>) {
    let ys: Vec<f64> = xs.iter().map(|&x| g(x)).collect();
    for i in 0..xs.len() {
        if ys[i] == 0.0 {
            roots.push(xs[i]);
        }
        if i + 1 < xs.len() && ys[i] * ys[i + 1] < 0.0 {
            roots.push(bisect(g, xs[i], xs[i + 1]));
        }
        if i >= 1 && i + 1 < xs.len() {
            let (l, c, r) = (ys[i - 1], ys[i], ys[i + 1]);
            let dip = c > 0.0 && l > 0.0 && r > 0.0 && c <= l && c <= r;
            let bump = c < 0.0 && l < 0.0 && r < 0.0 && c >= l && c >= r;
            if dip || bump {
                let m = extremum(g, xs[i - 1], xs[i + 1], dip);
                let gm = g(m);
                if (dip && gm <= 0.0) || (bump && gm >= 0.0) {
                    roots.push(bisect(g, xs[i - 1], m));
                    roots.push(bisect(g, m, xs[i + 1]));
                }
            }
        }
    }
}

/// Moves `eps` towards zero until `g(sstar + dir * eps)` has the sign the
/// slope `h'(s*) - 1 > 0` predicts, so the grid next to `s*` sees the
/// neighbouring roots.
fn probe_offset(g: &impl Fn(f64) -> f64, sstar: f64, dir: f64, start: f64) -> f64 {
    let mut eps = start;
    for _ in 0..80 {
        let x = sstar + dir * eps;
        if (0.0..=1.0).contains(&x) && g(x) * dir > 0.0 {
            return eps;
        }
        eps *= 0.5;
    }
    start
}

/// All fixed points of `h` in `[0, 1]`, and the outcome probabilities.
///
/// Fixed points are bracketed by a grid scan on either side of `s*` and
/// refined by bisection, which stays accurate next to critical parameters
/// where plain iteration of `h` slows to a crawl.
pub fn fixed_points(phi: &Pgf) -> Result<FixedPointReport> {
    let g = |s: f64| h(phi, s) - s;
    let s0 = sstar(phi);
    let slope = phi.derivative(s0).powi(2);
    let mut roots = vec![s0];

    if s0 > 0.0 {
        let step = s0 / GRID_POINTS as f64;
        let eps = if slope > 1.0 { probe_offset(&g, s0, -1.0, step) } else { step };
        let end = s0 - eps;
        let mut xs: Vec<f64> = (0..GRID_POINTS).map(|i| i as f64 * step).filter(|&x| x < end).collect();
        xs.push(end);
        scan_roots(&g, &xs, &mut roots);
    }
    if s0 < 1.0 {
        let step = (1.0 - s0) / GRID_POINTS as f64;
        let eps = if slope > 1.0 { probe_offset(&g, s0, 1.0, step) } else { step };
        let start = s0 + eps;
        let mut xs = vec![start];
        xs.extend((1..=GRID_POINTS).map(|i| s0 + i as f64 * step).filter(|&x| x > start && x <= 1.0));
        scan_roots(&g, &xs, &mut roots);
    }

    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let smallest = roots[0];
    let largest = roots[roots.len() - 1];
    let gap = largest - smallest;
    let draw_free = gap < GAP_TOLERANCE;
    let p = 1.0 - largest;
    let n = smallest;
    Ok(FixedPointReport {
        smallest,
        largest,
        sstar: s0,
        roots,
        p,
        n,
        d: 1.0 - n - p,
        draw_free,
        marginal: (GAP_TOLERANCE..=MARGINAL_GAP).contains(&gap),
    })
}

/// Iterates `h` from `start` until successive values differ by less than
/// `tol`. Returns the limit and the number of steps.
pub fn iterate_h(phi: &Pgf, start: f64, tol: f64) -> Result<(f64, usize)> {
    check_domain(start)?;
    let mut s = start;
    let mut delta = f64::INFINITY;
    for step in 1..=MAX_ITERATIONS {
        let next = h(phi, s);
        delta = (next - s).abs();
        s = next;
        if delta < tol {
            return Ok((s, step));
        }
    }
    Err(Error::NoConvergence { steps: MAX_ITERATIONS, last_delta: delta })
}

/// `P_0, ..., P_{n_max}`, where `P_n` is the probability that the second
/// player can force a win within `2n` moves: `P_0 = φ(0)` and
/// `P_n = φ(1 - φ(1 - P_{n-1}))`. Nondecreasing with limit `P`.
pub fn pn_sequence(phi: &Pgf, n_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut p = phi.p0();
    out.push(p);
    for _ in 0..n_max {
        p = phi.eval(1.0 - phi.eval(1.0 - p));
        out.push(p);
    }
    out
}
