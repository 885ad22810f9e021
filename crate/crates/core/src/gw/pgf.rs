//! Offspring distributions by their probability generating functions.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::fmt_num;

/// One-parameter families with closed-form generating functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// `e^{λ(s-1)}`, `λ > 0`.
    Poisson,
    /// `p_k = q^k (1-q)`, `q ∈ (0, 1)`.
    Geometric,
    /// `p_0 = 1-p`, `p_4 = p`, `p ∈ (0, 1)`.
    ZeroOrFour,
    /// `p_0 = 1-a`, `p_2 = p_10 = a/2`, `a ∈ (0, 1)`.
    Discontinuous,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 4] =
        [FamilyKind::Poisson, FamilyKind::Geometric, FamilyKind::ZeroOrFour, FamilyKind::Discontinuous];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Poisson => "poisson",
            FamilyKind::Geometric => "geometric",
            FamilyKind::ZeroOrFour => "zero-or-four",
            FamilyKind::Discontinuous => "discontinuous",
        }
    }

    pub fn pgf(self, param: f64) -> Result<Pgf> {
        let family = match self {
            FamilyKind::Poisson => Family::Poisson { lambda: param },
            FamilyKind::Geometric => Family::Geometric { q: param },
            FamilyKind::ZeroOrFour => Family::ZeroOrFour { p: param },
            FamilyKind::Discontinuous => Family::Discontinuous { a: param },
        };
        Pgf::new(family)
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "poisson" => Ok(FamilyKind::Poisson),
            "geometric" => Ok(FamilyKind::Geometric),
            "zero-or-four" | "0-or-4" => Ok(FamilyKind::ZeroOrFour),
            "discontinuous" => Ok(FamilyKind::Discontinuous),
            other => Err(Error::InvalidParameter(format!("unknown family `{other}`"))),
        }
    }
}

/// A base offspring distribution.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Poisson { lambda: f64 },
    Geometric { q: f64 },
    ZeroOrFour { p: f64 },
    Discontinuous { a: f64 },
    /// Explicit weights `p_0, p_1, ..., p_d`.
    Weights(Vec<f64>),
}

impl Family {
    fn validate(&self) -> Result<()> {
        let open_unit = |name: &str, v: f64| {
            if v > 0.0 && v < 1.0 {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!("{name} must lie in (0, 1), got {v}")))
            }
        };
        match self {
            Family::Poisson { lambda } => {
                if lambda.is_finite() && *lambda > 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParameter(format!("lambda must be positive, got {lambda}")))
                }
            }
            Family::Geometric { q } => open_unit("q", *q),
            Family::ZeroOrFour { p } => open_unit("p", *p),
            Family::Discontinuous { a } => open_unit("a", *a),
            Family::Weights(w) => {
                if w.is_empty() || w.iter().any(|&x| !x.is_finite() || x < 0.0) {
                    return Err(Error::InvalidParameter("weights must be non-negative".into()));
                }
                let total: f64 = w.iter().sum();
                if (total - 1.0).abs() > 1e-9 {
                    return Err(Error::InvalidParameter(format!("weights sum to {total}, not 1")));
                }
                if w[0] <= 0.0 {
                    return Err(Error::InvalidParameter("p0 must be positive".into()));
                }
                Ok(())
            }
        }
    }

    fn eval(&self, s: f64) -> f64 {
        match *self {
            Family::Poisson { lambda } => (lambda * (s - 1.0)).exp(),
            Family::Geometric { q } => (1.0 - q) / (1.0 - q * s),
            Family::ZeroOrFour { p } => (1.0 - p) + p * s.powi(4),
            Family::Discontinuous { a } => (1.0 - a) + 0.5 * a * (s * s + s.powi(10)),
            Family::Weights(ref w) => w.iter().rev().fold(0.0, |acc, &c| acc * s + c),
        }
    }

    fn derivative(&self, s: f64) -> f64 {
        match *self {
            Family::Poisson { lambda } => lambda * (lambda * (s - 1.0)).exp(),
            Family::Geometric { q } => (1.0 - q) * q / (1.0 - q * s).powi(2),
            Family::ZeroOrFour { p } => 4.0 * p * s.powi(3),
            Family::Discontinuous { a } => a * s + 5.0 * a * s.powi(9),
            Family::Weights(ref w) => w
                .iter()
                .enumerate()
                .skip(1)
                .rev()
                .fold(0.0, |acc, (k, &c)| acc * s + k as f64 * c),
        }
    }

    fn max_out_degree(&self) -> Option<u32> {
        match self {
            Family::Poisson { .. } | Family::Geometric { .. } => None,
            Family::ZeroOrFour { .. } => Some(4),
            Family::Discontinuous { .. } => Some(10),
            Family::Weights(w) => Some(w.iter().rposition(|&x| x > 0.0).unwrap_or(0) as u32),
        }
    }

    fn tag(&self) -> String {
        match self {
            Family::Poisson { lambda } => format!("poisson({})", fmt_num(*lambda)),
            Family::Geometric { q } => format!("geometric({})", fmt_num(*q)),
            Family::ZeroOrFour { p } => format!("zero-or-four({})", fmt_num(*p)),
            Family::Discontinuous { a } => format!("discontinuous({})", fmt_num(*a)),
            Family::Weights(w) => {
                let parts: Vec<String> = w.iter().map(|&x| fmt_num(x)).collect();
                format!("weights({})", parts.join(","))
            }
        }
    }
}

#[derive(Debug)]
enum Node {
    Base(Family),
    /// Offspring law of the N-children of an N-root, given the P-probability
    /// `p_position` of the source tree.
    Reduced { source: Pgf, p_position: f64 },
}

/// An evaluable generating function `φ(s) = Σ p_k s^k` on `[0, 1]`.
///
/// Reduced generating functions are kept as a chain over their source, so
/// evaluation stays exact for laws without finite support.
#[derive(Debug, Clone)]
pub struct Pgf {
    node: Arc<Node>,
    max_out_degree: Option<u32>,
    level: usize,
}

impl Pgf {
    pub fn new(family: Family) -> Result<Self> {
        family.validate()?;
        let max_out_degree = family.max_out_degree();
        Ok(Pgf { node: Arc::new(Node::Base(family)), max_out_degree, level: 0 })
    }

    pub fn poisson(lambda: f64) -> Result<Self> {
        Pgf::new(Family::Poisson { lambda })
    }

    pub fn geometric(q: f64) -> Result<Self> {
        Pgf::new(Family::Geometric { q })
    }

    pub fn zero_or_four(p: f64) -> Result<Self> {
        Pgf::new(Family::ZeroOrFour { p })
    }

    pub fn discontinuous(a: f64) -> Result<Self> {
        Pgf::new(Family::Discontinuous { a })
    }

    pub fn weights(w: Vec<f64>) -> Result<Self> {
        Pgf::new(Family::Weights(w))
    }

    /// `φ^{(1)}(s) = [φ(P + s(1-P)) - φ(s(1-P))] / (1-P)` over `source`.
    /// The caller is responsible for `p_position` being the P-probability
    /// of a draw-free source; see [`crate::gw::reduced_pgf`].
    pub(crate) fn reduced_unchecked(source: &Pgf, p_position: f64) -> Pgf {
        let max_out_degree = source.max_out_degree.map(|d| d.saturating_sub(1));
        Pgf {
            node: Arc::new(Node::Reduced { source: source.clone(), p_position }),
            max_out_degree,
            level: source.level + 1,
        }
    }

    pub fn eval(&self, s: f64) -> f64 {
        match &*self.node {
            Node::Base(f) => f.eval(s),
            Node::Reduced { source, p_position: p } => {
                let keep = 1.0 - p;
                (source.eval(p + s * keep) - source.eval(s * keep)) / keep
            }
        }
    }

    pub fn derivative(&self, s: f64) -> f64 {
        match &*self.node {
            Node::Base(f) => f.derivative(s),
            Node::Reduced { source, p_position: p } => {
                let keep = 1.0 - p;
                source.derivative(p + s * keep) - source.derivative(s * keep)
            }
        }
    }

    /// Offspring mean `φ'(1)`.
    pub fn mean(&self) -> f64 {
        self.derivative(1.0)
    }

    pub fn p0(&self) -> f64 {
        self.eval(0.0)
    }

    /// `None` when the support is unbounded.
    pub fn max_out_degree(&self) -> Option<u32> {
        self.max_out_degree
    }

    /// Number of reductions applied to the base family.
    pub fn level(&self) -> usize {
        self.level
    }

    /// The base family at the bottom of the chain.
    pub fn base(&self) -> &Family {
        match &*self.node {
            Node::Base(f) => f,
            Node::Reduced { source, .. } => source.base(),
        }
    }

    pub fn is_base(&self) -> bool {
        matches!(&*self.node, Node::Base(_))
    }

    /// Descriptor such as `reduced(poisson(2), P=0.426302751872)`.
    pub fn tag(&self) -> String {
        match &*self.node {
            Node::Base(f) => f.tag(),
            Node::Reduced { source, p_position } => {
                format!("reduced({}, P={})", source.tag(), fmt_num(*p_position))
            }
        }
    }
}

impl fmt::Display for Pgf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}
