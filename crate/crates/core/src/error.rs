use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: option target `{target}` is not a declared position")]
    UndeclaredTarget { line: usize, target: String },

    #[error("line {line}: position `{id}` declared twice")]
    DuplicatePosition { line: usize, id: String },

    #[error("line {line}: duplicate arc `{from}` -> `{to}`")]
    DuplicateArc { line: usize, from: String, to: String },

    #[error("graph has no positions")]
    EmptyGraph,

    #[error("product graph would have {size} positions (cap {cap})")]
    ProductTooLarge { size: usize, cap: usize },

    #[error("graph has {size} positions, enumeration bound is {bound}")]
    EnumerationBound { size: usize, bound: usize },

    #[error("not a rooted tree: {0}")]
    NotATree(String),

    #[error("tree is not available to depth {0}")]
    DepthUnavailable(usize),

    #[error("reduction consistency violated at level {level}: {detail}")]
    ReductionMismatch { level: usize, detail: String },

    #[error("k-stability characterisations disagree for k = {k}")]
    StabilityMismatch { k: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("argument {value} outside [0, 1]")]
    Domain { value: f64 },

    #[error("fixed-point iteration did not converge after {steps} steps (last step {last_delta:e})")]
    NoConvergence { steps: usize, last_delta: f64 },

    #[error("pgf `{tag}` is not draw-free (fixed-point gap {gap:e}); reduction is undefined")]
    NotDrawFree { tag: String, gap: f64 },

    #[error("level {level}: {source}")]
    AtLevel {
        level: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("predicate is constant on [{lo}, {hi}]")]
    ConstantPredicate { lo: f64, hi: f64 },

    #[error("predicate is not monotone on [{lo}, {hi}] (scan flips {flips} times)")]
    NonMonotone { lo: f64, hi: f64, flips: usize },

    #[error("family `{0}` cannot be sampled directly")]
    NotSamplable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
