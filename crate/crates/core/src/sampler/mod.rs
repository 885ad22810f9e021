//! Monte Carlo Galton-Watson game trees with certified root values.

mod empirical;
mod lazy;
mod offspring;
mod tree;

pub use empirical::{
    certify_tree, empirical_distribution, empirical_distribution_with, wilson_interval, Analytic,
    EmpiricalDistribution, ValueStat, DEFAULT_NODE_BUDGET,
};
pub use lazy::{truncated_is_p, truncated_root_is_p, LazyStats, LazyTree};
pub use offspring::{child_key, root_key, OffspringSampler};
pub use tree::{certified_root_value, sample_tree, value_feasible, CertifiedValue, SampledTree};
