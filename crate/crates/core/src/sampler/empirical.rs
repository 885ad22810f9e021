//! Frequencies of certified root values over many sampled trees.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::lazy::{LazyStats, LazyTree};
use super::offspring::OffspringSampler;
use super::tree::CertifiedValue;
use crate::error::{Error, Result};
use crate::gw::{fixed_points, Pgf};
use crate::report::{ser_sig, ser_sig_opt};
use crate::value::SGValue;

/// Default search budget per tree.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000;

/// Wilson score interval at 95%.
pub fn wilson_interval(count: usize, n: usize) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054;
    let n = n as f64;
    let p = count as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

#[derive(Debug, Clone, Serialize)]
pub struct ValueStat {
    pub count: usize,
    #[serde(serialize_with = "ser_sig")]
    pub freq: f64,
    #[serde(serialize_with = "ser_sig")]
    pub ci_lo: f64,
    #[serde(serialize_with = "ser_sig")]
    pub ci_hi: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Analytic {
    #[serde(rename = "P", serialize_with = "ser_sig")]
    pub p: f64,
    #[serde(rename = "N", serialize_with = "ser_sig")]
    pub n: f64,
    #[serde(rename = "D", serialize_with = "ser_sig")]
    pub d: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EmpiricalDistribution {
    pub family: String,
    pub seed: u64,
    pub depth_cap: u32,
    pub n_trees: usize,
    /// Certified values keyed by their text form (`"0"`, `"rank>20"`, ...).
    pub values: BTreeMap<String, ValueStat>,
    pub analytic: Analytic,
    /// Observed frequency of `Finite(0)` minus analytic `P`, in binomial
    /// standard deviations.
    #[serde(serialize_with = "ser_sig_opt")]
    pub p_zscore: Option<f64>,
    pub node_budget: u64,
    /// Trees whose search ran out of budget before the full radius.
    pub budget_exhausted: usize,
    /// Trees whose budget ran out before membership in `P_n` was settled.
    /// When this is zero the frequency of `"0"` is exact.
    pub zero_test_exhausted: usize,
}

impl EmpiricalDistribution {
    pub fn count(&self, key: &str) -> usize {
        self.values.get(key).map_or(0, |s| s.count)
    }

    pub fn freq(&self, key: &str) -> f64 {
        self.values.get(key).map_or(0.0, |s| s.freq)
    }
}

/// Certified root value of tree `i` of the stream `seed` at `depth_cap`.
pub fn certify_tree(sampler: &OffspringSampler, depth_cap: u32, seed: u64, i: u64, budget: u64) -> (CertifiedValue, LazyStats) {
    let mut tree = LazyTree::new(sampler, seed, i, budget);
    tree.certified_root_value(depth_cap / 2)
}

/// Samples `n_trees` trees and tabulates their certified root values.
/// The result does not depend on the number of worker threads.
pub fn empirical_distribution(phi: &Pgf, depth_cap: u32, n_trees: usize, seed: u64) -> Result<EmpiricalDistribution> {
    empirical_distribution_with(phi, depth_cap, n_trees, seed, DEFAULT_NODE_BUDGET)
}

pub fn empirical_distribution_with(
    phi: &Pgf,
    depth_cap: u32,
    n_trees: usize,
    seed: u64,
    budget: u64,
) -> Result<EmpiricalDistribution> {
    if n_trees == 0 {
        return Err(Error::InvalidParameter("need at least one tree".into()));
    }
    let sampler = OffspringSampler::new(phi)?;
    let results: Vec<(CertifiedValue, LazyStats)> = (0..n_trees as u64)
        .into_par_iter()
        .map(|i| certify_tree(&sampler, depth_cap, seed, i, budget))
        .collect();

    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let (mut exhausted, mut zero_exhausted) = (0, 0);
    for (v, stats) in &results {
        *counts.entry(v.key()).or_default() += 1;
        exhausted += usize::from(stats.budget_exhausted);
        zero_exhausted += usize::from(stats.zero_pass_exhausted);
    }
    let values = counts
        .into_iter()
        .map(|(k, count)| {
            let (ci_lo, ci_hi) = wilson_interval(count, n_trees);
            (k, ValueStat { count, freq: count as f64 / n_trees as f64, ci_lo, ci_hi })
        })
        .collect::<BTreeMap<_, _>>();

    let rep = fixed_points(phi)?;
    let zero = SGValue::Finite(0).to_string();
    let f0 = values.get(&zero).map_or(0.0, |s| s.freq);
    let sd = (rep.p * (1.0 - rep.p) / n_trees as f64).sqrt();
    Ok(EmpiricalDistribution {
        family: phi.tag(),
        seed,
        depth_cap,
        n_trees,
        values,
        analytic: Analytic { p: rep.p, n: rep.n, d: rep.d },
        p_zscore: (sd > 0.0).then(|| (f0 - rep.p) / sd),
        node_budget: budget,
        budget_exhausted: exhausted,
        zero_test_exhausted: zero_exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_brackets_the_estimate() {
        let (lo, hi) = wilson_interval(30, 100);
        assert!(lo < 0.3 && 0.3 < hi);
        assert!((lo - 0.2189).abs() < 1e-3 && (hi - 0.3958).abs() < 1e-3);
        assert_eq!(wilson_interval(0, 0), (0.0, 1.0));
    }

    #[test]
    fn thread_count_does_not_matter() {
        let phi = Pgf::poisson(1.7).unwrap();
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| empirical_distribution(&phi, 12, 500, 3).unwrap());
        let b = four.install(|| empirical_distribution(&phi, 12, 500, 3).unwrap());
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn json_metadata() {
        let d = empirical_distribution(&Pgf::zero_or_four(0.4).unwrap(), 10, 200, 1).unwrap();
        let v = serde_json::to_value(&d).unwrap();
        assert_eq!(v["seed"], 1);
        assert_eq!(v["depth_cap"], 10);
        assert!(v["analytic"]["P"].is_number());
        assert!(v["values"]["0"]["ci_lo"].is_number());
        assert!(empirical_distribution(&Pgf::poisson(1.0).unwrap(), 4, 0, 1).is_err());
    }
}
