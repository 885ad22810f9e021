//! Offspring draws keyed by vertex.
//!
//! Every vertex carries a 64-bit key; its child count is drawn from a
//! generator seeded by that key alone, and child `i` gets the key
//! `child_key(key, i)`. A tree is therefore a pure function of
//! `(seed, tree index)`, whichever vertices are visited and in what order.

use rand::Rng;
use rand::SeedableRng;
use rand_distr::weighted::WeightedAliasIndex;
use rand_distr::{Distribution, Geometric, Poisson};
use rand_pcg::Pcg64Mcg;

use crate::error::{Error, Result};
use crate::gw::{Family, Pgf};

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn mix(a: u64, b: u64) -> u64 {
    splitmix(a ^ splitmix(b))
}

/// Key of the root of tree number `tree` under `seed`.
pub fn root_key(seed: u64, tree: u64) -> u64 {
    mix(splitmix(seed), tree)
}

/// Key of child `i` of the vertex keyed `parent`.
pub fn child_key(parent: u64, i: u32) -> u64 {
    mix(parent, u64::from(i) + 1)
}

#[derive(Debug, Clone)]
enum Law {
    Poisson(Poisson<f64>),
    Geometric(Geometric),
    Table(WeightedAliasIndex<f64>),
}

/// Direct sampler for a base offspring law.
#[derive(Debug, Clone)]
pub struct OffspringSampler {
    law: Law,
    tag: String,
}

impl OffspringSampler {
    /// Reduced laws have no direct sampler and are rejected.
    pub fn new(phi: &Pgf) -> Result<Self> {
        if !phi.is_base() {
            return Err(Error::NotSamplable(phi.tag()));
        }
        let bad = |e: String| Error::InvalidParameter(e);
        let table = |w: Vec<f64>| WeightedAliasIndex::new(w).map(Law::Table).map_err(|e| bad(e.to_string()));
        let law = match *phi.base() {
            Family::Poisson { lambda } => Law::Poisson(Poisson::new(lambda).map_err(|e| bad(e.to_string()))?),
            Family::Geometric { q } => Law::Geometric(Geometric::new(1.0 - q).map_err(|e| bad(e.to_string()))?),
            Family::ZeroOrFour { p } => table(vec![1.0 - p, 0.0, 0.0, 0.0, p])?,
            Family::Discontinuous { a } => {
                let mut w = vec![0.0; 11];
                w[0] = 1.0 - a;
                w[2] = a / 2.0;
                w[10] = a / 2.0;
                table(w)?
            }
            Family::Weights(ref w) => table(w.clone())?,
        };
        Ok(OffspringSampler { law, tag: phi.tag() })
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        match &self.law {
            Law::Poisson(d) => d.sample(rng) as u32,
            Law::Geometric(d) => d.sample(rng).min(u64::from(u32::MAX)) as u32,
            Law::Table(d) => d.sample(rng) as u32,
        }
    }

    /// Child count of the vertex keyed `key`.
    pub fn count(&self, key: u64) -> u32 {
        self.sample(&mut Pcg64Mcg::seed_from_u64(key))
    }
}
