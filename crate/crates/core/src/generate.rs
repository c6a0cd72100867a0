//! Seeded instance families, from arithmetic progressions (doubling near 2)
//! to Sidon sets (doubling `(n+1)/2`).

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gap::{gap_enumerate, Gap};
use crate::primes::next_prime;
use crate::sets::IntegerSet;

/// Above this size Sidon sets come from the quadratic-residue construction
/// instead of the greedy sequence.
pub const GREEDY_SIDON_MAX: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Generator {
    Ap {
        #[serde(default)]
        start: i64,
        #[serde(default = "one")]
        step: i64,
    },
    GapSample {
        gap: Gap,
    },
    Sidon,
    RandomDense,
    RandomRange {
        lo: i64,
        hi: i64,
    },
}

fn one() -> i64 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    #[serde(flatten)]
    pub generator: Generator,
    pub n: usize,
    #[serde(default)]
    pub seed: u64,
}

pub fn generate(spec: &InstanceSpec, enum_cap: u128) -> Result<IntegerSet> {
    let n = spec.n;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let set = match &spec.generator {
        Generator::Ap { start, step } => ap(n, *start, *step)?,
        Generator::GapSample { gap } => {
            let (points, _) = gap_enumerate(gap, enum_cap)?;
            if points.len() < n {
                return Err(Error::Invalid(format!("GAP has {} distinct points, {n} requested", points.len())));
            }
            sample(&mut rng, points.len(), n).into_iter().map(|i| points.elements()[i]).collect()
        }
        Generator::Sidon => sidon(n)?,
        Generator::RandomDense => {
            let width = n.checked_mul(2).ok_or(Error::Overflow("random-dense range"))?;
            sample(&mut rng, width, n).into_iter().map(|i| i as i64).collect()
        }
        Generator::RandomRange { lo, hi } => {
            if hi < lo {
                return Err(Error::Invalid("random-range needs lo <= hi".into()));
            }
            let width = usize::try_from(hi.abs_diff(*lo) + 1).map_err(|_| Error::Overflow("random-range width"))?;
            if width < n {
                return Err(Error::Invalid(format!("range holds {width} values, {n} requested")));
            }
            sample(&mut rng, width, n).into_iter().map(|i| lo + i as i64).collect()
        }
    };
    debug_assert_eq!(set.len(), n);
    Ok(set)
}

pub fn ap(n: usize, start: i64, step: i64) -> Result<IntegerSet> {
    if step == 0 && n > 1 {
        return Err(Error::Invalid("AP step must be nonzero".into()));
    }
    (0..n as i64)
        .map(|i| i.checked_mul(step).and_then(|v| v.checked_add(start)).ok_or(Error::Overflow("AP element")))
        .collect()
}

/// Greedy sequence `1, 2, 4, 8, 13, …` for `n <= GREEDY_SIDON_MAX`, each
/// element the least one keeping all pairwise sums distinct; beyond
/// that the first `n` elements of `{2pk + (k² mod p)}` for the least prime
/// `p >= n`.
pub fn sidon(n: usize) -> Result<IntegerSet> {
    if n <= GREEDY_SIDON_MAX {
        Ok(greedy_sidon(n))
    } else {
        let p = next_prime(n as u64 - 1).ok_or(Error::NoPrime(n as u128))? as i64;
        (0..n as i64)
            .map(|k| {
                (2 * p)
                    .checked_mul(k)
                    .and_then(|v| v.checked_add(k * k % p))
                    .ok_or(Error::Overflow("Sidon element"))
            })
            .collect()
    }
}

fn greedy_sidon(n: usize) -> IntegerSet {
    let mut elems: Vec<i64> = Vec::with_capacity(n);
    let mut sums: Vec<bool> = Vec::new();
    let mut x = 0i64;
    while elems.len() < n {
        x += 1;
        let top = 2 * x as usize;
        if sums.len() <= top {
            sums.resize(2 * top + 2, false);
        }
        if sums[top] || elems.iter().any(|&a| sums[(a + x) as usize]) {
            continue;
        }
        for &a in &elems {
            sums[(a + x) as usize] = true;
        }
        sums[top] = true;
        elems.push(x);
    }
    IntegerSet::new(elems)
}
