//! Reachable-value dynamic programming.
//!
//! Variables are processed last to first, trying values in increasing order,
//! and only the first writer of each reachable value is kept. Walking the
//! stored choices back from the target therefore yields the lexicographically
//! least solution.

use std::hash::Hash;

use indexmap::IndexMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ilp::{BilpInstance, HbilpInstance};
use crate::matrix::{Outcome, SolveWitness};

/// Table growth, one entry per processed variable.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DpStats {
    pub layer_sizes: Vec<usize>,
    pub max_layer: usize,
}

/// One table layer: value -> (index of parent in previous layer, choice).
type Layer<K> = IndexMap<K, (usize, i64)>;

struct Run<K> {
    layers: Vec<Layer<K>>,
    stats: DpStats,
}

fn run<K: Hash + Eq + Clone>(
    start: K,
    n: usize,
    choices: impl Fn(usize) -> std::ops::RangeInclusive<i64>,
    step: impl Fn(&K, usize, i64) -> Result<K>,
    table_cap: usize,
) -> Result<Run<K>> {
    let mut first: Layer<K> = IndexMap::new();
    first.insert(start, (usize::MAX, 0));
    let mut layers = vec![first];
    let mut stats = DpStats::default();
    for var in (0..n).rev() {
        let prev = layers.last().expect("nonempty");
        let mut next: Layer<K> = IndexMap::with_capacity(prev.len());
        for c in choices(var) {
            for (idx, key) in prev.keys().enumerate() {
                let k = step(key, var, c)?;
                if !next.contains_key(&k) {
                    next.insert(k, (idx, c));
                    if next.len() > table_cap {
                        return Err(Error::CapExceeded {
                            what: "DP table layer",
                            needed: next.len() as u128,
                            cap: table_cap as u128,
                        });
                    }
                }
            }
        }
        stats.layer_sizes.push(next.len());
        stats.max_layer = stats.max_layer.max(next.len());
        layers.push(next);
    }
    Ok(Run { layers, stats })
}

impl<K: Hash + Eq> Run<K> {
    /// Assignment x_0..x_{n-1} reaching `target`, if reachable.
    fn witness(&self, target: &K) -> Option<Vec<i64>> {
        let n = self.layers.len() - 1;
        let mut idx = self.layers[n].get_index_of(target)?;
        let mut x = Vec::with_capacity(n);
        // layer n holds variable 0, layer 1 holds variable n-1
        for layer in (1..=n).rev() {
            let (_, &(parent, c)) = self.layers[layer].get_index(idx).expect("valid index");
            x.push(c);
            idx = parent;
        }
        Some(x)
    }
}

fn add_column(key: &[i64], col: &[i64], c: i64) -> Result<Vec<i64>> {
    key.iter()
        .zip(col)
        .map(|(&k, &a)| {
            a.checked_mul(c)
                .and_then(|v| k.checked_add(v))
                .ok_or(Error::Overflow("DP value"))
        })
        .collect()
}

fn vector_dp(inst: &BilpInstance, table_cap: usize) -> Result<Run<Vec<i64>>> {
    inst.validate()?;
    if let Some((first, second)) = inst.a.duplicate_columns() {
        return Err(Error::DuplicateColumns { first, second });
    }
    let bounds = inst.bounds_or_binary();
    let cols = inst.a.columns();
    run(
        vec![0i64; inst.a.rows()],
        inst.a.cols(),
        |v| bounds[v].0..=bounds[v].1,
        |k, v, c| add_column(k, &cols[v], c),
        table_cap,
    )
}

/// Exact binary ILP feasibility. Fails on duplicate columns.
pub fn bilp_feasibility_dp(inst: &BilpInstance, table_cap: usize) -> Result<(Outcome, DpStats)> {
    if !inst.is_binary() {
        return Err(Error::Invalid("bilp_feasibility_dp needs binary variables".into()));
    }
    let r = vector_dp(inst, table_cap)?;
    let out = match r.witness(&inst.b) {
        Some(x) => {
            if !inst.check(&x) {
                return Err(Error::Check("BILP witness does not re-evaluate".into()));
            }
            Outcome::Feasible(SolveWitness::BinaryVector(x.iter().map(|&v| v as u8).collect()))
        }
        None => Outcome::Infeasible,
    };
    Ok((out, r.stats))
}

/// Exact ILP feasibility with per-variable bounds.
pub fn bounded_ilp_feasibility(inst: &BilpInstance, table_cap: usize) -> Result<(Outcome, DpStats)> {
    let r = vector_dp(inst, table_cap)?;
    let out = match r.witness(&inst.b) {
        Some(x) => {
            if !inst.check(&x) {
                return Err(Error::Check("ILP witness does not re-evaluate".into()));
            }
            Outcome::Feasible(SolveWitness::MultiplicityVector(x))
        }
        None => Outcome::Infeasible,
    };
    Ok((out, r.stats))
}

/// The DP's final layer, i.e. `{ A x : x in {0,1}^n }`.
pub fn reachable_values(inst: &BilpInstance, table_cap: usize) -> Result<Vec<Vec<i64>>> {
    let r = vector_dp(inst, table_cap)?;
    Ok(r.layers.last().expect("nonempty").keys().cloned().collect())
}

/// Subset-sum DP on `z_j = <A[., j], s>`.
pub fn hbilp_feasibility(inst: &HbilpInstance, table_cap: usize) -> Result<(Outcome, DpStats)> {
    let z = inst.column_values()?;
    let r = run(
        0i128,
        z.len(),
        |_| 0..=1,
        |k, v, c| {
            if c == 0 {
                Ok(*k)
            } else {
                k.checked_add(z[v]).ok_or(Error::Overflow("HBILP DP value"))
            }
        },
        table_cap,
    )?;
    let out = match r.witness(&inst.t) {
        Some(x) => {
            if !inst.check(&x) {
                return Err(Error::Check("HBILP witness does not re-evaluate".into()));
            }
            Outcome::Feasible(SolveWitness::BinaryVector(x.iter().map(|&v| v as u8).collect()))
        }
        None => Outcome::Infeasible,
    };
    Ok((out, r.stats))
}
