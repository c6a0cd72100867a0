//! k-SUM by color coding and meet in the middle over sumsets.
//!
//! For every coloring in a splitter family the blocks `X_1..X_k` are folded
//! into `ℒ = X_1 + … + X_{⌊k/2⌋}` and `ℛ = X_{⌊k/2⌋+1} + … + X_k`, and each
//! `a ∈ ℒ` is tested for `t − a ∈ ℛ` by binary search. Picking one element
//! per block keeps the k chosen elements distinct.

pub mod splitter;
pub mod sumset;

use rand::Rng;
use serde::Serialize;

pub use splitter::{random_colorings, splitter_family, stirling2, ColorPartition, SplitterFamily};
pub use sumset::{sparse_sumset, Backend, Sumset, SumsetCaps};

use crate::error::{Error, Result};
use crate::matrix::{Outcome, SolveWitness};
use crate::sets::IntegerSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KsumConfig {
    pub gamma: u32,
    pub backend: Backend,
    pub caps: SumsetCaps,
    /// Largest number of set partitions enumerated exhaustively.
    pub exhaustive_cap: u128,
    /// Overrides the random family size when set.
    pub partitions: Option<usize>,
}

impl Default for KsumConfig {
    fn default() -> Self {
        KsumConfig { gamma: 1, backend: Backend::Auto, caps: SumsetCaps::default(), exhaustive_cap: 1 << 12, partitions: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KsumReport {
    pub outcome: Outcome,
    pub family_size: usize,
    pub exhaustive: bool,
    pub partitions_tried: usize,
    pub max_left: usize,
    pub max_right: usize,
    /// `Σ (|ℒ| + |ℛ|)` over the colorings tried.
    pub work: u128,
}

/// One element per block folded so far: `values[i]` is reached by adding
/// element `elem[i]` to entry `parent[i]` of the previous level.
struct Level {
    values: Vec<i64>,
    parent: Vec<u32>,
    elem: Vec<u32>,
}

/// Sums of one element from each block, keeping every level for witness
/// recovery.
fn fold(z: &[i64], blocks: &[Vec<usize>], cfg: &KsumConfig) -> Result<Vec<Level>> {
    let mut levels: Vec<Level> = Vec::with_capacity(blocks.len());
    for block in blocks {
        let vals: Vec<i64> = block.iter().map(|&i| z[i]).collect();
        let level = match levels.last() {
            None => Level { values: vals, parent: vec![u32::MAX; block.len()], elem: block.iter().map(|&i| i as u32).collect() },
            Some(prev) => {
                let s = sparse_sumset(&prev.values, &vals, cfg.backend, cfg.caps)?;
                let (parent, elem) = s.witness.iter().map(|&(p, q)| (p, block[q as usize] as u32)).unzip();
                Level { values: s.values, parent, elem }
            }
        };
        levels.push(level);
    }
    Ok(levels)
}

fn trace(levels: &[Level], mut idx: usize, out: &mut Vec<usize>) {
    for level in levels.iter().rev() {
        out.push(level.elem[idx] as usize);
        idx = level.parent[idx] as usize;
    }
}

/// k pairwise distinct elements of `z` summing to `t`, as sorted indices.
pub fn ksum<R: Rng + ?Sized>(z: &IntegerSet, t: i64, k: usize, cfg: &KsumConfig, rng: &mut R) -> Result<KsumReport> {
    if k == 0 || k > z.len() {
        return Err(Error::Invalid(format!("ksum needs 1 <= k <= |z|, got k = {k}, |z| = {}", z.len())));
    }
    let family = match cfg.partitions {
        Some(count) if k > 1 => random_colorings(z.len(), k, count, rng),
        _ => splitter_family(z.len(), k, cfg.gamma, cfg.exhaustive_cap, rng),
    };
    let mut report = KsumReport {
        outcome: Outcome::Infeasible,
        family_size: family.partitions.len(),
        exhaustive: family.exhaustive,
        partitions_tried: 0,
        max_left: 0,
        max_right: 0,
        work: 0,
    };
    let vals = z.elements();
    let half = k / 2;
    for part in &family.partitions {
        report.partitions_tried += 1;
        if part.blocks.iter().any(Vec::is_empty) {
            continue;
        }
        let left = fold(vals, &part.blocks[..half], cfg)?;
        let right = fold(vals, &part.blocks[half..], cfg)?;
        let lv: &[i64] = left.last().map_or(&[0][..], |l| &l.values);
        let rv = &right.last().expect("k >= 1").values;
        report.max_left = report.max_left.max(lv.len());
        report.max_right = report.max_right.max(rv.len());
        report.work += (lv.len() + rv.len()) as u128;
        let hit = lv.iter().enumerate().find_map(|(i, &a)| {
            let need = t.checked_sub(a)?;
            rv.binary_search(&need).ok().map(|j| (i, j))
        });
        if let Some((i, j)) = hit {
            let mut idx = Vec::with_capacity(k);
            if !left.is_empty() {
                trace(&left, i, &mut idx);
            }
            trace(&right, j, &mut idx);
            idx.sort_unstable();
            let distinct = idx.windows(2).all(|w| w[0] < w[1]);
            let sum = idx.iter().try_fold(0i64, |acc, &i| acc.checked_add(vals[i]));
            if idx.len() != k || !distinct || sum != Some(t) {
                return Err(Error::Check("k-SUM witness does not re-evaluate".into()));
            }
            report.outcome = Outcome::Feasible(SolveWitness::SubsetOfIndices(idx));
            break;
        }
    }
    Ok(report)
}

pub fn foursum<R: Rng + ?Sized>(z: &IntegerSet, t: i64, cfg: &KsumConfig, rng: &mut R) -> Result<KsumReport> {
    ksum(z, t, 4, cfg, rng)
}
