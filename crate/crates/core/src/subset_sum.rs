//! Subset sum and unbounded subset sum on inputs with small doubling.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{cap, Error, Result};
use crate::freiman::{FreimanConfig, FreimanMetrics};
use crate::ilp::{bilp_feasibility_dp, small_support_candidates, ss_to_hbilp, BilpInstance, DpStats};
use crate::matrix::{Matrix, Outcome, SolveWitness};
use crate::sets::IntegerSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Bounded,
    Unbounded,
}

/// `{"elements": [...], "target": t, "mode": "bounded" | "unbounded"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance", into = "RawInstance")]
pub struct SubsetSumInstance {
    pub z: IntegerSet,
    pub target: i64,
    pub mode: Mode,
}

#[derive(Serialize, Deserialize)]
struct RawInstance {
    elements: Vec<i64>,
    target: i64,
    #[serde(default)]
    mode: Mode,
}

impl TryFrom<RawInstance> for SubsetSumInstance {
    type Error = Error;

    fn try_from(raw: RawInstance) -> Result<Self> {
        Ok(SubsetSumInstance { z: IntegerSet::from_strict(raw.elements)?, target: raw.target, mode: raw.mode })
    }
}

impl From<SubsetSumInstance> for RawInstance {
    fn from(inst: SubsetSumInstance) -> Self {
        RawInstance { elements: inst.z.into_vec(), target: inst.target, mode: inst.mode }
    }
}

/// Solves subset sum as the one-row binary ILP `z · x = t`. The witness
/// lists indices into the sorted elements.
pub fn subset_sum_doubling(z: &IntegerSet, t: i64, table_cap: usize) -> Result<(Outcome, DpStats)> {
    let a = Matrix::from_rows(vec![z.elements().to_vec()])?;
    let inst = BilpInstance::binary(a, vec![t])?;
    let (out, stats) = bilp_feasibility_dp(&inst, table_cap)?;
    let out = match out {
        Outcome::Feasible(w) => {
            let x = w.to_assignment(z.len());
            let idx: Vec<usize> = (0..z.len()).filter(|&i| x[i] == 1).collect();
            let sum = idx.iter().try_fold(0i64, |acc, &i| acc.checked_add(z.elements()[i]));
            if sum != Some(t) {
                return Err(Error::Check("subset witness does not sum to the target".into()));
            }
            Outcome::Feasible(SolveWitness::SubsetOfIndices(idx))
        }
        Outcome::Infeasible => Outcome::Infeasible,
    };
    Ok((out, stats))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnboundedReport {
    pub outcome: Outcome,
    /// Absent when there is nothing to cover.
    pub cover: Option<FreimanMetrics>,
    /// Rows of the coordinate matrix, including the base-point row.
    pub rows: usize,
    pub delta: u64,
    pub candidates: usize,
    /// Supports solved before the answer was known.
    pub supports_tried: usize,
    pub max_support: usize,
}

/// Lexicographically least `c >= 0` with `Σ c_i w_i = t`, by suffix
/// reachability tables over `0..=t`.
fn unbounded_lex_min(w: &[i64], t: i64, table_cap: usize) -> Result<Option<Vec<i64>>> {
    let len = usize::try_from(t).map_err(|_| Error::Invalid("negative target".into()))? + 1;
    cap("unbounded subset-sum table", (len as u128) * (w.len() as u128 + 1), table_cap as u128)?;
    let mut reach = vec![vec![false; len]; w.len() + 1];
    reach[w.len()][0] = true;
    for k in (0..w.len()).rev() {
        let step = w[k] as usize;
        let (done, rest) = reach.split_at_mut(k + 1);
        let (here, next) = (&mut done[k], &rest[0]);
        for v in 0..len {
            here[v] = next[v] || (v >= step && here[v - step]);
        }
    }
    if !reach[0][len - 1] {
        return Ok(None);
    }
    let mut rest = len - 1;
    let mut c = vec![0i64; w.len()];
    for k in 0..w.len() {
        while !reach[k + 1][rest] {
            rest -= w[k] as usize;
            c[k] += 1;
        }
    }
    Ok(Some(c))
}

/// Encodes `z` by coordinates in a split Freiman cover, collects candidate
/// supports of small nonnegative solutions, and solves each support's
/// restricted instance exactly. The first feasible support in discovery
/// order gives the answer.
///
/// Elements must be positive so that the coordinate matrix has no zero
/// column and every restricted instance is bounded by the target.
pub fn unbounded_subset_sum<R: Rng + ?Sized>(
    z: &IntegerSet,
    t: i64,
    cfg: &FreimanConfig,
    rng: &mut R,
) -> Result<UnboundedReport> {
    if z.min().is_some_and(|v| v <= 0) {
        return Err(Error::Invalid("unbounded subset sum needs positive elements".into()));
    }
    if t < 0 {
        return Err(Error::Invalid("unbounded subset sum needs a nonnegative target".into()));
    }
    if z.is_empty() {
        let outcome = if t == 0 {
            Outcome::Feasible(SolveWitness::MultiplicityVector(Vec::new()))
        } else {
            Outcome::Infeasible
        };
        return Ok(UnboundedReport {
            outcome,
            cover: None,
            rows: 0,
            delta: 0,
            candidates: 0,
            supports_tried: 0,
            max_support: 0,
        });
    }
    let enc = ss_to_hbilp(z, t, cfg, rng)?;
    let a = &enc.instance.a;
    let cands = small_support_candidates(a, cfg.limits.enum_cap)?;
    let mut report = UnboundedReport {
        outcome: Outcome::Infeasible,
        cover: Some(enc.cover.clone()),
        rows: a.rows(),
        delta: a.delta(),
        candidates: cands.supports.len(),
        supports_tried: 0,
        max_support: cands.max_support,
    };
    for supp in &cands.supports {
        report.supports_tried += 1;
        let w: Vec<i64> = supp.iter().map(|&j| z.elements()[j]).collect();
        if let Some(c) = unbounded_lex_min(&w, t, cfg.limits.table_cap)? {
            let mut x = vec![0i64; z.len()];
            for (&j, &cj) in supp.iter().zip(&c) {
                x[j] = cj;
            }
            let sum = z.iter().zip(&x).try_fold(0i64, |acc, (v, &m)| v.checked_mul(m).and_then(|p| acc.checked_add(p)));
            if sum != Some(t) {
                return Err(Error::Check("multiplicity witness does not sum to the target".into()));
            }
            report.outcome = Outcome::Feasible(SolveWitness::MultiplicityVector(x));
            break;
        }
    }
    Ok(report)
}
