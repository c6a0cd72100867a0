//! Binary and bounded ILP feasibility by reachable-value dynamic programming,
//! plus the reductions between BILP, HBILP and subset sum.

pub mod dp;
pub mod reduce;
pub mod support;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

pub use dp::{bilp_feasibility_dp, bounded_ilp_feasibility, hbilp_feasibility, reachable_values, DpStats};
pub use reduce::{
    bilp_nonnegative, bilp_to_hbilp, hbilp_nonnegative, hbilp_to_ss, ss_to_hbilp, HbilpToSs, NonnegBilp,
    NonnegHbilp, SsToHbilp,
};
pub use support::{small_support_candidates, SupportCandidates};

/// `A x = b` with `lo_i <= x_i <= hi_i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BilpInstance {
    #[serde(rename = "A")]
    pub a: Matrix,
    pub b: Vec<i64>,
    /// Per-variable `[lo, hi]`; binary when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Vec<(i64, i64)>>,
}

impl BilpInstance {
    pub fn binary(a: Matrix, b: Vec<i64>) -> Result<Self> {
        let inst = BilpInstance { a, b, bounds: None };
        inst.validate()?;
        Ok(inst)
    }

    pub fn bounded(a: Matrix, b: Vec<i64>, bounds: Vec<(i64, i64)>) -> Result<Self> {
        let inst = BilpInstance { a, b, bounds: Some(bounds) };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.b.len() != self.a.rows() {
            return Err(Error::Invalid("b must have one entry per row of A".into()));
        }
        if let Some(bounds) = &self.bounds {
            if bounds.len() != self.a.cols() {
                return Err(Error::Invalid("one bound pair per column is required".into()));
            }
            if bounds.iter().any(|&(lo, hi)| lo > hi) {
                return Err(Error::Invalid("bound with lo > hi".into()));
            }
        }
        Ok(())
    }

    pub fn bounds_or_binary(&self) -> Vec<(i64, i64)> {
        self.bounds.clone().unwrap_or_else(|| vec![(0, 1); self.a.cols()])
    }

    pub fn is_binary(&self) -> bool {
        self.bounds_or_binary().iter().all(|&b| b == (0, 1))
    }

    /// `A x == b` and `x` within bounds.
    pub fn check(&self, x: &[i64]) -> bool {
        x.len() == self.a.cols()
            && x.iter().zip(self.bounds_or_binary()).all(|(&v, (lo, hi))| lo <= v && v <= hi)
            && self.a.mul_vec(x).iter().zip(&self.b).all(|(&l, &r)| l == r as i128)
    }
}

/// `<A x, s> = t` over binary `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HbilpInstance {
    #[serde(rename = "A")]
    pub a: Matrix,
    pub s: Vec<i128>,
    pub t: i128,
}

impl HbilpInstance {
    pub fn new(a: Matrix, s: Vec<i128>, t: i128) -> Result<Self> {
        if s.len() != a.rows() {
            return Err(Error::Invalid("s must have one entry per row of A".into()));
        }
        Ok(HbilpInstance { a, s, t })
    }

    /// `z_j = <A[., j], s>`.
    pub fn column_values(&self) -> Result<Vec<i128>> {
        (0..self.a.cols())
            .map(|j| {
                (0..self.a.rows()).try_fold(0i128, |acc, i| {
                    (self.a.get(i, j) as i128)
                        .checked_mul(self.s[i])
                        .and_then(|v| acc.checked_add(v))
                        .ok_or(Error::Overflow("HBILP column value"))
                })
            })
            .collect()
    }

    pub fn check(&self, x: &[i64]) -> bool {
        if x.len() != self.a.cols() || x.iter().any(|&v| v != 0 && v != 1) {
            return false;
        }
        match self.column_values() {
            Ok(z) => z.iter().zip(x).filter(|(_, &xi)| xi == 1).map(|(z, _)| *z).sum::<i128>() == self.t,
            Err(_) => false,
        }
    }

    pub fn s_inf(&self) -> i128 {
        self.s.iter().map(|v| v.abs()).max().unwrap_or(0)
    }
}
