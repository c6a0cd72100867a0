//! Supports of lexicographically minimal nonnegative solutions.

use indexmap::IndexSet;
use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{cap, Error, Result};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportCandidates {
    /// Distinct supports, in order of first discovery over increasing `b`.
    pub supports: Vec<Vec<usize>>,
    /// Right-hand sides examined, `(nΔ + 1)^m`.
    pub examined: u128,
    pub feasible: u128,
    pub max_support: usize,
    /// Supports with `2^{|supp|} > (2nΔ + 1)^m`.
    pub violations: Vec<Vec<usize>>,
}

fn validate(a: &Matrix) -> Result<()> {
    if !a.is_nonnegative() {
        return Err(Error::Invalid("small_support_candidates needs a nonnegative matrix".into()));
    }
    if let Some(j) = (0..a.cols()).find(|&j| a.column(j).iter().all(|&v| v == 0)) {
        return Err(Error::Invalid(format!("column {j} is zero")));
    }
    Ok(())
}

/// Mixed-radix index of vectors in `[0, side)^m`, first coordinate least
/// significant.
struct BoxIndex {
    side: usize,
    m: usize,
    len: usize,
}

impl BoxIndex {
    fn decode(&self, mut idx: usize, out: &mut [i64]) {
        for v in out.iter_mut().take(self.m) {
            *v = (idx % self.side) as i64;
            idx /= self.side;
        }
    }

    /// Index of `b − c·col`, if nonnegative.
    fn minus(&self, b: &[i64], col: &[i64], c: i64) -> Option<usize> {
        let mut idx = 0usize;
        for i in (0..self.m).rev() {
            let v = b[i] - c * col[i];
            if v < 0 {
                return None;
            }
            idx = idx * self.side + v as usize;
        }
        Some(idx)
    }
}

/// For every `b` with `0 <= b_i <= nΔ`, the support of the lexicographically
/// least `x >= 0` with `A x = b`. The upper end is inclusive because the
/// support indicator of a solution can itself reach `nΔ` in a row.
///
/// `reach[k][b]` records whether `b` is a nonnegative combination of
/// columns `k..n`; the least `x` is then read off greedily, each `x_k` as
/// small as still leaves the remainder reachable.
pub fn small_support_candidates(a: &Matrix, enum_cap: u128) -> Result<SupportCandidates> {
    validate(a)?;
    let (m, n) = (a.rows(), a.cols());
    let top = (n as u128) * a.delta() as u128;
    let side = if top == 0 { 0 } else { top + 1 };
    let boxes = (0..m).try_fold(1u128, |acc, _| acc.checked_mul(side)).unwrap_or(u128::MAX);
    let mut out = SupportCandidates {
        supports: Vec::new(),
        examined: if side == 0 { 0 } else { boxes },
        feasible: 0,
        max_support: 0,
        violations: Vec::new(),
    };
    if side == 0 {
        return Ok(out);
    }
    cap("support candidate table", boxes.saturating_mul(n as u128 + 1), enum_cap)?;
    let bx = BoxIndex { side: side as usize, m, len: boxes as usize };
    let cols = a.columns();
    let mut reach = vec![vec![false; bx.len]; n + 1];
    reach[n][0] = true;
    let mut b = vec![0i64; m];
    for k in (0..n).rev() {
        let (done, cur) = reach.split_at_mut(k + 1);
        let (here, next) = (&mut done[k], &cur[0]);
        for idx in 0..bx.len {
            bx.decode(idx, &mut b);
            here[idx] = next[idx] || bx.minus(&b, &cols[k], 1).is_some_and(|p| here[p]);
        }
    }
    let bound = BigUint::from(2 * top + 1).pow(m as u32);
    let mut seen: IndexSet<Vec<usize>> = IndexSet::new();
    for idx in 0..bx.len {
        if !reach[0][idx] {
            continue;
        }
        out.feasible += 1;
        bx.decode(idx, &mut b);
        let mut rest = b.clone();
        let mut supp = Vec::new();
        for k in 0..n {
            let mut c = 0i64;
            loop {
                match bx.minus(&rest, &cols[k], c) {
                    Some(p) if reach[k + 1][p] => break,
                    Some(_) => c += 1,
                    None => return Err(Error::Check("lexicographic descent left the feasible region".into())),
                }
            }
            if c > 0 {
                supp.push(k);
                for (r, v) in rest.iter_mut().zip(&cols[k]) {
                    *r -= c * v;
                }
            }
        }
        if seen.insert(supp.clone()) {
            out.max_support = out.max_support.max(supp.len());
            if BigUint::from(1u8) << supp.len() > bound {
                out.violations.push(supp);
            }
        }
    }
    out.supports = seen.into_iter().collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_row() {
        let a = Matrix::from_rows(vec![vec![1, 2]]).unwrap();
        let c = small_support_candidates(&a, 1 << 20).unwrap();
        // b = 0 → ∅, 1 → x=(1,0), 2 → (0,1), 3 → (1,1), 4 → (0,2)
        assert_eq!(c.supports, vec![vec![], vec![0], vec![1], vec![0, 1]]);
        assert_eq!(c.feasible, 5);
        assert!(c.violations.is_empty());
    }

    #[test]
    fn identity() {
        let a = Matrix::from_rows(vec![vec![1, 0], vec![0, 1]]).unwrap();
        let c = small_support_candidates(&a, 1 << 20).unwrap();
        assert_eq!(c.examined, 9);
        assert_eq!(c.supports, vec![vec![], vec![0], vec![1], vec![0, 1]]);
    }

    #[test]
    fn unreachable_rhs_skipped() {
        let a = Matrix::from_rows(vec![vec![2, 4]]).unwrap();
        let c = small_support_candidates(&a, 1 << 20).unwrap();
        assert_eq!(c.examined, 9);
        assert_eq!(c.feasible, 5);
    }

    #[test]
    fn zero_column_rejected() {
        let a = Matrix::from_rows(vec![vec![1, 0]]).unwrap();
        assert!(small_support_candidates(&a, 1 << 20).is_err());
    }
}
