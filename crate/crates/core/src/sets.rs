//! Explicit integer sets and exact sumset arithmetic.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sorted, duplicate-free set of `i64` values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSet")]
pub struct IntegerSet {
    elements: Vec<i64>,
}

#[derive(Deserialize)]
struct RawSet {
    elements: Vec<i64>,
}

impl TryFrom<RawSet> for IntegerSet {
    type Error = Error;
    fn try_from(raw: RawSet) -> Result<Self> {
        IntegerSet::from_strict(raw.elements)
    }
}

impl IntegerSet {
    /// Sorts and deduplicates.
    pub fn new(mut elements: Vec<i64>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        IntegerSet { elements }
    }

    /// Accepts only strictly increasing input.
    pub fn from_strict(elements: Vec<i64>) -> Result<Self> {
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid(
                "elements must be strictly increasing".into(),
            ));
        }
        Ok(IntegerSet { elements })
    }

    pub fn empty() -> Self {
        IntegerSet { elements: vec![] }
    }

    pub fn singleton(x: i64) -> Self {
        IntegerSet { elements: vec![x] }
    }

    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn min(&self) -> Option<i64> {
        self.elements.first().copied()
    }

    pub fn max(&self) -> Option<i64> {
        self.elements.last().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.elements.iter().copied()
    }

    /// max |a - b| over the set; 0 for sets with fewer than two elements.
    pub fn diam(&self) -> Result<u64> {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => hi
                .checked_sub(lo)
                .map(|d| d as u64)
                .ok_or(Error::Overflow("diam")),
            _ => Ok(0),
        }
    }

    pub fn is_subset(&self, other: &IntegerSet) -> bool {
        self.iter().all(|x| other.contains(x))
    }

    pub fn negate(&self) -> Result<IntegerSet> {
        let mut out = Vec::with_capacity(self.len());
        for &x in self.elements.iter().rev() {
            out.push(x.checked_neg().ok_or(Error::Overflow("negate"))?);
        }
        Ok(IntegerSet { elements: out })
    }

    pub fn translate(&self, by: i64) -> Result<IntegerSet> {
        let elements = self
            .iter()
            .map(|x| x.checked_add(by).ok_or(Error::Overflow("translate")))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntegerSet { elements })
    }
}

impl FromIterator<i64> for IntegerSet {
    fn from_iter<T: IntoIterator<Item = i64>>(iter: T) -> Self {
        IntegerSet::new(iter.into_iter().collect())
    }
}

/// {x + y : x in a, y in b}.
pub fn sumset(a: &IntegerSet, b: &IntegerSet) -> Result<IntegerSet> {
    let mut out = Vec::with_capacity(a.len().saturating_mul(b.len()));
    for x in a.iter() {
        for y in b.iter() {
            out.push(x.checked_add(y).ok_or(Error::Overflow("sumset"))?);
        }
    }
    Ok(IntegerSet::new(out))
}

/// {x - y : x in a, y in b}.
pub fn difference(a: &IntegerSet, b: &IntegerSet) -> Result<IntegerSet> {
    sumset(a, &b.negate()?)
}

/// sA - tA, failing with `CapExceeded` if any intermediate set grows past `cap`.
pub fn iterated_sumset_capped(a: &IntegerSet, s: usize, t: usize, cap: usize) -> Result<IntegerSet> {
    if s == 0 {
        return Err(Error::Invalid("iterated_sumset needs s >= 1".into()));
    }
    if a.is_empty() {
        return Err(Error::Empty("iterated_sumset"));
    }
    let neg = a.negate()?;
    let mut acc = a.clone();
    let steps = std::iter::repeat_n(a, s - 1).chain(std::iter::repeat_n(&neg, t));
    for step in steps {
        acc = sumset(&acc, step)?;
        crate::error::cap("iterated sumset", acc.len() as u128, cap as u128)?;
    }
    Ok(acc)
}

/// sA - tA with no size cap.
pub fn iterated_sumset(a: &IntegerSet, s: usize, t: usize) -> Result<IntegerSet> {
    iterated_sumset_capped(a, s, t, usize::MAX)
}

/// |A + A| / |A| as an exact (reduced) rational.
pub fn doubling_constant(a: &IntegerSet) -> Result<Ratio<u64>> {
    if a.is_empty() {
        return Err(Error::Empty("doubling_constant"));
    }
    let aa = sumset(a, a)?;
    Ok(Ratio::new(aa.len() as u64, a.len() as u64))
}

/// Lexicographically least vector. All vectors must share one length.
pub fn lex_min<T: Ord + Clone>(vectors: &[Vec<T>]) -> Result<Vec<T>> {
    vectors
        .iter()
        .min()
        .cloned()
        .ok_or(Error::Empty("lex_min"))
}
