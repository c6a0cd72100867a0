//! Generalized arithmetic progressions over the integers.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{cap, Error, Result};
use crate::sets::IntegerSet;

/// `{ base + sum_i l_i * y_i : 0 <= l_i < L_i }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGap")]
pub struct Gap {
    pub base: i64,
    pub generators: Vec<i64>,
    pub lengths: Vec<u64>,
}

#[derive(Deserialize)]
struct RawGap {
    base: i64,
    generators: Vec<i64>,
    lengths: Vec<u64>,
}

impl TryFrom<RawGap> for Gap {
    type Error = Error;
    fn try_from(r: RawGap) -> Result<Self> {
        Gap::new(r.base, r.generators, r.lengths)
    }
}

impl Gap {
    pub fn new(base: i64, generators: Vec<i64>, lengths: Vec<u64>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Invalid("a GAP needs at least one dimension".into()));
        }
        if generators.len() != lengths.len() {
            return Err(Error::Invalid("generators and lengths differ in length".into()));
        }
        if lengths.contains(&0) {
            return Err(Error::Invalid("GAP lengths must be positive".into()));
        }
        Ok(Gap { base, generators, lengths })
    }

    /// Single point `{x}`.
    pub fn point(x: i64) -> Self {
        Gap { base: x, generators: vec![1], lengths: vec![1] }
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    /// Product of lengths, saturating at `u128::MAX`.
    pub fn volume(&self) -> u128 {
        self.lengths
            .iter()
            .fold(1u128, |acc, &l| acc.saturating_mul(l as u128))
    }

    /// `base + sum l_i y_i`, or `None` if a coordinate is out of range.
    pub fn eval(&self, coords: &[u64]) -> Result<Option<i64>> {
        if coords.len() != self.dim() {
            return Ok(None);
        }
        let mut acc = self.base as i128;
        for ((&l, &y), &len) in coords.iter().zip(&self.generators).zip(&self.lengths) {
            if l >= len {
                return Ok(None);
            }
            acc += l as i128 * y as i128;
        }
        i64::try_from(acc).map(Some).map_err(|_| Error::Overflow("gap eval"))
    }

    /// Smallest and largest element, computed from the generators.
    pub fn bounds(&self) -> Result<(i64, i64)> {
        let mut lo = self.base as i128;
        let mut hi = self.base as i128;
        for (&y, &l) in self.generators.iter().zip(&self.lengths) {
            let span = y as i128 * (l as i128 - 1);
            if span < 0 {
                lo += span;
            } else {
                hi += span;
            }
        }
        let lo = i64::try_from(lo).map_err(|_| Error::Overflow("gap bounds"))?;
        let hi = i64::try_from(hi).map_err(|_| Error::Overflow("gap bounds"))?;
        Ok((lo, hi))
    }

    /// Every point with its coordinates, in lexicographic coordinate order.
    pub fn points(&self, enum_cap: u128) -> Result<Vec<(i64, Vec<u64>)>> {
        let mut out = Vec::new();
        self.for_each_point(enum_cap, |c, v| out.push((v, c.to_vec())))?;
        Ok(out)
    }

    /// Visits every coordinate vector in lexicographic order with its value.
    fn for_each_point(&self, enum_cap: u128, mut f: impl FnMut(&[u64], i64)) -> Result<()> {
        cap("gap volume", self.volume(), enum_cap)?;
        self.bounds()?;
        let d = self.dim();
        let mut coords = vec![0u64; d];
        let mut value = self.base;
        loop {
            f(&coords, value);
            // odometer, last coordinate fastest
            let mut i = d;
            loop {
                if i == 0 {
                    return Ok(());
                }
                i -= 1;
                if coords[i] + 1 < self.lengths[i] {
                    coords[i] += 1;
                    value += self.generators[i];
                    break;
                }
                value -= self.generators[i] * (coords[i] as i64);
                coords[i] = 0;
            }
        }
    }
}

/// Elements of `p` and whether `p` is proper.
pub fn gap_enumerate(p: &Gap, enum_cap: u128) -> Result<(IntegerSet, bool)> {
    let mut out = Vec::with_capacity(p.volume().min(enum_cap) as usize);
    p.for_each_point(enum_cap, |_, v| out.push(v))?;
    let set = IntegerSet::new(out);
    let proper = set.len() as u128 == p.volume();
    Ok((set, proper))
}

/// Lookup table from value to its lexicographically least coordinates.
#[derive(Debug, Clone)]
pub struct GapIndex {
    gap: Gap,
    table: HashMap<i64, Vec<u64>>,
}

impl GapIndex {
    pub fn build(p: &Gap, enum_cap: u128) -> Result<Self> {
        let mut table = HashMap::new();
        p.for_each_point(enum_cap, |c, v| {
            table.entry(v).or_insert_with(|| c.to_vec());
        })?;
        Ok(GapIndex { gap: p.clone(), table })
    }

    pub fn gap(&self) -> &Gap {
        &self.gap
    }

    pub fn coords(&self, x: i64) -> Option<&[u64]> {
        self.table.get(&x).map(|v| v.as_slice())
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

/// Lexicographically least coordinates of `x` in `p`, if any.
pub fn gap_membership(p: &Gap, x: i64, enum_cap: u128) -> Result<Option<Vec<u64>>> {
    Ok(GapIndex::build(p, enum_cap)?.coords(x).map(|c| c.to_vec()))
}
