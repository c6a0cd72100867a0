//! Greedy Ruzsa covering: Z ⊆ Y − Y + X with pairwise disjoint translates Y + x.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::sets::{sumset, IntegerSet};

/// Why `z` is covered: `z + from = x + to` with `from, to ∈ Y`, so `z = x + to − from`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverWitness {
    pub z: i64,
    pub x: i64,
    pub from: i64,
    pub to: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuzsaCover {
    pub x: IntegerSet,
    /// One witness per element of Z, in increasing order of z.
    pub witnesses: Vec<CoverWitness>,
}

/// Scans Z in increasing order and keeps z whenever Y + z misses every
/// translate chosen so far. Both lemma bounds are asserted before returning.
pub fn ruzsa_cover(y: &IntegerSet, z: &IntegerSet) -> Result<RuzsaCover> {
    if y.is_empty() || z.is_empty() {
        return Err(Error::Empty("ruzsa_cover"));
    }
    // point of some chosen Y + x  ->  (x, y with y + x = point)
    let mut owner: HashMap<i64, (i64, i64)> = HashMap::new();
    let mut chosen = Vec::new();
    let mut witnesses = Vec::with_capacity(z.len());
    for zv in z.iter() {
        let mut hit = None;
        for yv in y.iter() {
            let p = yv.checked_add(zv).ok_or(Error::Overflow("ruzsa_cover"))?;
            if let Some(&(x, to)) = owner.get(&p) {
                hit = Some(CoverWitness { z: zv, x, from: yv, to });
                break;
            }
        }
        let w = match hit {
            Some(w) => w,
            None => {
                for yv in y.iter() {
                    owner.insert(yv + zv, (zv, yv));
                }
                chosen.push(zv);
                CoverWitness { z: zv, x: zv, from: y.elements()[0], to: y.elements()[0] }
            }
        };
        witnesses.push(w);
    }
    let x = IntegerSet::from_strict(chosen)?;
    let yz = sumset(y, z)?;
    if x.len() * y.len() > yz.len() {
        return Err(Error::Check(format!(
            "|X||Y| = {} exceeds |Y+Z| = {}",
            x.len() * y.len(),
            yz.len()
        )));
    }
    for w in &witnesses {
        let ok = y.contains(w.from)
            && y.contains(w.to)
            && x.contains(w.x)
            && w.z as i128 == w.x as i128 + w.to as i128 - w.from as i128;
        if !ok {
            return Err(Error::Check(format!("bad cover witness {w:?}")));
        }
    }
    Ok(RuzsaCover { x, witnesses })
}
