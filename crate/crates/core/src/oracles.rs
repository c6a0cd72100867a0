//! Brute-force ground truth. Every routine takes an explicit cap and fails
//! loudly instead of sampling.

use std::collections::HashMap;

use num_rational::Ratio;

use crate::error::{cap, Error, Result};
use crate::gap::{gap_enumerate, Gap};
use crate::matrix::Matrix;
use crate::sets::IntegerSet;

/// Every index subset of `z` summing to `t` (of size `k` if given), by direct 2^n scan.
pub fn brute_subset_sum_all(z: &[i64], t: i64, k: Option<usize>) -> Result<Vec<Vec<usize>>> {
    cap("subset-sum enumeration size", z.len() as u128, 24)?;
    let n = z.len();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        if k.is_some_and(|k| mask.count_ones() as usize != k) {
            continue;
        }
        let sum: i128 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| z[i] as i128).sum();
        if sum == t as i128 {
            out.push((0..n).filter(|i| mask >> i & 1 == 1).collect());
        }
    }
    Ok(out)
}

type HalfTable = HashMap<(i128, u32), (u64, u64)>;

/// (sum, size) -> (count, first mask) over all subsets of `z`.
fn half_table(z: &[i64]) -> HalfTable {
    let mut table: HalfTable = HashMap::new();
    for mask in 0u64..(1u64 << z.len()) {
        let sum: i128 = (0..z.len()).filter(|i| mask >> i & 1 == 1).map(|i| z[i] as i128).sum();
        let e = table.entry((sum, mask.count_ones())).or_insert((0, mask));
        e.0 += 1;
    }
    table
}

fn mitm(z: &[i64], t: i64, k: Option<usize>) -> Result<(u64, Option<Vec<usize>>)> {
    cap("meet-in-the-middle size", z.len() as u128, 40)?;
    let h = z.len() / 2;
    let left = half_table(&z[..h]);
    let right = half_table(&z[h..]);
    let mut count = 0u64;
    let mut best: Option<(u64, u64)> = None;
    let mut keys: Vec<_> = left.keys().copied().collect();
    keys.sort_unstable();
    for (ls, lc) in keys {
        let (lcount, lmask) = left[&(ls, lc)];
        let sizes: Vec<u32> = match k {
            Some(k) if (k as u32) < lc => continue,
            Some(k) => vec![k as u32 - lc],
            None => (0..=(z.len() - h) as u32).collect(),
        };
        for rc in sizes {
            if let Some(&(rcount, rmask)) = right.get(&(t as i128 - ls, rc)) {
                count += lcount * rcount;
                let cand = (lmask, rmask);
                if best.is_none_or(|b| cand < b) {
                    best = Some(cand);
                }
            }
        }
    }
    let witness = best.map(|(lm, rm)| {
        let mut idx: Vec<usize> = (0..h).filter(|i| lm >> i & 1 == 1).collect();
        idx.extend((0..z.len() - h).filter(|i| rm >> i & 1 == 1).map(|i| i + h));
        idx
    });
    Ok((count, witness))
}

/// Some solution, by meet-in-the-middle (n <= 40).
pub fn brute_subset_sum_first(z: &[i64], t: i64, k: Option<usize>) -> Result<Option<Vec<usize>>> {
    Ok(mitm(z, t, k)?.1)
}

/// Number of solutions, by meet-in-the-middle (n <= 40).
pub fn brute_subset_sum_count(z: &[i64], t: i64, k: Option<usize>) -> Result<u64> {
    Ok(mitm(z, t, k)?.0)
}

/// Pseudo-polynomial oracle for unbounded subset sum over positive `z`.
/// Returns multiplicities reaching `t`, preferring the last item processed.
pub fn brute_unbounded_subset_sum(z: &[i64], t: i64, table_cap: u64) -> Result<Option<Vec<u64>>> {
    if z.iter().any(|&x| x <= 0) || t < 0 {
        return Err(Error::Invalid("unbounded oracle needs positive items and t >= 0".into()));
    }
    cap("unbounded target table", t as u128 + 1, table_cap as u128)?;
    let t = t as usize;
    // from[v] = index of the item used last to reach v
    let mut from: Vec<Option<usize>> = vec![None; t + 1];
    let mut reach = vec![false; t + 1];
    reach[0] = true;
    for v in 1..=t {
        for (i, &x) in z.iter().enumerate() {
            let x = x as usize;
            if x <= v && reach[v - x] {
                reach[v] = true;
                from[v] = Some(i);
                break;
            }
        }
    }
    if !reach[t] {
        return Ok(None);
    }
    let mut mult = vec![0u64; z.len()];
    let mut v = t;
    while v > 0 {
        let i = from[v].expect("reachable value has a predecessor");
        mult[i] += 1;
        v -= z[i] as usize;
    }
    Ok(Some(mult))
}

/// First `k`-subset (as increasing indices, lexicographic order) summing to `t`.
pub fn brute_ksum(z: &[i64], t: i64, k: usize) -> Result<Option<Vec<usize>>> {
    let n = z.len();
    if k == 0 || k > n {
        return Ok(None);
    }
    let combos = binomial(n as u128, k as u128);
    cap("k-subsets", combos, 50_000_000)?;
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let sum: i128 = idx.iter().map(|&i| z[i] as i128).sum();
        if sum == t as i128 {
            return Ok(Some(idx));
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

pub(crate) fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// Iterates assignments in lexicographic order within per-variable bounds.
fn for_each_assignment(bounds: &[(i64, i64)], mut f: impl FnMut(&[i64]) -> bool) {
    let mut x: Vec<i64> = bounds.iter().map(|b| b.0).collect();
    if bounds.iter().any(|b| b.0 > b.1) {
        return;
    }
    loop {
        if f(&x) {
            return;
        }
        let mut i = x.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if x[i] < bounds[i].1 {
                x[i] += 1;
                break;
            }
            x[i] = bounds[i].0;
        }
    }
}

fn box_size(bounds: &[(i64, i64)]) -> u128 {
    bounds
        .iter()
        .fold(1u128, |acc, b| acc.saturating_mul((b.1 - b.0 + 1).max(0) as u128))
}

/// Lexicographically least `x` within bounds with `A x = b`.
pub fn brute_ilp(a: &Matrix, b: &[i64], bounds: &[(i64, i64)], enum_cap: u128) -> Result<Option<Vec<i64>>> {
    cap("ILP box", box_size(bounds), enum_cap)?;
    let target: Vec<i128> = b.iter().map(|&v| v as i128).collect();
    let mut found = None;
    for_each_assignment(bounds, |x| {
        if a.mul_vec(x) == target {
            found = Some(x.to_vec());
            true
        } else {
            false
        }
    });
    Ok(found)
}

/// Lexicographically least binary `x` with `<A x, s> = t`.
pub fn brute_hbilp(a: &Matrix, s: &[i64], t: i128, enum_cap: u128) -> Result<Option<Vec<i64>>> {
    let bounds = vec![(0, 1); a.cols()];
    cap("HBILP box", box_size(&bounds), enum_cap)?;
    let mut found = None;
    for_each_assignment(&bounds, |x| {
        let v: i128 = a.mul_vec(x).iter().zip(s).map(|(&r, &si)| r * si as i128).sum();
        if v == t {
            found = Some(x.to_vec());
            true
        } else {
            false
        }
    });
    Ok(found)
}

/// `{ A x : x in {0,1}^n }`.
pub fn brute_reachable(a: &Matrix, enum_cap: u128) -> Result<Vec<Vec<i128>>> {
    let bounds = vec![(0, 1); a.cols()];
    cap("reachable box", box_size(&bounds), enum_cap)?;
    let mut out = std::collections::BTreeSet::new();
    for_each_assignment(&bounds, |x| {
        out.insert(a.mul_vec(x));
        false
    });
    Ok(out.into_iter().collect())
}

/// Result of a Freiman isomorphism check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoCheck {
    pub is_iso: bool,
    /// Two `s`-tuples that break the property, if any.
    pub counterexample: Option<(Vec<i64>, Vec<i64>)>,
}

/// Checks that `map` is a Freiman `s`-isomorphism on `domain`. Image sums are
/// compared modulo `modulus` when given.
pub fn verify_freiman_iso(
    map: impl Fn(i64) -> i64,
    domain: &IntegerSet,
    s: usize,
    modulus: Option<u64>,
    enum_cap: u128,
) -> Result<IsoCheck> {
    let n = domain.len();
    if n == 0 || s == 0 {
        return Ok(IsoCheck { is_iso: true, counterexample: None });
    }
    cap("s-multisets", binomial((n + s - 1) as u128, s as u128), enum_cap)?;
    let images: Vec<i128> = domain.iter().map(|x| map(x) as i128).collect();
    let reduce = |v: i128| match modulus {
        Some(m) => v.rem_euclid(m as i128),
        None => v,
    };
    let xs = domain.elements();
    let mut fwd: HashMap<i128, (i128, Vec<usize>)> = HashMap::new();
    let mut back: HashMap<i128, (i128, Vec<usize>)> = HashMap::new();
    let tuple = |idx: &[usize]| idx.iter().map(|&i| xs[i]).collect::<Vec<_>>();
    let mut idx = vec![0usize; s];
    loop {
        let dsum: i128 = idx.iter().map(|&i| xs[i] as i128).sum();
        let isum = reduce(idx.iter().map(|&i| images[i]).sum());
        match fwd.get(&dsum) {
            Some((other, w)) if *other != isum => {
                return Ok(IsoCheck { is_iso: false, counterexample: Some((tuple(w), tuple(&idx))) });
            }
            Some(_) => {}
            None => {
                fwd.insert(dsum, (isum, idx.clone()));
            }
        }
        match back.get(&isum) {
            Some((other, w)) if *other != dsum => {
                return Ok(IsoCheck { is_iso: false, counterexample: Some((tuple(w), tuple(&idx))) });
            }
            Some(_) => {}
            None => {
                back.insert(isum, (dsum, idx.clone()));
            }
        }
        // next non-decreasing index tuple
        let mut i = s;
        loop {
            if i == 0 {
                return Ok(IsoCheck { is_iso: true, counterexample: None });
            }
            i -= 1;
            if idx[i] + 1 < n {
                let v = idx[i] + 1;
                for slot in idx.iter_mut().skip(i) {
                    *slot = v;
                }
                break;
            }
        }
    }
}

/// Distance from `v/m` to the nearest integer is at most `eps`.
pub(crate) fn within(v: u64, m: u64, eps: Ratio<u64>) -> bool {
    let v = v % m;
    let dist = v.min(m - v) as u128;
    dist * *eps.denom() as u128 <= *eps.numer() as u128 * m as u128
}

/// `{ x in Z_m : ||r x / m|| <= eps for all r in R }`.
pub fn bohr_enumerate(m: u64, freqs: &[u64], eps: Ratio<u64>, enum_cap: u128) -> Result<Vec<u64>> {
    cap("Bohr modulus", m as u128, enum_cap)?;
    Ok((0..m)
        .filter(|&x| {
            freqs
                .iter()
                .all(|&r| within(((r as u128 * x as u128) % m as u128) as u64, m, eps))
        })
        .collect())
}

/// `2B - 2B` in `Z_m` as a membership table.
pub fn two_b_minus_two_b(b: &[u64], m: u64) -> Vec<bool> {
    let mut diff = vec![false; m as usize];
    for &x in b {
        for &y in b {
            diff[((x + m - y % m) % m) as usize] = true;
        }
    }
    let d: Vec<u64> = (0..m).filter(|&v| diff[v as usize]).collect();
    let mut out = vec![false; m as usize];
    for &x in &d {
        for &y in &d {
            out[((x + y) % m) as usize] = true;
        }
    }
    out
}

/// First element of `a` missing from `p`, or `None` if `a` is contained.
pub fn gap_containment(p: &Gap, a: &IntegerSet, enum_cap: u128) -> Result<Option<i64>> {
    let (elems, _) = gap_enumerate(p, enum_cap)?;
    Ok(a.iter().find(|&x| !elems.contains(x)))
}

/// First `z` not in `Y - Y + X`, or `None` if covered.
pub fn covering_check(y: &IntegerSet, z: &IntegerSet, x: &IntegerSet) -> Option<i64> {
    z.iter().find(|&zv| {
        !x.iter().any(|xv| {
            // zv - xv in Y - Y  <=>  (Y + (zv - xv)) meets Y
            let shift = zv as i128 - xv as i128;
            y.iter().any(|yv| {
                i64::try_from(yv as i128 + shift).is_ok_and(|w| y.contains(w))
            })
        })
    })
}
