//! Trade long GAP dimensions for several short ones.

use crate::error::{Error, Result};
use crate::gap::Gap;

/// Smallest integer `T >= 2` with `T^d >= n^2`, i.e. `max(2, ceil(n^{2/d}))`.
pub fn length_target(n: usize, d: usize) -> u64 {
    let goal = (n as u128).saturating_mul(n as u128);
    let mut t = 2u64;
    loop {
        let pow = (0..d).try_fold(1u128, |acc, _| acc.checked_mul(t as u128));
        if pow.is_none_or(|p| p >= goal) {
            return t;
        }
        t += 1;
    }
}

/// Replaces every dimension `(y, L)` with `L > T` by base-`T` digit
/// dimensions `(y·T^{j−1}, T)`, the top digit shortened to what `L` needs.
/// The result contains the input GAP and every length is at most `T`.
pub fn split_dimensions(p: &Gap, n: usize) -> Result<Gap> {
    let t = length_target(n, p.dim());
    let mut gens = Vec::new();
    let mut lens = Vec::new();
    for (&y, &l) in p.generators.iter().zip(&p.lengths) {
        if l <= t {
            gens.push(y);
            lens.push(l);
            continue;
        }
        let mut scale: u64 = 1;
        let mut rest = l; // digits still needed to reach l − 1
        while rest > t {
            gens.push(y.checked_mul(scale as i64).ok_or(Error::Overflow("split_dimensions"))?);
            lens.push(t);
            scale = scale.checked_mul(t).ok_or(Error::Overflow("split_dimensions"))?;
            rest = rest.div_ceil(t);
        }
        gens.push(y.checked_mul(scale as i64).ok_or(Error::Overflow("split_dimensions"))?);
        lens.push(rest);
    }
    let out = Gap::new(p.base, gens, lens)?;
    out.bounds()?;
    Ok(out)
}
