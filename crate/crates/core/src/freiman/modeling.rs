//! Map a large piece of an integer set into Z_m, preserving s-fold sums.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::primes::next_prime;
use crate::sets::{difference, sumset, IntegerSet};

/// Outcome of the check on s·φ(A') − s·φ(A').
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum StrictCheck {
    Passed,
    /// The sumset would have exceeded the set cap; only the weak check ran.
    Skipped { cap: usize },
}

/// A successful modeling step: `psi(x) = ((lambda * (x mod q)) mod q) mod m`
/// is a Freiman s-isomorphism on `a_prime` whenever `strict` is `Passed`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreimanModel {
    pub q: u64,
    pub lambda: u64,
    pub m: u64,
    pub s: usize,
    pub a_prime: IntegerSet,
    pub strict: StrictCheck,
}

impl FreimanModel {
    pub fn phi(&self, x: i64) -> u64 {
        phi(self.q, self.lambda, x)
    }

    pub fn psi(&self, x: i64) -> u64 {
        self.phi(x) % self.m
    }
}

fn phi(q: u64, lambda: u64, x: i64) -> u64 {
    let r = (x as i128).rem_euclid(q as i128) as u128;
    ((lambda as u128 * r) % q as u128) as u64
}

/// Which check rejected a multiplier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum ModelFailure {
    /// m divides the nonzero image φ(a) of an input element.
    Image { element: i64, image: u64 },
    /// m divides a nonzero element of s·φ(A') − s·φ(A').
    SumSet { value: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ModelOutcome {
    Success(FreimanModel),
    Failure(ModelFailure),
}

/// Smallest prime exceeding max(sA − sA) = s·diam(A).
pub fn modeling_prime(a: &IntegerSet, s: usize) -> Result<u64> {
    let bound = (s as u128)
        .checked_mul(a.diam()? as u128)
        .and_then(|v| v.checked_add(1))
        .filter(|&v| v <= u64::MAX as u128)
        .ok_or(Error::Overflow("modeling prime bound"))?;
    next_prime(bound as u64).ok_or(Error::NoPrime(bound))
}

/// Smallest admissible modulus 4·C^{2s}·n for doubling constant `c = num/den`,
/// rounded up to an integer. `None` if it exceeds `u64`.
pub fn minimal_modulus(num: u64, den: u64, s: usize, n: usize) -> Option<u64> {
    use num_bigint::BigUint;
    use num_traits::{ToPrimitive, Zero};
    let top = BigUint::from(4u32) * BigUint::from(num).pow(2 * s as u32) * BigUint::from(n);
    let bottom = BigUint::from(den).pow(2 * s as u32);
    let (quot, rem) = (&top / &bottom, &top % &bottom);
    let ceil = if rem.is_zero() { quot } else { quot + 1u32 };
    ceil.to_u64()
}

/// One randomized attempt. `set_cap` bounds the strict sumset check.
pub fn modeling_lemma<R: Rng + ?Sized>(
    a: &IntegerSet,
    s: usize,
    m: u64,
    rng: &mut R,
    set_cap: usize,
) -> Result<ModelOutcome> {
    if a.is_empty() {
        return Err(Error::Empty("modeling_lemma"));
    }
    if s < 2 || m < 2 {
        return Err(Error::Invalid("modeling_lemma needs s >= 2 and m >= 2".into()));
    }
    let q = modeling_prime(a, s)?;
    let lambda = if q == 2 { 1 } else { rng.gen_range(1..q) };

    // The literal check "m divides an element of φ(A)" would reject every set
    // containing a multiple of q, so zero images are exempt.
    for x in a.iter() {
        let image = phi(q, lambda, x);
        if image != 0 && image.is_multiple_of(m) {
            return Ok(ModelOutcome::Failure(ModelFailure::Image { element: x, image }));
        }
    }

    let width = q.div_ceil(s as u64);
    let mut counts = vec![0usize; s];
    for x in a.iter() {
        counts[(phi(q, lambda, x) / width) as usize] += 1;
    }
    let best = (0..s).max_by_key(|&k| (counts[k], std::cmp::Reverse(k))).expect("s >= 2");
    let a_prime: IntegerSet = a
        .iter()
        .filter(|&x| phi(q, lambda, x) / width == best as u64)
        .collect();

    let images: IntegerSet = a_prime.iter().map(|x| phi(q, lambda, x) as i64).collect();
    let strict = match images_sumset(&images, s, set_cap)? {
        None => StrictCheck::Skipped { cap: set_cap },
        Some(diffs) => {
            if let Some(value) = diffs.iter().find(|&e| e != 0 && e.rem_euclid(m as i64) == 0) {
                return Ok(ModelOutcome::Failure(ModelFailure::SumSet { value }));
            }
            StrictCheck::Passed
        }
    };
    Ok(ModelOutcome::Success(FreimanModel { q, lambda, m, s, a_prime, strict }))
}

/// s·X − s·X, or `None` when an intermediate set passes `cap`.
fn images_sumset(x: &IntegerSet, s: usize, cap: usize) -> Result<Option<IntegerSet>> {
    let mut acc = x.clone();
    for _ in 1..s {
        if acc.len().saturating_mul(x.len()) > cap.saturating_mul(4) {
            return Ok(None);
        }
        acc = sumset(&acc, x)?;
        if acc.len() > cap {
            return Ok(None);
        }
    }
    if acc.len().saturating_mul(acc.len()) > cap.saturating_mul(4) {
        return Ok(None);
    }
    let out = difference(&acc, &acc)?;
    Ok((out.len() <= cap).then_some(out))
}
