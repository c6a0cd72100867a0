//! Sumsets with one witness pair per sum.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    /// FFT when the value range is small relative to `|A|·|B|`.
    #[default]
    Auto,
    /// Dense convolution of indicator vectors over the value range.
    Fft,
    /// All `|A|·|B|` pairs, deduplicated by sorting.
    Hash,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumsetCaps {
    /// Largest value range the dense backend accepts.
    pub dense_range: u64,
    /// Largest `|A|·|B|` the pairwise backend accepts.
    pub pairs: u64,
}

impl Default for SumsetCaps {
    fn default() -> Self {
        SumsetCaps { dense_range: 1 << 24, pairs: 1 << 26 }
    }
}

/// `A + B` in increasing order. `witness[i] = (p, q)` with
/// `a[p] + b[q] = values[i]`, `p` as small as possible.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Sumset {
    pub values: Vec<i64>,
    pub witness: Vec<(u32, u32)>,
}

impl Sumset {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn range(a: &[i64], b: &[i64]) -> Result<(i64, u64)> {
    let lo = a[0].checked_add(b[0]).ok_or(Error::Overflow("sumset range"))?;
    let hi = a[a.len() - 1].checked_add(b[b.len() - 1]).ok_or(Error::Overflow("sumset range"))?;
    Ok((lo, hi.abs_diff(lo) + 1))
}

/// `a` and `b` must be strictly increasing.
pub fn sparse_sumset(a: &[i64], b: &[i64], backend: Backend, caps: SumsetCaps) -> Result<Sumset> {
    debug_assert!(a.windows(2).all(|w| w[0] < w[1]) && b.windows(2).all(|w| w[0] < w[1]));
    if a.is_empty() || b.is_empty() {
        return Ok(Sumset::default());
    }
    if a.len() > u32::MAX as usize || b.len() > u32::MAX as usize {
        return Err(Error::Invalid("sumset operand too large".into()));
    }
    let (_, width) = range(a, b)?;
    let pairs = (a.len() as u64).saturating_mul(b.len() as u64);
    let backend = match backend {
        Backend::Auto if width <= caps.dense_range && (width <= pairs || pairs > caps.pairs) => Backend::Fft,
        Backend::Auto => Backend::Hash,
        other => other,
    };
    match backend {
        Backend::Fft if width <= caps.dense_range => Ok(dense(a, b)),
        Backend::Hash if pairs <= caps.pairs => Ok(pairwise(a, b)),
        _ => Err(Error::CapExceeded {
            what: "sparse_sumset (range for fft, |A|·|B| for hash)",
            needed: if backend == Backend::Fft { width as u128 } else { pairs as u128 },
            cap: if backend == Backend::Fft { caps.dense_range as u128 } else { caps.pairs as u128 },
        }),
    }
}

fn pairwise(a: &[i64], b: &[i64]) -> Sumset {
    let mut all: Vec<(i64, u32, u32)> = Vec::with_capacity(a.len() * b.len());
    for (p, &x) in a.iter().enumerate() {
        for (q, &y) in b.iter().enumerate() {
            all.push((x + y, p as u32, q as u32));
        }
    }
    all.sort_unstable();
    all.dedup_by_key(|r| r.0);
    let mut out = Sumset { values: Vec::with_capacity(all.len()), witness: Vec::with_capacity(all.len()) };
    for (v, p, q) in all {
        out.values.push(v);
        out.witness.push((p, q));
    }
    out
}

fn dense(a: &[i64], b: &[i64]) -> Sumset {
    let (lo, width) = range(a, b).expect("checked by caller");
    let width = width as usize;
    let size = width.next_power_of_two();
    let mut fa = vec![Complex::new(0.0f64, 0.0); size];
    let mut fb = fa.clone();
    for &x in a {
        fa[(x - a[0]) as usize].re = 1.0;
    }
    let b_width = (b[b.len() - 1] - b[0]) as usize + 1;
    let mut in_b = vec![u32::MAX; b_width];
    for (q, &y) in b.iter().enumerate() {
        fb[(y - b[0]) as usize].re = 1.0;
        in_b[(y - b[0]) as usize] = q as u32;
    }
    let mut planner = FftPlanner::new();
    let fwd = planner.plan_fft_forward(size);
    let inv = planner.plan_fft_inverse(size);
    fwd.process(&mut fa);
    fwd.process(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= *y;
    }
    inv.process(&mut fa);
    let scale = size as f64;
    let b_max = b[b.len() - 1];
    let mut out = Sumset::default();
    for (off, c) in fa.iter().take(width).enumerate() {
        if c.re / scale <= 0.5 {
            continue;
        }
        let v = lo + off as i64;
        let start = a.partition_point(|&x| x < v - b_max);
        let hit = a[start..].iter().enumerate().find_map(|(i, &x)| {
            let d = v - x - b[0];
            if d < 0 {
                return None;
            }
            in_b.get(d as usize).filter(|&&q| q != u32::MAX).map(|&q| ((start + i) as u32, q))
        });
        let (p, q) = hit.expect("convolution count matched by a pair");
        out.values.push(v);
        out.witness.push((p, q));
    }
    out
}
