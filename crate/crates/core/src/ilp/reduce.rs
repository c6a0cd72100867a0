//! Reductions between BILP, HBILP and subset sum. Each reduction keeps what
//! it needs to map solutions forward and decode them back.

use std::collections::HashMap;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freiman::{freiman_gap, split_dimensions, FreimanConfig, FreimanMetrics};
use crate::gap::{Gap, GapIndex};
use crate::ilp::{BilpInstance, HbilpInstance};
use crate::matrix::Matrix;
use crate::sets::IntegerSet;

fn ovf(what: &'static str) -> Error {
    Error::Overflow(what)
}

fn mul(a: i128, b: i128, what: &'static str) -> Result<i128> {
    a.checked_mul(b).ok_or(ovf(what))
}

fn add(a: i128, b: i128, what: &'static str) -> Result<i128> {
    a.checked_add(b).ok_or(ovf(what))
}

fn to_i64(v: i128, what: &'static str) -> Result<i64> {
    i64::try_from(v).map_err(|_| ovf(what))
}

/// `[[A + ΔJ, ΔJ], [J, J]]`.
fn shifted_block(a: &Matrix) -> Result<Matrix> {
    let (m, n) = (a.rows(), a.cols());
    let delta = i64::try_from(a.delta()).map_err(|_| ovf("nonnegative shift"))?;
    let mut out = Matrix::zeros(m + 1, 2 * n);
    for i in 0..m {
        for j in 0..n {
            out.set(i, j, a.get(i, j).checked_add(delta).ok_or(ovf("nonnegative shift"))?);
            out.set(i, n + j, delta);
        }
    }
    for j in 0..2 * n {
        out.set(m, j, 1);
    }
    Ok(out)
}

/// `y = (x, 1^{n−|x|}, 0^{|x|})`, a solution with support exactly `n`.
fn pad_support(x: &[i64]) -> Vec<i64> {
    let ones = x.iter().filter(|&&v| v == 1).count();
    let n = x.len();
    let mut y = x.to_vec();
    y.extend(std::iter::repeat_n(1, n - ones));
    y.extend(std::iter::repeat_n(0, ones));
    y
}

/// Nonnegative BILP in which every solution has support exactly `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonnegBilp {
    pub instance: BilpInstance,
    /// Number of original variables.
    pub n: usize,
}

impl NonnegBilp {
    pub fn forward(&self, x: &[i64]) -> Vec<i64> {
        pad_support(x)
    }

    pub fn decode(&self, y: &[i64]) -> Vec<i64> {
        y[..self.n].to_vec()
    }
}

pub fn bilp_nonnegative(inst: &BilpInstance) -> Result<NonnegBilp> {
    inst.validate()?;
    if !inst.is_binary() {
        return Err(Error::Invalid("bilp_nonnegative needs binary variables".into()));
    }
    let n = inst.a.cols() as i64;
    let delta = inst.a.delta() as i64;
    let shift = n.checked_mul(delta).ok_or(ovf("nonnegative shift"))?;
    let mut b = inst
        .b
        .iter()
        .map(|&v| v.checked_add(shift).ok_or(ovf("nonnegative shift")))
        .collect::<Result<Vec<_>>>()?;
    b.push(n);
    Ok(NonnegBilp { instance: BilpInstance { a: shifted_block(&inst.a)?, b, bounds: None }, n: inst.a.cols() })
}

/// Nonnegative HBILP in which every solution has support exactly `n` and
/// every column value is positive.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonnegHbilp {
    pub instance: HbilpInstance,
    pub n: usize,
    /// Weight of the appended row.
    pub big: i128,
    /// The original target was outside every attainable range, so the
    /// output target is one more than the sum of all column values.
    pub unreachable: bool,
}

impl NonnegHbilp {
    pub fn forward(&self, x: &[i64]) -> Vec<i64> {
        pad_support(x)
    }

    pub fn decode(&self, y: &[i64]) -> Vec<i64> {
        y[..self.n].to_vec()
    }
}

/// With `K = Δ·Σs + M` every candidate `y` satisfies
/// `<A y_1, s> − t = (n − |y|)·K`, and `K` exceeds twice the attainable
/// `|<A y_1, s>|`, which forces `|y| = n`.
pub fn hbilp_nonnegative(inst: &HbilpInstance) -> Result<NonnegHbilp> {
    let (m, n) = (inst.a.rows() as i128, inst.a.cols() as i128);
    let delta = inst.a.delta() as i128;
    let what = "hbilp_nonnegative";
    let bound = mul(mul(mul(n, m, what)?, delta, what)?, inst.s_inf(), what)?;
    let big = add(mul(3, bound, what)?, 1, what)?;
    let sum_s = inst.s.iter().try_fold(0i128, |acc, &v| add(acc, v, what))?;
    let k = add(mul(delta, sum_s, what)?, big, what)?;
    let mut s = inst.s.clone();
    s.push(big);
    let a = shifted_block(&inst.a)?;
    let mut out = HbilpInstance { a, s, t: 0 };
    let unreachable = inst.t.abs() > bound;
    out.t = if unreachable {
        let total = out.column_values()?.into_iter().try_fold(0i128, |acc, v| add(acc, v, what))?;
        add(total, 1, what)?
    } else {
        add(inst.t, mul(n, k, what)?, what)?
    };
    Ok(NonnegHbilp { instance: out, n: inst.a.cols(), big, unreachable })
}

/// Row registers in base `q = nΔ + 1`: `s = (q^0, …, q^{m−1})`,
/// `t′ = <b, s>`. A row target outside `[0, nΔ]` can never be met, so the
/// target becomes `q^m`, one more than the largest attainable value.
pub fn bilp_to_hbilp(inst: &BilpInstance) -> Result<HbilpInstance> {
    inst.validate()?;
    if !inst.is_binary() {
        return Err(Error::Invalid("bilp_to_hbilp needs binary variables".into()));
    }
    if !inst.a.is_nonnegative() {
        return Err(Error::Invalid("bilp_to_hbilp needs a nonnegative matrix; apply bilp_nonnegative first".into()));
    }
    let what = "bilp_to_hbilp";
    let top = mul(inst.a.cols() as i128, inst.a.delta() as i128, what)?;
    let q = add(top, 1, what)?;
    let mut s = Vec::with_capacity(inst.a.rows());
    let mut pow = 1i128;
    for _ in 0..inst.a.rows() {
        s.push(pow);
        pow = mul(pow, q, what)?;
    }
    let in_range = inst.b.iter().all(|&v| (0..=top).contains(&(v as i128)));
    let t = if in_range {
        inst.b.iter().zip(&s).try_fold(0i128, |acc, (&b, &w)| add(acc, mul(b as i128, w, what)?, what))?
    } else {
        pow
    };
    HbilpInstance::new(inst.a.clone(), s, t)
}

/// Subset-sum instance built from an HBILP, with its decoder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HbilpToSs {
    /// One value per column of `[[Ã, 0], [R, R̄]]`, in column order.
    pub z: Vec<i64>,
    /// Dummy elements above the target; never part of a solution.
    pub padding: Vec<i64>,
    pub target: i64,
    /// Digit base `D` of the register block.
    pub base: i64,
    pub digits: usize,
    /// Weight `M` separating the top rows from the register block.
    pub modulus: i128,
    pub unreachable: bool,
    pub normalized: NonnegHbilp,
    pub original: HbilpInstance,
}

impl HbilpToSs {
    pub fn set(&self) -> IntegerSet {
        self.z.iter().chain(&self.padding).copied().collect()
    }

    /// Subset of `Z` reached by the concatenation `(y, y)` of the padded
    /// solution `y`.
    pub fn forward(&self, x: &[i64]) -> Vec<i64> {
        let y = self.normalized.forward(x);
        let np = y.len();
        (0..np).filter(|&j| y[j] == 1).flat_map(|j| [self.z[j], self.z[np + j]]).collect()
    }

    /// Recovers a solution of the original instance from a subset of `Z`
    /// summing to the target.
    pub fn decode(&self, values: &[i64]) -> Result<Vec<i64>> {
        let pos: HashMap<i64, usize> = self.z.iter().enumerate().map(|(j, &v)| (v, j)).collect();
        let mut xp = vec![0i64; self.z.len()];
        for v in values {
            let j = *pos.get(v).ok_or_else(|| Error::Check(format!("{v} is not a reduction element")))?;
            if xp[j] == 1 {
                return Err(Error::Check(format!("{v} chosen twice")));
            }
            xp[j] = 1;
        }
        let np = self.z.len() / 2;
        let x = self.normalized.decode(&xp[..np]);
        if !self.original.check(&x) {
            return Err(Error::Check("decoded vector does not solve the HBILP instance".into()));
        }
        Ok(x)
    }
}

/// Smallest `k >= 1` with `base^k >= n`.
fn digit_count(base: i128, n: usize) -> usize {
    let mut k = 1;
    let mut pow = base;
    while pow < n as i128 {
        pow = pow.saturating_mul(base);
        k += 1;
    }
    k
}

/// Normalizes, appends the digit registers `R` (lexicographic base-`D`
/// columns) and `R̄ = D·J − R` weighted by `v_r = M·D^r`, and reads each
/// column's dot product with `s′` as one subset-sum element.
///
/// The top rows contribute less than `M` to any subset, so a subset
/// summing to `t′` has first block solving the normalized instance.
pub fn hbilp_to_ss(inst: &HbilpInstance, pad: bool) -> Result<HbilpToSs> {
    let what = "hbilp_to_ss";
    let norm = hbilp_nonnegative(inst)?;
    let ni = &norm.instance;
    let np = ni.a.cols();
    let mp = ni.a.rows() as i128;
    let delta = ni.a.delta() as i128;
    let base = delta.max(2);
    let k = digit_count(base, np);
    let big = add(mul(mul(mul(np as i128, mp, what)?, delta, what)?, ni.s_inf(), what)?, 1, what)?;
    let mut weights = Vec::with_capacity(k);
    let mut pow = 1i128;
    for _ in 0..k {
        weights.push(mul(big, pow, what)?);
        pow = mul(pow, base, what)?;
    }
    let v_norm = weights.iter().try_fold(0i128, |acc, &w| add(acc, w, what))?;
    let tops = ni.column_values()?;
    let mut z = vec![0i64; 2 * np];
    for j in 0..np {
        // lexicographic order: most significant digit first, weight D^{k−1}
        let mut rest = j as i128;
        let mut reg = 0i128;
        let mut comp = 0i128;
        for r in 0..k {
            let d = rest % base;
            rest /= base;
            reg = add(reg, mul(d, weights[r], what)?, what)?;
            comp = add(comp, mul(base - d, weights[r], what)?, what)?;
        }
        if tops[j] <= 0 || tops[j] >= big {
            return Err(Error::Check(format!("column {j} value {} outside (0, M)", tops[j])));
        }
        z[j] = to_i64(add(tops[j], reg, what)?, what)?;
        z[np + j] = to_i64(comp, what)?;
    }
    let mut seen = HashMap::with_capacity(z.len());
    for (j, &v) in z.iter().enumerate() {
        if let Some(i) = seen.insert(v, j) {
            return Err(Error::Check(format!("reduction values of columns {i} and {j} coincide")));
        }
    }
    let q = inst.a.cols() as i128;
    let unreachable = norm.unreachable || !(0..big).contains(&ni.t);
    let target = if unreachable {
        let total = z.iter().try_fold(0i128, |acc, &v| add(acc, v as i128, what))?;
        add(total, 1, what)?
    } else {
        add(ni.t, mul(mul(q, base, what)?, v_norm, what)?, what)?
    };
    let target = to_i64(target, what)?;
    let mut padding = Vec::new();
    if pad {
        // every element is positive, so anything above the target is unusable
        for &v in &z {
            let p = target.checked_add(v).ok_or(ovf(what))?;
            if !seen.contains_key(&p) {
                padding.push(p);
            }
        }
    }
    Ok(HbilpToSs {
        z,
        padding,
        target,
        base: base as i64,
        digits: k,
        modulus: big,
        unreachable,
        normalized: norm,
        original: inst.clone(),
    })
}

/// HBILP encoding of a subset-sum instance by GAP coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SsToHbilp {
    pub instance: HbilpInstance,
    /// Element encoded by each column.
    pub elements: Vec<i64>,
    /// Split cover whose coordinates form the columns.
    pub gap: Gap,
    pub cover: FreimanMetrics,
}

impl SsToHbilp {
    pub fn decode(&self, x: &[i64]) -> IntegerSet {
        self.elements.iter().zip(x).filter(|(_, &xi)| xi == 1).map(|(&v, _)| v).collect()
    }
}

/// Column `j` holds the lex-least coordinates of `z_j` in the split cover,
/// followed by a 1 whose step is the cover's base point, so that
/// `<A x, s> = Σ_{x_j = 1} z_j`.
pub fn ss_to_hbilp<R: Rng + ?Sized>(z: &IntegerSet, t: i64, cfg: &FreimanConfig, rng: &mut R) -> Result<SsToHbilp> {
    let cover = freiman_gap(z, cfg, rng)?;
    let gap = split_dimensions(&cover.gap, z.len())?;
    let index = GapIndex::build(&gap, cfg.limits.enum_cap)?;
    let d = gap.dim();
    let mut a = Matrix::zeros(d + 1, z.len());
    for (j, v) in z.iter().enumerate() {
        let c = index.coords(v).ok_or_else(|| Error::Check(format!("{v} missing from the split cover")))?;
        for (i, &ci) in c.iter().enumerate() {
            a.set(i, j, i64::try_from(ci).map_err(|_| ovf("ss_to_hbilp"))?);
        }
        a.set(d, j, 1);
    }
    let mut s: Vec<i128> = gap.generators.iter().map(|&y| y as i128).collect();
    s.push(gap.base as i128);
    let instance = HbilpInstance::new(a, s, t as i128)?;
    let sums = instance.column_values()?;
    if sums.iter().zip(z.iter()).any(|(&c, v)| c != v as i128) {
        return Err(Error::Check("GAP coordinates do not re-evaluate".into()));
    }
    Ok(SsToHbilp { instance, elements: z.elements().to_vec(), gap, cover: cover.metrics })
}
