//! A proper GAP inside a Bohr set, read off the successive minima of the
//! lattice Z^d + Z·(r_1/m, ..., r_d/m) with respect to the cube [-eps, eps]^d.

use num_bigint::BigUint;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{cap, Error, Result};
use crate::freiman::bogolyubov::BohrSpec;
use crate::gap::Gap;
use crate::primes::is_prime;

/// A point of the lattice, stored as numerators over `m`, with its residue `gamma`:
/// the point lies in `gamma·v + Z^d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticePoint {
    pub gamma: u64,
    pub numerators: Vec<i64>,
    pub m: u64,
}

impl LatticePoint {
    pub fn coords(&self) -> Vec<Ratio<i64>> {
        self.numerators.iter().map(|&c| Ratio::new(c, self.m as i64)).collect()
    }

    /// Numerator of the L∞ norm over `m`.
    pub fn norm_numerator(&self) -> u64 {
        self.numerators.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn norm(&self) -> Ratio<u64> {
        Ratio::new(self.norm_numerator(), self.m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeMode {
    /// Enumerate all 2^d·m points of the lattice in [-1, 1)^d.
    Full,
    /// Enumerate only points shorter than eps/d, which fixes every dimension
    /// of length at least two. Valid when eps/d <= 1/2.
    Short,
    /// `Short` when valid, else `Full`.
    Auto,
}

/// A GAP in Z_m (generators are residues) plus the lattice data behind it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BohrGap {
    pub m: u64,
    pub gap: Gap,
    /// Directional basis vectors found, shortest first.
    pub basis: Vec<LatticePoint>,
    /// `lambda_i = ||b_i|| / eps`.
    #[serde(skip)]
    pub minima: Vec<Ratio<u64>>,
    pub mode: LatticeMode,
}

impl BohrGap {
    /// All residues of the GAP, in coordinate order.
    pub fn residues(&self, enum_cap: u128) -> Result<Vec<u64>> {
        cap("Bohr GAP volume", self.gap.volume(), enum_cap)?;
        let m = self.m as i128;
        let mut out = vec![self.gap.base.rem_euclid(self.m as i64) as u64];
        for (&y, &l) in self.gap.generators.iter().zip(&self.gap.lengths) {
            let prev = out.clone();
            for k in 1..l {
                let step = ((y as i128 * k as i128).rem_euclid(m)) as u64;
                out.extend(prev.iter().map(|&p| ((p as u128 + step as u128) % m as u128) as u64));
            }
        }
        Ok(out)
    }
}

/// Incremental row echelon form over the integers.
struct Echelon {
    rows: Vec<(usize, Vec<i128>)>,
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the rows so far.
    fn insert(&mut self, v: &[i64]) -> Result<bool> {
        let mut v: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for (p, row) in &self.rows {
            let f = v[*p];
            if f == 0 {
                continue;
            }
            let g = row[*p];
            for (vi, &ri) in v.iter_mut().zip(row) {
                *vi = vi
                    .checked_mul(g)
                    .and_then(|a| ri.checked_mul(f).and_then(|b| a.checked_sub(b)))
                    .ok_or(Error::Overflow("lattice elimination"))?;
            }
            let g = v.iter().fold(0, |acc, &x| gcd(acc, x));
            if g > 1 {
                v.iter_mut().for_each(|x| *x /= g);
            }
        }
        match v.iter().position(|&x| x != 0) {
            Some(p) => {
                self.rows.push((p, v));
                Ok(true)
            }
            None => Ok(false),
        }
    }
}

fn centered(gamma: u64, r: u64, m: u64) -> i64 {
    let v = ((gamma as u128 * r as u128) % m as u128) as u64;
    if 2 * v >= m {
        v as i64 - m as i64
    } else {
        v as i64
    }
}

fn short_candidates(spec: &BohrSpec) -> Vec<LatticePoint> {
    let (m, d) = (spec.m, spec.freqs.len() as u128);
    let (en, ed) = (*spec.eps.numer() as u128, *spec.eps.denom() as u128);
    // keep points with norm·d·eps_den < m·eps_num, i.e. L >= 2
    let short = |c: i64| (c.unsigned_abs() as u128) * d * ed < m as u128 * en;
    let mut out = Vec::new();
    'gamma: for gamma in 1..m {
        let mut nums = Vec::with_capacity(spec.freqs.len());
        for &r in &spec.freqs {
            let c = centered(gamma, r, m);
            if !short(c) {
                continue 'gamma;
            }
            nums.push(c);
        }
        out.push(LatticePoint { gamma, numerators: nums, m });
    }
    out
}

fn full_candidates(spec: &BohrSpec, enum_cap: u128) -> Result<Vec<LatticePoint>> {
    let (m, d) = (spec.m, spec.freqs.len());
    let count = (m as u128).saturating_mul(1u128.checked_shl(d as u32).unwrap_or(u128::MAX));
    cap("lattice points in [-1,1)^d", count, enum_cap)?;
    let mut out = Vec::with_capacity(count as usize);
    for gamma in 0..m {
        let base: Vec<i64> = spec
            .freqs
            .iter()
            .map(|&r| ((gamma as u128 * r as u128) % m as u128) as i64)
            .collect();
        for mask in 0u64..(1u64 << d) {
            let nums: Vec<i64> = base
                .iter()
                .enumerate()
                .map(|(i, &c)| if mask >> i & 1 == 1 { c - m as i64 } else { c })
                .collect();
            if nums.iter().all(|&c| c == 0) {
                continue;
            }
            out.push(LatticePoint { gamma, numerators: nums, m });
        }
    }
    Ok(out)
}

/// Proper GAP `P ⊆ Bohr(R, eps)` with `|P| >= (eps/d)^d m`. Dimensions of
/// length one are dropped from `P`; their basis vectors stay in `basis`.
pub fn gap_in_bohr(spec: &BohrSpec, mode: LatticeMode, enum_cap: u128) -> Result<BohrGap> {
    let m = spec.m;
    if !is_prime(m) {
        return Err(Error::NotPrime(m));
    }
    let eps = spec.eps;
    if *eps.numer() == 0 || eps >= Ratio::from_integer(1) {
        return Err(Error::Invalid("Bohr width must lie in (0, 1)".into()));
    }
    let d = spec.freqs.len();
    if d == 0 {
        let gap = Gap::new(0, vec![1], vec![m])?;
        return Ok(BohrGap { m, gap, basis: vec![], minima: vec![], mode });
    }
    let short_ok = eps / (d as u64) <= Ratio::new(1, 2);
    let mode = match mode {
        LatticeMode::Auto if short_ok => LatticeMode::Short,
        LatticeMode::Auto => LatticeMode::Full,
        LatticeMode::Short if !short_ok => {
            return Err(Error::Invalid("short lattice mode needs eps/d <= 1/2".into()))
        }
        other => other,
    };
    let mut points = match mode {
        LatticeMode::Short => short_candidates(spec),
        _ => full_candidates(spec, enum_cap)?,
    };
    points.sort_by_key(|p| p.norm_numerator());

    let mut ech = Echelon::new();
    let mut basis = Vec::new();
    for p in points {
        if ech.rank() == d {
            break;
        }
        if ech.insert(&p.numerators)? {
            basis.push(p);
        }
    }

    let (en, ed) = (*eps.numer() as u128, *eps.denom() as u128);
    let mut gens = Vec::new();
    let mut lens = Vec::new();
    let mut minima = Vec::new();
    for b in &basis {
        let norm = b.norm_numerator() as u128;
        minima.push(Ratio::new((norm * ed) as u64, (m as u128 * en) as u64));
        // L = ceil(1 / (lambda d)) = ceil(m eps_num / (norm d eps_den))
        let len = (m as u128 * en).div_ceil(norm * d as u128 * ed);
        if len >= 2 {
            gens.push(b.gamma as i64);
            lens.push(len as u64);
        }
    }
    let gap = if gens.is_empty() { Gap::point(0) } else { Gap::new(0, gens, lens)? };
    let out = BohrGap { m, gap, basis, minima, mode };
    verify(spec, &out, enum_cap)?;
    Ok(out)
}

/// Properness, containment and the volume bound, checked exactly.
fn verify(spec: &BohrSpec, p: &BohrGap, enum_cap: u128) -> Result<()> {
    let res = p.residues(enum_cap)?;
    let mut seen = vec![false; spec.m as usize];
    for &x in &res {
        if std::mem::replace(&mut seen[x as usize], true) {
            return Err(Error::Check(format!("Bohr GAP not proper at residue {x}")));
        }
        if !spec.contains(x) {
            return Err(Error::Check(format!("Bohr GAP leaves the Bohr set at {x}")));
        }
    }
    if !volume_bound_holds(p.gap.volume(), spec) {
        return Err(Error::Check("Bohr GAP volume below (eps/d)^d m".into()));
    }
    Ok(())
}

/// `vol >= (eps/d)^d m`, exactly.
pub fn volume_bound_holds(vol: u128, spec: &BohrSpec) -> bool {
    let d = spec.freqs.len() as u32;
    if d == 0 {
        return vol >= spec.m as u128;
    }
    if vol == 0 {
        return false;
    }
    let (en, ed) = (*spec.eps.numer(), *spec.eps.denom());
    // vol · (d·ed)^d >= en^d · m
    let num = BigUint::from(d as u64) * BigUint::from(ed);
    let den = BigUint::from(en);
    if num >= den {
        // (num/den)^k only grows with k, so stop once it alone beats m
        let m = BigUint::from(spec.m);
        let (mut x, mut y) = (BigUint::from(1u8), BigUint::from(1u8));
        for _ in 0..d {
            x *= &num;
            y *= &den;
            if x >= &y * &m {
                return true;
            }
        }
        return BigUint::from(vol) * x >= y * m;
    }
    BigUint::from(vol) * num.pow(d) >= den.pow(d) * BigUint::from(spec.m)
}
