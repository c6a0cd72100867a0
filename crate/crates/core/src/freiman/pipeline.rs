//! The full cover construction: model into Z_m, find a Bohr set in 2B − 2B,
//! a GAP inside it, pull it back and cover the input with translates.

use std::collections::HashMap;

use num_rational::Ratio;
use rand::Rng;
use serde::Serialize;

use crate::error::{cap, Error, Result};
use crate::freiman::bogolyubov::bogolyubov;
use crate::freiman::bohr_gap::{gap_in_bohr, LatticeMode};
use crate::freiman::cover::ruzsa_cover;
use crate::freiman::modeling::{minimal_modulus, modeling_lemma, ModelFailure, ModelOutcome, StrictCheck};
use crate::gap::{Gap, GapIndex};
use crate::limits::Limits;
use crate::primes::{next_prime, prev_prime};
use crate::sets::{doubling_constant, IntegerSet};

#[derive(Debug, Clone, Copy)]
pub struct FreimanConfig {
    /// Failure exponent: the modeling step is retried gamma·ceil(log2 n) + 1 times.
    pub gamma: u32,
    /// Isomorphism order of the modeling step.
    pub s: usize,
    pub eps: Ratio<u64>,
    pub lattice: LatticeMode,
    pub limits: Limits,
}

impl Default for FreimanConfig {
    fn default() -> Self {
        FreimanConfig {
            gamma: 1,
            s: 8,
            eps: Ratio::new(1, 4),
            lattice: LatticeMode::Auto,
            limits: Limits::default(),
        }
    }
}

/// Why an attempt was discarded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum AttemptFailure {
    Model(ModelFailure),
    /// ψ or its lift to 2A' − 2A' merged two integers.
    NotInjective { value: i64, other: i64 },
    /// ψ disagrees on two representations of one integer.
    NotHomomorphic { value: i64 },
    /// A point of P has no preimage in 2A' − 2A'.
    MissingPreimage { residue: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreimanMetrics {
    pub n: usize,
    pub doubling: String,
    /// Modulus actually used.
    pub m: u64,
    /// 4·C^16·n, when it fits in 64 bits.
    pub m_lower_bound: Option<u64>,
    /// True when the admissible modulus exceeded `Limits::max_modulus`.
    pub modulus_capped: bool,
    pub q: u64,
    pub attempts: usize,
    pub failures: Vec<AttemptFailure>,
    pub strict: StrictCheck,
    pub a_prime: usize,
    pub bohr_dim: usize,
    pub p_volume: u128,
    pub cover_size: usize,
    pub dim: usize,
    pub volume: u128,
}

/// A GAP containing the input, with the pieces it was assembled from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreimanCover {
    pub gap: Gap,
    /// The pulled-back GAP Q ⊆ 2A − 2A.
    pub q_gap: Gap,
    pub x: IntegerSet,
    /// Coordinates of every input element in `gap`, each re-evaluated.
    #[serde(skip)]
    pub coords: Vec<(i64, Vec<u64>)>,
    pub metrics: FreimanMetrics,
}

/// Modulus for the pipeline: the smallest prime above 4·C^{2s}·n, or the
/// largest prime below the cap when that is smaller.
fn choose_modulus(a: &IntegerSet, s: usize, limits: &Limits) -> Result<(u64, Option<u64>, bool)> {
    let c = doubling_constant(a)?;
    let lower = minimal_modulus(*c.numer(), *c.denom(), s, a.len());
    let faithful = lower.and_then(|l| l.checked_add(1)).and_then(next_prime);
    match faithful {
        Some(m) if m <= limits.max_modulus => Ok((m, lower, false)),
        _ => {
            let m = prev_prime(limits.max_modulus).ok_or(Error::NoPrime(limits.max_modulus as u128))?;
            Ok((m, lower, true))
        }
    }
}

/// `2X` with ψ-images, checking ψ is consistent and injective on the way.
fn lift_table(
    pairs_of: &[(i64, u64)],
    minus: bool,
    m: u64,
    cap_len: usize,
) -> Result<std::result::Result<HashMap<i64, u64>, AttemptFailure>> {
    cap("pull-back table", (pairs_of.len() as u128).pow(2), cap_len as u128 * 4)?;
    let mut fwd: HashMap<i64, u64> = HashMap::new();
    let mut back: HashMap<u64, i64> = HashMap::new();
    for &(u, ru) in pairs_of {
        for &(w, rw) in pairs_of {
            let (v, r) = if minus {
                (u.checked_sub(w).ok_or(Error::Overflow("lift"))?, (ru + m - rw) % m)
            } else {
                (u.checked_add(w).ok_or(Error::Overflow("lift"))?, (ru + rw) % m)
            };
            match fwd.get(&v) {
                Some(&old) if old != r => return Ok(Err(AttemptFailure::NotHomomorphic { value: v })),
                Some(_) => continue,
                None => {}
            }
            if let Some(&other) = back.get(&r) {
                return Ok(Err(AttemptFailure::NotInjective { value: v, other }));
            }
            fwd.insert(v, r);
            back.insert(r, v);
        }
    }
    Ok(Ok(fwd))
}

/// Q = ψ₂^{-1}(P) as an integer GAP, verified point by point.
fn pull_back(
    a_prime: &IntegerSet,
    psi: impl Fn(i64) -> u64,
    p: &Gap,
    m: u64,
    limits: &Limits,
) -> Result<std::result::Result<Gap, AttemptFailure>> {
    if p.volume() == 1 {
        return Ok(Ok(Gap::point(0)));
    }
    let singles: Vec<(i64, u64)> = a_prime.iter().map(|x| (x, psi(x))).collect();
    let two = match lift_table(&singles, false, m, limits.set_cap)? {
        Ok(t) => t,
        Err(f) => return Ok(Err(f)),
    };
    let mut two: Vec<(i64, u64)> = two.into_iter().collect();
    two.sort_unstable();
    let diff = match lift_table(&two, true, m, limits.set_cap)? {
        Ok(t) => t,
        Err(f) => return Ok(Err(f)),
    };
    let inverse: HashMap<u64, i64> = diff.iter().map(|(&v, &r)| (r, v)).collect();
    let q0 = inverse[&0];
    let mut gens = Vec::with_capacity(p.dim());
    for &x in &p.generators {
        let r = (x as u64) % m;
        match inverse.get(&r) {
            Some(&v) => gens.push(v - q0),
            None => return Ok(Err(AttemptFailure::MissingPreimage { residue: r })),
        }
    }
    let q = Gap::new(q0, gens, p.lengths.clone())?;
    // every point of Q must lie in 2A' − 2A' and map onto the matching point of P
    let mut ok = Ok(());
    let points = q.points(limits.enum_cap)?;
    let pm = m as i128;
    for (value, coords) in &points {
        let want = coords
            .iter()
            .zip(&p.generators)
            .map(|(&l, &y)| l as i128 * y as i128)
            .sum::<i128>()
            .rem_euclid(pm) as u64;
        if diff.get(value) != Some(&want) {
            ok = Err(AttemptFailure::MissingPreimage { residue: want });
            break;
        }
    }
    let distinct: std::collections::HashSet<i64> = points.iter().map(|p| p.0).collect();
    if distinct.len() != points.len() {
        ok = Err(AttemptFailure::NotInjective { value: q.base, other: q.base });
    }
    Ok(ok.map(|_| q))
}

/// Assembles Q − Q + X. Dimensions: one per dimension of Q with length
/// 2L − 1, then one {0, x} dimension per nonzero x in X.
fn assemble(q: &Gap, x: &IntegerSet) -> Result<(Gap, Vec<usize>)> {
    let mut base: i128 = 0;
    let mut gens = Vec::new();
    let mut lens = Vec::new();
    for (&y, &l) in q.generators.iter().zip(&q.lengths) {
        if l >= 2 {
            base -= (l as i128 - 1) * y as i128;
            gens.push(y);
            lens.push(2 * l - 1);
        }
    }
    let mut slot = Vec::with_capacity(x.len());
    for xv in x.iter() {
        if xv == 0 {
            slot.push(usize::MAX);
        } else {
            slot.push(gens.len());
            gens.push(xv);
            lens.push(2);
        }
    }
    let base = i64::try_from(base).map_err(|_| Error::Overflow("cover base"))?;
    if gens.is_empty() {
        return Ok((Gap::point(base), slot));
    }
    let g = Gap::new(base, gens, lens)?;
    g.bounds()?;
    Ok((g, slot))
}

/// Builds a GAP containing `a`. Containment is checked on every call by
/// re-evaluating explicit coordinates for each element.
pub fn freiman_gap<R: Rng + ?Sized>(a: &IntegerSet, cfg: &FreimanConfig, rng: &mut R) -> Result<FreimanCover> {
    if a.is_empty() {
        return Err(Error::Empty("freiman_gap"));
    }
    let n = a.len();
    let limits = cfg.limits;
    let (m, lower, capped) = choose_modulus(a, cfg.s, &limits)?;
    let log2n = (usize::BITS - (n - 1).leading_zeros()) as usize; // ceil(log2 n)
    let attempts = cfg.gamma as usize * log2n + 1;
    let mut failures = Vec::new();

    for attempt in 0..attempts {
        let model = match modeling_lemma(a, cfg.s, m, rng, limits.set_cap)? {
            ModelOutcome::Success(model) => model,
            ModelOutcome::Failure(f) => {
                failures.push(AttemptFailure::Model(f));
                continue;
            }
        };
        let mut b: Vec<u64> = model.a_prime.iter().map(|x| model.psi(x)).collect();
        b.sort_unstable();
        if let Some(w) = b.windows(2).find(|w| w[0] == w[1]) {
            let clash: Vec<i64> = model.a_prime.iter().filter(|&x| model.psi(x) == w[0]).collect();
            failures.push(AttemptFailure::NotInjective { value: clash[0], other: clash[1] });
            continue;
        }
        let spec = bogolyubov(&b, m)?;
        let mut spec = spec;
        spec.eps = cfg.eps;
        let p = gap_in_bohr(&spec, cfg.lattice, limits.enum_cap)?;
        let q = match pull_back(&model.a_prime, |x| model.psi(x), &p.gap, m, &limits)? {
            Ok(q) => q,
            Err(f) => {
                failures.push(f);
                continue;
            }
        };
        let q_index = GapIndex::build(&q, limits.enum_cap)?;
        let q_points: IntegerSet = q.points(limits.enum_cap)?.into_iter().map(|(v, _)| v).collect();
        let cover = ruzsa_cover(&q_points, a)?;
        let (gap, slot) = assemble(&q, &cover.x)?;

        let mut coords = Vec::with_capacity(n);
        let long: Vec<usize> = (0..q.dim()).filter(|&i| q.lengths[i] >= 2).collect();
        for w in &cover.witnesses {
            let trivial = long.is_empty() && slot.iter().all(|&s| s == usize::MAX);
            let mut c = vec![0u64; gap.dim()];
            if !trivial {
                let lt = q_index.coords(w.to).expect("Q point");
                let lf = q_index.coords(w.from).expect("Q point");
                for (k, &i) in long.iter().enumerate() {
                    c[k] = lt[i] + q.lengths[i] - 1 - lf[i];
                }
                let xi = cover.x.elements().binary_search(&w.x).expect("x in X");
                if slot[xi] != usize::MAX {
                    c[slot[xi]] = 1;
                }
            }
            if gap.eval(&c)? != Some(w.z) {
                return Err(Error::Check(format!("cover misses input element {}", w.z)));
            }
            coords.push((w.z, c));
        }

        let c = doubling_constant(a)?;
        let metrics = FreimanMetrics {
            n,
            doubling: format!("{}/{}", c.numer(), c.denom()),
            m,
            m_lower_bound: lower,
            modulus_capped: capped,
            q: model.q,
            attempts: attempt + 1,
            failures,
            strict: model.strict,
            a_prime: model.a_prime.len(),
            bohr_dim: spec.freqs.len(),
            p_volume: p.gap.volume(),
            cover_size: cover.x.len(),
            dim: gap.dim(),
            volume: gap.volume(),
        };
        return Ok(FreimanCover { gap, q_gap: q, x: cover.x, coords, metrics });
    }
    Err(Error::RetriesExhausted(attempts))
}
