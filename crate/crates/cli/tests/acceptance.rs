//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Every instance is drawn from a seeded
//! ChaCha stream, so reruns see the same inputs.

use std::collections::{BTreeSet, HashSet};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use doubling::bench::{foursum_scaling, BenchConfig};
use doubling::freiman::bohr_gap::volume_bound_holds;
use doubling::freiman::{
    bogolyubov, freiman_gap, gap_in_bohr, modeling_lemma, ruzsa_cover, FreimanConfig, LatticeMode, ModelOutcome,
    StrictCheck,
};
use doubling::ilp::{
    bilp_feasibility_dp, bilp_nonnegative, bilp_to_hbilp, bounded_ilp_feasibility, hbilp_feasibility, hbilp_to_ss,
    small_support_candidates, ss_to_hbilp, BilpInstance, HbilpInstance,
};
use doubling::ksum::{ksum, KsumConfig};
use doubling::oracles::{
    bohr_enumerate, brute_hbilp, brute_ilp, brute_ksum, brute_subset_sum_first, covering_check, gap_containment,
    two_b_minus_two_b, verify_freiman_iso,
};
use doubling::primes::is_prime;
use doubling::subset_sum::subset_sum_doubling;
use doubling::{sumset, IntegerSet, Matrix};
use num_bigint::BigUint;
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TABLE_CAP: usize = 1 << 22;
const ENUM_CAP: u128 = 1 << 24;

/// Oracle-equivalence instances per solver.
const ORACLE_INSTANCES: usize = 1000;
const ORACLE_BUDGET: Duration = Duration::from_secs(600);
const FREIMAN_INPUTS: usize = 200;
/// Modeling-lemma attempts per Freiman input.
const MODEL_ATTEMPTS: usize = 5;
/// Significance of the one-sided binomial test on the failure rate.
const BINOMIAL_ALPHA: f64 = 0.01;
const BOHR_PRIME_MAX: u64 = 2003;
const BOHR_PER_BUCKET: usize = 50;
const COVER_PAIRS: usize = 1000;
const ROUND_TRIPS: usize = 500;
const AP_EXPONENT_MAX: f64 = 1.3;
const SIDON_EXPONENT_MIN: f64 = 1.7;
const FIT_TOLERANCE: f64 = 0.15;
const BENCH_BUDGET: Duration = Duration::from_secs(20 * 60);

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: String) -> Self {
        Verdict { pass, detail }
    }
}

fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + stream)
}

fn distinct(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> IntegerSet {
    assert!((hi - lo + 1) as usize >= n);
    let mut seen = BTreeSet::new();
    while seen.len() < n {
        seen.insert(rng.gen_range(lo..=hi));
    }
    IntegerSet::new(seen.into_iter().collect())
}

/// `n` distinct columns of height `m` with entries in `[-r, r]`.
fn distinct_columns(rng: &mut ChaCha8Rng, m: usize, n: usize, r: i64) -> Matrix {
    let mut r = r;
    while ((2 * r + 1) as f64).powi(m as i32) < 2.0 * n as f64 {
        r += 1;
    }
    let mut cols: Vec<Vec<i64>> = Vec::new();
    let mut seen = HashSet::new();
    while cols.len() < n {
        let c: Vec<i64> = (0..m).map(|_| rng.gen_range(-r..=r)).collect();
        if seen.insert(c.clone()) {
            cols.push(c);
        }
    }
    Matrix::from_columns(&cols).unwrap()
}

fn random_matrix(rng: &mut ChaCha8Rng, m: usize, n: usize, r: i64) -> Matrix {
    Matrix::from_rows((0..m).map(|_| (0..n).map(|_| rng.gen_range(-r..=r)).collect()).collect()).unwrap()
}

fn random_binary(rng: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(0..=1)).collect()
}

fn mul(a: &Matrix, x: &[i64]) -> Vec<i64> {
    a.mul_vec(x).into_iter().map(|v| v as i64).collect()
}

/// `P(X >= k)` for `X ~ Bin(n, p)`.
fn binomial_upper_tail(n: usize, k: usize, p: f64) -> f64 {
    let mut ln_fact = vec![0.0f64; n + 1];
    for i in 1..=n {
        ln_fact[i] = ln_fact[i - 1] + (i as f64).ln();
    }
    (k..=n)
        .map(|i| (ln_fact[n] - ln_fact[i] - ln_fact[n - i] + i as f64 * p.ln() + (n - i) as f64 * (1.0 - p).ln()).exp())
        .sum()
}

// ---------------------------------------------------------------- criterion 1

fn oracle_equivalence() -> Verdict {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut bad = 0usize;

    // subset sum, n <= 40 against meet in the middle
    let mut r = rng(11);
    let mut dis = 0;
    let mut feasible = 0;
    for _ in 0..ORACLE_INSTANCES {
        let n = r.gen_range(1..=40);
        let span = r.gen_range(n as i64..=(4 * n as i64).max(60));
        let lo = if r.gen_bool(0.3) { -span / 2 } else { 1 };
        let z = distinct(&mut r, n, lo, lo + span);
        let t = if r.gen_bool(0.5) {
            z.iter().filter(|_| r.gen_bool(0.5)).sum()
        } else {
            let tot: i64 = z.iter().map(|v| v.abs()).sum();
            r.gen_range(-tot - 3..=tot + 3)
        };
        let oracle = brute_subset_sum_first(z.elements(), t, None).unwrap();
        let (out, _) = subset_sum_doubling(&z, t, TABLE_CAP).unwrap();
        let ok = match (&oracle, out.witness()) {
            (None, None) => true,
            (Some(_), Some(w)) => {
                feasible += 1;
                let x = w.to_assignment(n);
                x.iter().zip(z.elements()).filter(|(&b, _)| b == 1).map(|(_, &v)| v).sum::<i64>() == t
            }
            _ => false,
        };
        dis += usize::from(!ok);
    }
    bad += dis;
    parts.push(format!("subset_sum {dis}/{ORACLE_INSTANCES} ({feasible} feasible)"));

    // k-SUM, k <= 5
    let mut r = rng(12);
    let cfg = KsumConfig::default();
    let mut dis = 0;
    let mut feasible = 0;
    for _ in 0..ORACLE_INSTANCES {
        let k = r.gen_range(2..=5);
        let n = r.gen_range(k..=20);
        let z = distinct(&mut r, n, -60, 60);
        let t = if r.gen_bool(0.5) {
            z.elements().choose_multiple(&mut r, k).sum()
        } else {
            r.gen_range(-250..=250)
        };
        let oracle = brute_ksum(z.elements(), t, k).unwrap();
        let rep = ksum(&z, t, k, &cfg, &mut r).unwrap();
        let ok = match (&oracle, rep.outcome.witness()) {
            (None, None) => true,
            (Some(_), Some(w)) => {
                feasible += 1;
                let x = w.to_assignment(n);
                x.iter().filter(|&&b| b == 1).count() == k
                    && x.iter().zip(z.elements()).filter(|(&b, _)| b == 1).map(|(_, &v)| v).sum::<i64>() == t
            }
            _ => false,
        };
        dis += usize::from(!ok);
    }
    bad += dis;
    parts.push(format!("ksum {dis}/{ORACLE_INSTANCES} ({feasible} feasible)"));

    // binary ILP
    let mut r = rng(13);
    let mut dis = 0;
    let (mut lex, mut feasible) = (0, 0);
    for _ in 0..ORACLE_INSTANCES {
        let m = r.gen_range(1..=3);
        let n = r.gen_range(1..=20);
        let a = distinct_columns(&mut r, m, n, 2);
        let b = if r.gen_bool(0.5) {
            mul(&a, &random_binary(&mut r, n))
        } else {
            (0..m).map(|_| r.gen_range(-6..=6)).collect()
        };
        let bounds = vec![(0, 1); n];
        let oracle = brute_ilp(&a, &b, &bounds, ENUM_CAP).unwrap();
        let inst = BilpInstance::binary(a, b).unwrap();
        let (out, _) = bilp_feasibility_dp(&inst, TABLE_CAP).unwrap();
        let ok = match (&oracle, out.witness()) {
            (None, None) => true,
            (Some(o), Some(w)) => {
                let x = w.to_assignment(n);
                feasible += 1;
                lex += usize::from(&x == o);
                inst.check(&x)
            }
            _ => false,
        };
        dis += usize::from(!ok);
    }
    bad += dis;
    parts.push(format!("bilp {dis}/{ORACLE_INSTANCES} ({feasible} feasible, {lex} lex-least)"));

    // bounded ILP
    let mut r = rng(14);
    let mut dis = 0;
    let (mut lex, mut feasible) = (0, 0);
    for _ in 0..ORACLE_INSTANCES {
        let m = r.gen_range(1..=3);
        let n = r.gen_range(1..=8);
        let a = distinct_columns(&mut r, m, n, 3);
        let bounds: Vec<(i64, i64)> = (0..n)
            .map(|_| {
                let lo = r.gen_range(-2..=0);
                (lo, lo + r.gen_range(0..=3))
            })
            .collect();
        let b = if r.gen_bool(0.5) {
            let x: Vec<i64> = bounds.iter().map(|&(lo, hi)| r.gen_range(lo..=hi)).collect();
            mul(&a, &x)
        } else {
            (0..m).map(|_| r.gen_range(-10..=10)).collect()
        };
        let oracle = brute_ilp(&a, &b, &bounds, ENUM_CAP).unwrap();
        let inst = BilpInstance::bounded(a, b, bounds).unwrap();
        let (out, _) = bounded_ilp_feasibility(&inst, TABLE_CAP).unwrap();
        let ok = match (&oracle, out.witness()) {
            (None, None) => true,
            (Some(o), Some(w)) => {
                let x = w.to_assignment(n);
                feasible += 1;
                lex += usize::from(&x == o);
                inst.check(&x)
            }
            _ => false,
        };
        dis += usize::from(!ok);
    }
    bad += dis;
    parts.push(format!("bounded {dis}/{ORACLE_INSTANCES} ({feasible} feasible, {lex} lex-least)"));

    // HBILP
    let mut r = rng(15);
    let mut dis = 0;
    let (mut lex, mut feasible) = (0, 0);
    for _ in 0..ORACLE_INSTANCES {
        let m = r.gen_range(1..=3);
        let n = r.gen_range(1..=20);
        let a = random_matrix(&mut r, m, n, 2);
        let s: Vec<i64> = (0..m).map(|_| r.gen_range(-5..=5)).collect();
        let inst0 = HbilpInstance::new(a.clone(), s.iter().map(|&v| v as i128).collect(), 0).unwrap();
        let t = if r.gen_bool(0.5) {
            let x = random_binary(&mut r, n);
            inst0.column_values().unwrap().iter().zip(&x).map(|(&v, &b)| v * b as i128).sum()
        } else {
            r.gen_range(-40..=40)
        };
        let inst = HbilpInstance { t, ..inst0 };
        let oracle = brute_hbilp(&a, &s, t, ENUM_CAP).unwrap();
        let (out, _) = hbilp_feasibility(&inst, TABLE_CAP).unwrap();
        let ok = match (&oracle, out.witness()) {
            (None, None) => true,
            (Some(o), Some(w)) => {
                let x = w.to_assignment(n);
                feasible += 1;
                lex += usize::from(&x == o);
                inst.check(&x)
            }
            _ => false,
        };
        dis += usize::from(!ok);
    }
    bad += dis;
    parts.push(format!("hbilp {dis}/{ORACLE_INSTANCES} ({feasible} feasible, {lex} lex-least)"));

    let took = start.elapsed();
    let pass = bad == 0 && took < ORACLE_BUDGET;
    Verdict::new(pass, format!("disagreements: {}; {:.1}s (budget {}s)", parts.join(", "), took.as_secs_f64(), ORACLE_BUDGET.as_secs()))
}

// ---------------------------------------------------------------- criterion 2

fn freiman_inputs() -> Vec<(&'static str, IntegerSet)> {
    let mut r = rng(21);
    let mut out = Vec::new();
    for i in 0..FREIMAN_INPUTS {
        let set = match i % 3 {
            0 => {
                let n = if i % 4 == 0 { r.gen_range(2..=8) } else { r.gen_range(2..=256) };
                let a = r.gen_range(-1000..=1000);
                let d = r.gen_range(1..=6);
                ("ap", (0..n as i64).map(|k| a + k * d).collect::<IntegerSet>())
            }
            1 => {
                let g1 = r.gen_range(1..=3);
                let l1 = r.gen_range(2..=16);
                let g2 = g1 * l1 + r.gen_range(0..=5);
                let l2 = r.gen_range(2..=16);
                let base = r.gen_range(-500..=500);
                let mut pts: Vec<i64> =
                    (0..l1).flat_map(|a| (0..l2).map(move |b| base + a * g1 + b * g2)).collect();
                pts.shuffle(&mut r);
                let n = if i % 4 == 1 { r.gen_range(2..=8) } else { r.gen_range(2..=256) };
                pts.truncate(n);
                ("gap-sample", IntegerSet::new(pts))
            }
            _ => {
                let step = r.gen_range(1..=4);
                let count = r.gen_range(1..=3);
                let mut pts = Vec::new();
                for c in 0..count {
                    let len = if i % 4 == 2 { r.gen_range(1..=3) } else { r.gen_range(2..=80) };
                    let start = c * 400 + r.gen_range(0..=50);
                    pts.extend((0..len).map(|k| start + k * step));
                }
                pts.truncate(256);
                ("ap-union", IntegerSet::new(pts))
            }
        };
        out.push(set);
    }
    out
}

fn freiman_soundness() -> Verdict {
    let inputs = freiman_inputs();
    let cfg = FreimanConfig::default();
    let mut r = rng(22);
    let mut violations = Vec::new();
    let (mut exhaustive, mut certified, mut full_iso, mut sampled_iso) = (0, 0, 0, 0);
    let (mut attempts, mut failures) = (0usize, 0usize);
    for (idx, (family, a)) in inputs.iter().enumerate() {
        let cover = match freiman_gap(a, &cfg, &mut r) {
            Ok(c) => c,
            Err(e) => {
                violations.push(format!("#{idx} {family}: {e}"));
                continue;
            }
        };
        // every element carries a coordinate vector that re-evaluates to it
        let mut covered: HashSet<i64> = HashSet::new();
        for (z, c) in &cover.coords {
            if cover.gap.eval(c).ok().flatten() == Some(*z) {
                covered.insert(*z);
            }
        }
        if a.iter().any(|z| !covered.contains(&z)) {
            violations.push(format!("#{idx} {family}: coordinate certificate missing"));
        }
        certified += 1;
        if cover.gap.volume() <= 1 << 20 {
            exhaustive += 1;
            if gap_containment(&cover.gap, a, ENUM_CAP).unwrap().is_some() {
                violations.push(format!("#{idx} {family}: enumerated GAP misses an element"));
            }
        }

        let m = cover.metrics.m;
        for _ in 0..MODEL_ATTEMPTS {
            attempts += 1;
            let model = match modeling_lemma(a, cfg.s, m, &mut r, cfg.limits.set_cap) {
                Ok(ModelOutcome::Success(model)) => model,
                Ok(ModelOutcome::Failure(_)) => {
                    failures += 1;
                    continue;
                }
                Err(e) => {
                    violations.push(format!("#{idx} {family}: modeling error {e}"));
                    continue;
                }
            };
            if model.strict != StrictCheck::Passed {
                continue;
            }
            let psi = |x: i64| model.psi(x) as i64;
            if a.len() <= 8 {
                for s in [2, 3] {
                    let chk = verify_freiman_iso(psi, &model.a_prime, s, Some(m), ENUM_CAP).unwrap();
                    if !chk.is_iso {
                        violations.push(format!("#{idx} {family}: not a {s}-isomorphism {:?}", chk.counterexample));
                    }
                }
                full_iso += 1;
            }
            if sampled_iso_breaks(&model.a_prime, psi, m, &mut r) {
                violations.push(format!("#{idx} {family}: sampled 8-tuples break the isomorphism"));
            }
            sampled_iso += 1;
        }
    }
    let tail = binomial_upper_tail(attempts, failures, 0.5);
    let rate_ok = tail >= BINOMIAL_ALPHA;
    let pass = violations.is_empty() && rate_ok;
    let mut detail = format!(
        "{} inputs; containment certified {certified} (enumerated {exhaustive}); iso full {full_iso}, sampled {sampled_iso}; \
         failures {failures}/{attempts} (P[X>=k | p=1/2] = {tail:.3e}, alpha {BINOMIAL_ALPHA})",
        inputs.len()
    );
    if !violations.is_empty() {
        detail.push_str(&format!("; violations {}: {}", violations.len(), violations[..violations.len().min(3)].join(" | ")));
    }
    Verdict::new(pass, detail)
}

/// Pairs of 8-tuples, half of them built to have equal sums, checked in
/// both directions.
fn sampled_iso_breaks(dom: &IntegerSet, psi: impl Fn(i64) -> i64, m: u64, r: &mut ChaCha8Rng) -> bool {
    const S: usize = 8;
    const SAMPLES: usize = 400;
    let xs = dom.elements();
    let img = |t: &[i64]| t.iter().map(|&x| psi(x) as i128).sum::<i128>().rem_euclid(m as i128);
    for i in 0..SAMPLES {
        let u: Vec<i64> = (0..S).map(|_| *xs.choose(r).unwrap()).collect();
        let mut v: Vec<i64> = (0..S).map(|_| *xs.choose(r).unwrap()).collect();
        if i % 2 == 0 {
            // shift one coordinate of a copy of u onto another sum-preserving pair if one exists
            v = u.clone();
            v.shuffle(r);
            if S >= 2 {
                let (p, q) = (v[0], v[1]);
                if let Some((&p2, &q2)) =
                    xs.iter().flat_map(|x| xs.iter().map(move |y| (x, y))).find(|(&x, &y)| x + y == p + q && x != p)
                {
                    v[0] = p2;
                    v[1] = q2;
                } else {
                    v[0] = q;
                    v[1] = p;
                }
            }
        }
        let du: i128 = u.iter().map(|&x| x as i128).sum();
        let dv: i128 = v.iter().map(|&x| x as i128).sum();
        if (du == dv) != (img(&u) == img(&v)) {
            return true;
        }
    }
    false
}

// ---------------------------------------------------------------- criterion 3

fn bohr_chain() -> Verdict {
    let primes: Vec<u64> = (2..=BOHR_PRIME_MAX).filter(|&p| is_prime(p)).collect();
    let buckets: [(u64, u64); 4] = [(2, 250), (251, 500), (501, 1000), (1001, BOHR_PRIME_MAX)];
    let mut cases: Vec<u64> = primes.clone();
    let mut r = rng(31);
    for &(lo, hi) in &buckets {
        let in_bucket: Vec<u64> = primes.iter().copied().filter(|&p| p >= lo && p <= hi).collect();
        for _ in 0..BOHR_PER_BUCKET {
            cases.push(*in_bucket.choose(&mut r).unwrap());
        }
    }
    let eps = Ratio::new(1u64, 4);
    let mut violations = Vec::new();
    let mut max_dim = 0;
    for (i, &m) in cases.iter().enumerate() {
        let density = r.gen_range(0.02..0.6);
        let size = ((m as f64 * density).round() as usize).clamp(1, m as usize);
        let mut all: Vec<u64> = (0..m).collect();
        all.shuffle(&mut r);
        let mut b = all[..size].to_vec();
        b.sort_unstable();
        let spec = match bogolyubov(&b, m) {
            Ok(s) => s,
            Err(e) => {
                violations.push(format!("m={m} case {i}: {e}"));
                continue;
            }
        };
        let bohr = bohr_enumerate(m, &spec.freqs, eps, ENUM_CAP).unwrap();
        let d2 = two_b_minus_two_b(&b, m);
        if let Some(x) = bohr.iter().find(|&&x| !d2[x as usize]) {
            violations.push(format!("m={m} |B|={size}: Bohr element {x} outside 2B-2B"));
        }
        let pg = match gap_in_bohr(&spec, LatticeMode::Auto, ENUM_CAP) {
            Ok(p) => p,
            Err(e) => {
                violations.push(format!("m={m} |B|={size}: gap_in_bohr {e}"));
                continue;
            }
        };
        let d = spec.freqs.len();
        max_dim = max_dim.max(d);
        let res = pg.residues(ENUM_CAP).unwrap();
        let distinct: HashSet<u64> = res.iter().copied().collect();
        if distinct.len() != res.len() {
            violations.push(format!("m={m}: GAP not proper"));
        }
        let in_bohr: HashSet<u64> = bohr.iter().copied().collect();
        if res.iter().any(|x| !in_bohr.contains(x)) {
            violations.push(format!("m={m}: GAP leaves the Bohr set"));
        }
        // (eps/d)^d m <= |P|  <=>  en^d * m <= |P| * (ed * d)^d
        let vol = pg.gap.volume();
        let exact = if d == 0 {
            vol >= m as u128
        } else {
            let lhs = BigUint::from(*eps.numer()).pow(d as u32) * m;
            let rhs = BigUint::from(vol) * BigUint::from(*eps.denom() * d as u64).pow(d as u32);
            lhs <= rhs
        };
        if !exact || exact != volume_bound_holds(vol, &spec) {
            violations.push(format!("m={m} d={d}: volume {vol} below (eps/d)^d m"));
        }
    }
    let detail = format!(
        "{} cases ({} primes <= {BOHR_PRIME_MAX} + {BOHR_PER_BUCKET} per bucket x {}); max Bohr dim {max_dim}; violations {}{}",
        cases.len(),
        primes.len(),
        buckets.len(),
        violations.len(),
        violations.first().map(|v| format!(": {v}")).unwrap_or_default()
    );
    Verdict::new(violations.is_empty(), detail)
}

// ---------------------------------------------------------------- criterion 4

fn covering() -> Verdict {
    let mut r = rng(41);
    let mut violations = 0;
    let mut errors = Vec::new();
    for i in 0..COVER_PAIRS {
        let ny = r.gen_range(1..=20);
        let nz = r.gen_range(1..=40);
        let (y, z) = if i % 2 == 0 {
            (distinct(&mut r, ny, -100, 100), distinct(&mut r, nz, -300, 300))
        } else {
            let d = r.gen_range(1..=5);
            let y: IntegerSet = (0..ny as i64).map(|k| k * d).collect();
            let z = distinct(&mut r, nz, -200, 200);
            (y, z)
        };
        let cov = match ruzsa_cover(&y, &z) {
            Ok(c) => c,
            Err(e) => {
                errors.push(e.to_string());
                violations += 1;
                continue;
            }
        };
        let yz = sumset(&y, &z).unwrap();
        if cov.x.len() * y.len() > yz.len() || covering_check(&y, &z, &cov.x).is_some() || !cov.x.is_subset(&z) {
            violations += 1;
        }
    }
    let detail = format!(
        "{COVER_PAIRS} pairs; violations {violations}{}",
        errors.first().map(|e| format!(" ({e})")).unwrap_or_default()
    );
    Verdict::new(violations == 0, detail)
}

// ---------------------------------------------------------------- criterion 5

fn subset_values(z: &[i64], idx: &[usize]) -> Vec<i64> {
    idx.iter().map(|&i| z[i]).collect()
}

fn round_trips() -> Verdict {
    let mut violations = Vec::new();

    // BILP -> nonnegative BILP -> HBILP -> subset sum
    let mut r = rng(51);
    let (mut chain_feasible, mut builds) = (0, 0);
    for i in 0..ROUND_TRIPS {
        let m = r.gen_range(1..=2);
        let n = r.gen_range(1..=4);
        let a = random_matrix(&mut r, m, n, 2);
        let b = if r.gen_bool(0.5) {
            mul(&a, &random_binary(&mut r, n))
        } else {
            (0..m).map(|_| r.gen_range(-4..=4)).collect()
        };
        let oracle = brute_ilp(&a, &b, &vec![(0, 1); n], ENUM_CAP).unwrap();
        let inst = BilpInstance::binary(a, b).unwrap();
        let step = (|| {
            let nn = bilp_nonnegative(&inst)?;
            let h = bilp_to_hbilp(&nn.instance)?;
            let red = hbilp_to_ss(&h, n <= 1)?;
            Ok::<_, doubling::Error>((nn, h, red))
        })();
        let (nn, h, red) = match step {
            Ok(v) => v,
            Err(e) => {
                violations.push(format!("chain #{i}: {e}"));
                continue;
            }
        };
        builds += 1;
        let set = red.set();
        let ss = brute_subset_sum_first(set.elements(), red.target, None).unwrap();
        if ss.is_some() != oracle.is_some() {
            violations.push(format!("chain #{i}: feasibility {} vs oracle {}", ss.is_some(), oracle.is_some()));
            continue;
        }
        if let Some(idx) = ss {
            chain_feasible += 1;
            let ok = red
                .decode(&subset_values(set.elements(), &idx))
                .map(|y| h.check(&y) && inst.check(&nn.decode(&y)))
                .unwrap_or(false);
            if !ok {
                violations.push(format!("chain #{i}: decoded witness fails"));
            }
        }
    }

    // HBILP -> subset sum directly, padding on half
    let mut r = rng(52);
    let mut direct_feasible = 0;
    for i in 0..ROUND_TRIPS {
        let m = r.gen_range(1..=3);
        let n = r.gen_range(1..=5);
        let a = random_matrix(&mut r, m, n, 3);
        let s: Vec<i64> = (0..m).map(|_| r.gen_range(-4..=4)).collect();
        let inst0 = HbilpInstance::new(a.clone(), s.iter().map(|&v| v as i128).collect(), 0).unwrap();
        let t = if r.gen_bool(0.5) {
            let x = random_binary(&mut r, n);
            inst0.column_values().unwrap().iter().zip(&x).map(|(&v, &b)| v * b as i128).sum()
        } else {
            r.gen_range(-30..=30)
        };
        let inst = HbilpInstance { t, ..inst0 };
        let oracle = brute_hbilp(&a, &s, t, ENUM_CAP).unwrap();
        let red = match hbilp_to_ss(&inst, i % 2 == 0) {
            Ok(v) => v,
            Err(e) => {
                violations.push(format!("direct #{i}: {e}"));
                continue;
            }
        };
        builds += 1;
        let set = red.set();
        let ss = brute_subset_sum_first(set.elements(), red.target, None).unwrap();
        if ss.is_some() != oracle.is_some() {
            violations.push(format!("direct #{i}: feasibility {} vs oracle {}", ss.is_some(), oracle.is_some()));
            continue;
        }
        if let Some(idx) = ss {
            direct_feasible += 1;
            if red.decode(&subset_values(set.elements(), &idx)).map(|y| inst.check(&y)) != Ok(true) {
                violations.push(format!("direct #{i}: decoded witness fails"));
            }
        }
    }

    // subset sum -> HBILP through the Freiman cover
    let mut r = rng(53);
    let cfg = FreimanConfig::default();
    let mut ss_feasible = 0;
    for i in 0..ROUND_TRIPS {
        let n = r.gen_range(1..=10);
        let z = if i % 2 == 0 {
            distinct(&mut r, n, -40, 40)
        } else {
            let d = r.gen_range(1..=4);
            let a = r.gen_range(-20..=20);
            (0..n as i64).map(|k| a + k * d).collect()
        };
        let t = if r.gen_bool(0.5) {
            z.iter().filter(|_| r.gen_bool(0.5)).sum()
        } else {
            r.gen_range(-100..=100)
        };
        let oracle = brute_subset_sum_first(z.elements(), t, None).unwrap();
        let red = match ss_to_hbilp(&z, t, &cfg, &mut r) {
            Ok(v) => v,
            Err(e) => {
                violations.push(format!("ss #{i}: {e}"));
                continue;
            }
        };
        let s: Vec<i64> = red.instance.s.iter().map(|&v| v as i64).collect();
        let sol = brute_hbilp(&red.instance.a, &s, red.instance.t, ENUM_CAP).unwrap();
        if sol.is_some() != oracle.is_some() {
            violations.push(format!("ss #{i}: feasibility {} vs oracle {}", sol.is_some(), oracle.is_some()));
            continue;
        }
        if let Some(x) = sol {
            ss_feasible += 1;
            let picked = red.decode(&x);
            if picked.iter().sum::<i64>() != t || !picked.is_subset(&z) {
                violations.push(format!("ss #{i}: decoded subset fails"));
            }
        }
    }

    let detail = format!(
        "{ROUND_TRIPS} each; bilp chain feasible {chain_feasible}, hbilp->ss feasible {direct_feasible}, ss->hbilp feasible {ss_feasible}; \
         hbilp_to_ss builds with distinctness asserted {builds}; violations {}{}",
        violations.len(),
        violations.first().map(|v| format!(": {v}")).unwrap_or_default()
    );
    Verdict::new(violations.is_empty(), detail)
}

// ---------------------------------------------------------------- criterion 6

/// Right-hand sides in `[0, hi]^m` reachable with nonnegative integer
/// combinations of the given columns, as a flat bitmap.
fn reach_box(cols: &[Vec<i64>], m: usize, hi: i64) -> Vec<bool> {
    let side = (hi + 1) as usize;
    let size = side.pow(m as u32);
    let mut reach = vec![false; size];
    reach[0] = true;
    let index = |v: &[i64]| v.iter().fold(0usize, |acc, &x| acc * side + x as usize);
    for col in cols {
        for idx in 0..size {
            if !reach[idx] {
                continue;
            }
            let mut v = vec![0i64; m];
            let mut rem = idx;
            for k in (0..m).rev() {
                v[k] = (rem % side) as i64;
                rem /= side;
            }
            let w: Vec<i64> = v.iter().zip(col).map(|(a, b)| a + b).collect();
            if w.iter().all(|&x| x <= hi) {
                reach[index(&w)] = true;
            }
        }
    }
    reach
}

fn small_support() -> Verdict {
    let mut matrices = 0usize;
    let mut supports_checked = 0usize;
    let mut violations = Vec::new();
    for m in 1..=2usize {
        let nonzero: Vec<Vec<i64>> = (0..4i64.pow(m as u32))
            .map(|code| (0..m).map(|k| (code / 4i64.pow(k as u32)) % 4).collect::<Vec<i64>>())
            .filter(|c| c.iter().any(|&v| v != 0))
            .collect();
        for n in 1..=4usize {
            let mut pick = vec![0usize; n];
            loop {
                let cols: Vec<Vec<i64>> = pick.iter().map(|&i| nonzero[i].clone()).collect();
                let a = Matrix::from_columns(&cols).unwrap();
                matrices += 1;
                let delta = a.delta() as i64;
                let hi = n as i64 * delta;
                let cand = small_support_candidates(&a, ENUM_CAP).unwrap();
                let all = reach_box(&cols, m, hi);
                let mut union = vec![false; all.len()];
                for supp in &cand.supports {
                    supports_checked += 1;
                    // 2^|supp| <= (2nΔ+1)^m, i.e. |supp| <= m log2(2nΔ+1)
                    let lhs = BigUint::from(1u8) << supp.len();
                    let rhs = BigUint::from((2 * hi + 1) as u64).pow(m as u32);
                    if lhs > rhs {
                        violations.push(format!("{cols:?}: support {supp:?} too large"));
                    }
                    let sub: Vec<Vec<i64>> = supp.iter().map(|&j| cols[j].clone()).collect();
                    for (u, v) in union.iter_mut().zip(reach_box(&sub, m, hi)) {
                        *u |= v;
                    }
                }
                if !cand.violations.is_empty() {
                    violations.push(format!("{cols:?}: reported violations {:?}", cand.violations));
                }
                if let Some(idx) = (0..all.len()).find(|&i| all[i] && !union[i]) {
                    violations.push(format!("{cols:?}: rhs #{idx} has no candidate support"));
                }
                // next tuple of column codes
                let mut k = n;
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    pick[k] += 1;
                    if pick[k] < nonzero.len() {
                        break;
                    }
                    pick[k] = 0;
                }
                if pick.iter().all(|&p| p == 0) {
                    break;
                }
            }
        }
    }
    let detail = format!(
        "{matrices} matrices (m <= 2, n <= 4, entries 0..=3), {supports_checked} supports; violations {}{}",
        violations.len(),
        violations.first().map(|v| format!(": {v}")).unwrap_or_default()
    );
    Verdict::new(violations.is_empty(), detail)
}

// ---------------------------------------------------------------- criterion 7

fn scaling() -> Verdict {
    let start = Instant::now();
    let report = match foursum_scaling(&BenchConfig::default()) {
        Ok(r) => r,
        Err(e) => return Verdict::new(false, format!("bench failed: {e}")),
    };
    let took = start.elapsed();
    let exp = |g: &str| report.fits.iter().find(|f| f.generator == g).map(|f| f.exponent).unwrap_or(f64::NAN);
    let (ap, sidon) = (exp("ap"), exp("sidon"));
    let ap_ok = ap < AP_EXPONENT_MAX && (ap - 1.0).abs() <= FIT_TOLERANCE;
    let sidon_ok = sidon > SIDON_EXPONENT_MIN && (sidon - 2.0).abs() <= FIT_TOLERANCE;
    let pass = ap_ok && sidon_ok && took < BENCH_BUDGET;
    Verdict::new(
        pass,
        format!(
            "AP exponent {ap:.3} (< {AP_EXPONENT_MAX}, 1 +/- {FIT_TOLERANCE}); Sidon exponent {sidon:.3} (> {SIDON_EXPONENT_MIN}, 2 +/- {FIT_TOLERANCE}); {:.1}s",
            took.as_secs_f64()
        ),
    )
}

// ---------------------------------------------------------------- criterion 8

fn write_inputs(dir: &std::path::Path) -> Vec<(String, PathBuf)> {
    let files = [
        ("set", r#"{"elements":[1,2,3,5,8,13,21,34],"target":55}"#),
        ("ss", r#"{"elements":[3,5,9,14,20],"target":28}"#),
        ("uss", r#"{"elements":[4,6,9],"target":23,"mode":"unbounded"}"#),
        ("bilp", r#"{"A":[[1,2,-1],[0,1,1]],"b":[2,1]}"#),
        ("bounded", r#"{"A":[[1,3]],"b":[7],"bounds":[[0,4],[-1,2]]}"#),
        ("hbilp", r#"{"A":[[1,0,2],[0,1,1]],"s":[3,-1],"t":5}"#),
        ("spec", r#"{"kind":"sidon","n":12,"seed":4}"#),
        ("iso", r#"{"domain":[0,1,3,7],"image":[0,5,15,35],"s":2}"#),
        ("bohr", r#"{"m":13,"freqs":[1,5],"eps":"1/4"}"#),
        ("cover", r#"{"y":[0,1,2],"z":[0,5,10,11,30],"x":[0,5,10,30]}"#),
        ("gapc", r#"{"gap":{"base":0,"generators":[1,10],"lengths":[3,4]},"set":[0,1,12,32]}"#),
    ];
    files
        .iter()
        .map(|(name, body)| {
            let p = dir.join(format!("{name}.json"));
            std::fs::write(&p, body).unwrap();
            (name.to_string(), p)
        })
        .collect()
}

fn determinism() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_doubling");
    let dir = std::env::temp_dir().join(format!("doubling-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let files = write_inputs(&dir);
    let f = |name: &str| files.iter().find(|(n, _)| n == name).unwrap().1.to_string_lossy().into_owned();
    let cmds: Vec<Vec<String>> = vec![
        vec!["generate", "--kind", "ap", "--n", "20", "--start", "3", "--step", "7"],
        vec!["generate", "--kind", "sidon", "--n", "30"],
        vec!["--seed", "9", "generate", "--kind", "random-dense", "--n", "40"],
        vec!["--seed", "9", "generate", "--kind", "random-range", "--n", "25", "--lo", "-50", "--hi", "50", "--target", "12"],
        vec!["--seed", "5", "generate", "--input", &f("spec")],
        vec!["--seed", "3", "freiman", "--input", &f("set")],
        vec!["ilp", "solve", "--input", &f("bilp")],
        vec!["ilp", "solve", "--input", &f("bounded")],
        vec!["ilp", "solve", "--input", &f("hbilp")],
        vec!["ilp", "reduce", "--from", "bilp", "--to", "hbilp", "--input", &f("bilp")],
        vec!["ilp", "reduce", "--from", "hbilp", "--to", "ss", "--pad", "--input", &f("hbilp")],
        vec!["subset-sum", "solve", "--input", &f("ss")],
        vec!["--seed", "2", "subset-sum", "solve", "--input", &f("uss")],
        vec!["--seed", "7", "ksum", "--k", "3", "--input", &f("ss")],
        vec!["--seed", "7", "--backend", "fft", "ksum", "--k", "4", "--input", &f("set")],
        vec!["verify", "iso", "--input", &f("iso")],
        vec!["verify", "bohr", "--input", &f("bohr")],
        vec!["verify", "cover", "--input", &f("cover")],
        vec!["verify", "gap-contains", "--input", &f("gapc")],
        vec!["--seed", "1", "bench", "--suite", "foursum-scaling", "--sizes", "64,128,256"],
        vec!["--seed", "1", "--format", "csv", "bench", "--suite", "foursum-scaling", "--sizes", "64,128", "--partitions", "2"],
    ]
    .into_iter()
    .map(|c| c.into_iter().map(String::from).collect())
    .collect();
    let mut mismatches = Vec::new();
    let mut codes = Vec::new();
    for args in &cmds {
        let run = || Command::new(bin).args(args).output().unwrap();
        let (a, b) = (run(), run());
        codes.push(a.status.code().unwrap_or(-1));
        if a.stdout != b.stdout || a.status.code() != b.status.code() || a.stdout.is_empty() {
            mismatches.push(args.join(" "));
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    let errors = codes.iter().filter(|&&c| c == 2 || c < 0).count();
    let detail = format!(
        "{} commands run twice; mismatches {}; usage errors {errors}{}",
        cmds.len(),
        mismatches.len(),
        mismatches.first().map(|m| format!(": {m}")).unwrap_or_default()
    );
    Verdict::new(mismatches.is_empty() && errors == 0, detail)
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 8] = [
        ("oracle equivalence", oracle_equivalence),
        ("freiman pipeline soundness", freiman_soundness),
        ("bogolyubov/bohr/gap chain", bohr_chain),
        ("covering lemma", covering),
        ("reduction round-trips", round_trips),
        ("small-support lemma", small_support),
        ("scaling trend", scaling),
        ("determinism", determinism),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|v| v.parse().ok());
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if only.is_some_and(|o| o != i + 1) {
            continue;
        }
        let v = run();
        failed += usize::from(!v.pass);
        println!("criterion {} ({name}): {} {}", i + 1, if v.pass { "PASS" } else { "FAIL" }, v.detail);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
