//! Scaling benchmark for 4-SUM on low- and high-doubling families.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::generate::{ap, sidon};
use crate::ksum::{foursum, sparse_sumset, Backend, KsumConfig, SumsetCaps};
use crate::sets::IntegerSet;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub seed: u64,
    pub sizes: Vec<usize>,
    /// Colorings per instance; the target is infeasible so all are run.
    pub partitions: usize,
    pub backend: Backend,
    pub timing: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig { seed: 1, sizes: (8..=14).map(|e| 1 << e).collect(), partitions: 4, backend: Backend::Auto, timing: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub v: u32,
    pub suite: &'static str,
    pub generator: &'static str,
    pub solver: &'static str,
    pub n: usize,
    /// `|A+A|/|A|`, omitted when the sumset is too large to build.
    pub c_measured: Option<f64>,
    pub left: usize,
    pub right: usize,
    pub work: u128,
    pub partitions: usize,
    pub outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchFit {
    pub v: u32,
    pub suite: &'static str,
    pub generator: &'static str,
    pub solver: &'static str,
    /// Least-squares slope of `ln work` against `ln n`.
    pub exponent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub records: Vec<BenchRecord>,
    pub fits: Vec<BenchFit>,
}

fn measured_doubling(a: &IntegerSet) -> Option<f64> {
    let caps = SumsetCaps { dense_range: 1 << 24, pairs: 1 << 24 };
    let s = sparse_sumset(a.elements(), a.elements(), Backend::Auto, caps).ok()?;
    Some(s.len() as f64 / a.len() as f64)
}

/// Slope of the least-squares line through `(ln x, ln y)`.
pub fn fit_exponent(points: &[(f64, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// 4-SUM on APs and Sidon sets of every size with the unreachable target
/// `4·max + 1`, so every coloring is processed and work is comparable.
pub fn foursum_scaling(cfg: &BenchConfig) -> Result<BenchReport> {
    let mut records = Vec::new();
    let mut fits = Vec::new();
    let mut task = 0u64;
    for generator in ["ap", "sidon"] {
        let mut points = Vec::new();
        for &n in &cfg.sizes {
            let z = match generator {
                "ap" => ap(n, 0, 1)?,
                _ => sidon(n)?,
            };
            let t = z.max().unwrap_or(0).saturating_mul(4).saturating_add(1);
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(task);
            task += 1;
            let kcfg = KsumConfig { backend: cfg.backend, partitions: Some(cfg.partitions), ..KsumConfig::default() };
            let start = Instant::now();
            let r = foursum(&z, t, &kcfg, &mut rng)?;
            let wall = start.elapsed().as_secs_f64() * 1e3;
            points.push((n as f64, r.work as f64));
            records.push(BenchRecord {
                v: SCHEMA_VERSION,
                suite: "foursum-scaling",
                generator,
                solver: "foursum",
                n,
                c_measured: measured_doubling(&z),
                left: r.max_left,
                right: r.max_right,
                work: r.work,
                partitions: r.partitions_tried,
                outcome: if r.outcome.is_feasible() { "feasible" } else { "infeasible" },
                wall_ms: cfg.timing.then_some(wall),
            });
        }
        if points.len() >= 2 {
            fits.push(BenchFit {
                v: SCHEMA_VERSION,
                suite: "foursum-scaling",
                generator,
                solver: "foursum",
                exponent: fit_exponent(&points),
            });
        }
    }
    Ok(BenchReport { records, fits })
}

impl BenchReport {
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        for f in &self.fits {
            out.push_str(&serde_json::to_string(f).expect("fits serialize"));
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("v,suite,generator,solver,n,c_measured,left,right,work,partitions,outcome,wall_ms,exponent\n");
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},\n",
                r.v,
                r.suite,
                r.generator,
                r.solver,
                r.n,
                opt(r.c_measured),
                r.left,
                r.right,
                r.work,
                r.partitions,
                r.outcome,
                opt(r.wall_ms)
            ));
        }
        for f in &self.fits {
            out.push_str(&format!("{},{},{},{},,,,,,,,,{}\n", f.v, f.suite, f.generator, f.solver, f.exponent));
        }
        out
    }
}
