use std::path::Path;

use anyhow::{bail, Context, Result};
use doubling::bench::{foursum_scaling, BenchConfig};
use doubling::freiman::{freiman_gap, FreimanConfig};
use doubling::generate::{generate as gen_set, Generator, InstanceSpec};
use doubling::ilp::{
    bilp_feasibility_dp, bilp_nonnegative, bilp_to_hbilp, bounded_ilp_feasibility, hbilp_feasibility, hbilp_to_ss,
    BilpInstance, HbilpInstance,
};
use doubling::ksum::{ksum as run_ksum, Backend, KsumConfig};
use doubling::oracles::{bohr_enumerate, covering_check, gap_containment, verify_freiman_iso};
use doubling::subset_sum::{subset_sum_doubling, unbounded_subset_sum, Mode, SubsetSumInstance};
use doubling::{doubling_constant, Gap, IntegerSet, Limits, Outcome};
use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::{BackendArg, BenchArgs, Format, GenerateArgs, Global, Kind, Problem, VerifyCommand};

const SOLVED: u8 = 0;
const INFEASIBLE: u8 = 1;

fn read<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit<T: Serialize + ?Sized>(v: &T) {
    println!("{}", serde_json::to_string(v).expect("outputs serialize"));
}

fn limits(g: &Global) -> Limits {
    let mut l = Limits::default();
    if let Some(c) = g.cap_table {
        l.table_cap = c;
    }
    if let Some(c) = g.cap_enum {
        l.enum_cap = c;
    }
    l
}

fn freiman_config(g: &Global) -> FreimanConfig {
    FreimanConfig { gamma: g.gamma, limits: limits(g), ..FreimanConfig::default() }
}

fn backend(g: &Global) -> Backend {
    match g.backend {
        BackendArg::Auto => Backend::Auto,
        BackendArg::Fft => Backend::Fft,
        BackendArg::Hash => Backend::Hash,
    }
}

fn rng(g: &Global) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(g.seed)
}

fn status(out: &Outcome) -> u8 {
    if out.is_feasible() {
        SOLVED
    } else {
        INFEASIBLE
    }
}

pub fn generate(g: &Global, args: &GenerateArgs) -> Result<u8> {
    let spec = match &args.input {
        Some(path) => read::<InstanceSpec>(path)?,
        None => {
            let (Some(kind), Some(n)) = (args.kind, args.n) else {
                bail!("generate needs --input or both --kind and --n");
            };
            let generator = match kind {
                Kind::Ap => Generator::Ap { start: args.start, step: args.step },
                Kind::Sidon => Generator::Sidon,
                Kind::RandomDense => Generator::RandomDense,
                Kind::RandomRange => Generator::RandomRange { lo: args.lo, hi: args.hi },
            };
            InstanceSpec { generator, n, seed: g.seed }
        }
    };
    let set = gen_set(&spec, limits(g).enum_cap)?;
    let c = doubling_constant(&set)?;
    let mut out = json!({ "elements": set.elements(), "doubling": c.to_string() });
    if let Some(t) = args.target {
        out["target"] = json!(t);
    }
    emit(&out);
    Ok(SOLVED)
}

pub fn freiman(g: &Global, input: &Path) -> Result<u8> {
    let set: IntegerSet = read(input)?;
    let cover = freiman_gap(&set, &freiman_config(g), &mut rng(g))?;
    let contained = cover.coords.len() == set.len();
    #[derive(Serialize)]
    struct Out<'a> {
        gap: &'a Gap,
        q_gap: &'a Gap,
        x: &'a [i64],
        metrics: &'a doubling::freiman::FreimanMetrics,
        contains_input: bool,
    }
    emit(&Out { gap: &cover.gap, q_gap: &cover.q_gap, x: cover.x.elements(), metrics: &cover.metrics, contains_input: contained });
    Ok(if contained { SOLVED } else { INFEASIBLE })
}

fn bilp_or_hbilp(input: &Path) -> Result<(Option<BilpInstance>, Option<HbilpInstance>)> {
    let v: Value = read(input)?;
    if v.get("s").is_some() {
        Ok((None, Some(serde_json::from_value(v).context("HBILP instance")?)))
    } else {
        Ok((Some(serde_json::from_value(v).context("BILP instance")?), None))
    }
}

pub fn ilp_solve(g: &Global, input: &Path) -> Result<u8> {
    let cap = limits(g).table_cap;
    let (problem, out, stats, check) = match bilp_or_hbilp(input)? {
        (Some(inst), _) => {
            let (problem, (out, stats)) = if inst.is_binary() {
                ("bilp", bilp_feasibility_dp(&inst, cap)?)
            } else {
                ("bounded-ilp", bounded_ilp_feasibility(&inst, cap)?)
            };
            let check = out.witness().map(|w| inst.check(&w.to_assignment(inst.a.cols())));
            (problem, out, stats, check)
        }
        (None, Some(inst)) => {
            let (out, stats) = hbilp_feasibility(&inst, cap)?;
            let check = out.witness().map(|w| inst.check(&w.to_assignment(inst.a.cols())));
            ("hbilp", out, stats, check)
        }
        (None, None) => unreachable!(),
    };
    emit(&json!({ "problem": problem, "outcome": out, "check": check, "stats": stats }));
    Ok(status(&out))
}

pub fn ilp_reduce(_g: &Global, input: &Path, from: Problem, to: Problem, pad: bool) -> Result<u8> {
    match (from, to) {
        (Problem::Bilp, Problem::Hbilp) => {
            let inst: BilpInstance = read(input)?;
            let nn = bilp_nonnegative(&inst)?;
            let h = bilp_to_hbilp(&nn.instance)?;
            emit(&json!({
                "A": h.a,
                "s": h.s,
                "t": h.t,
                "decoder": {
                    "from": "bilp",
                    "original_variables": nn.n,
                    "variables": nn.instance.a.cols(),
                    "rule": "the first original_variables entries of an HBILP solution solve the BILP",
                },
            }));
        }
        (Problem::Hbilp, Problem::Ss) => {
            let inst: HbilpInstance = read(input)?;
            let red = hbilp_to_ss(&inst, pad)?;
            emit(&json!({
                "elements": red.set().elements(),
                "target": red.target,
                "mode": Mode::Bounded,
                "decoder": {
                    "from": "hbilp",
                    "columns": red.z,
                    "padding": red.padding,
                    "original_variables": inst.a.cols(),
                    "base": red.base,
                    "digits": red.digits,
                    "modulus": red.modulus,
                    "unreachable": red.unreachable,
                    "rule": "variable j is 1 iff columns[j] is chosen, for j < original_variables",
                },
            }));
        }
        _ => bail!("supported reductions: --from bilp --to hbilp, --from hbilp --to ss"),
    }
    Ok(SOLVED)
}

fn chosen(z: &IntegerSet, out: &Outcome) -> Value {
    match out.witness() {
        Some(w) => {
            let x = w.to_assignment(z.len());
            let picks: Vec<Value> = z
                .iter()
                .zip(&x)
                .filter(|(_, &m)| m != 0)
                .map(|(v, &m)| if m == 1 { json!(v) } else { json!([v, m]) })
                .collect();
            json!(picks)
        }
        None => Value::Null,
    }
}

fn recheck(z: &IntegerSet, t: i64, out: &Outcome) -> Option<bool> {
    let x = out.witness()?.to_assignment(z.len());
    let sum = z.iter().zip(&x).try_fold(0i64, |acc, (v, &m)| v.checked_mul(m).and_then(|p| acc.checked_add(p)));
    Some(sum == Some(t))
}

pub fn subset_sum(g: &Global, input: &Path) -> Result<u8> {
    let inst: SubsetSumInstance = read(input)?;
    #[derive(Serialize)]
    struct Out {
        mode: Mode,
        outcome: Outcome,
        elements: Value,
        check: Option<bool>,
        #[serde(skip_serializing_if = "Option::is_none")]
        stats: Option<doubling::ilp::DpStats>,
        #[serde(skip_serializing_if = "Option::is_none")]
        report: Option<doubling::subset_sum::UnboundedReport>,
    }
    let (out, stats, report) = match inst.mode {
        Mode::Bounded => {
            let (out, stats) = subset_sum_doubling(&inst.z, inst.target, limits(g).table_cap)?;
            (out, Some(stats), None)
        }
        Mode::Unbounded => {
            let r = unbounded_subset_sum(&inst.z, inst.target, &freiman_config(g), &mut rng(g))?;
            (r.outcome.clone(), None, Some(r))
        }
    };
    emit(&Out {
        mode: inst.mode,
        elements: chosen(&inst.z, &out),
        check: recheck(&inst.z, inst.target, &out),
        outcome: out.clone(),
        stats,
        report,
    });
    Ok(status(&out))
}

pub fn ksum(g: &Global, input: &Path, k: usize, partitions: Option<usize>) -> Result<u8> {
    let inst: SubsetSumInstance = read(input)?;
    let cfg = KsumConfig { gamma: g.gamma, backend: backend(g), partitions, ..KsumConfig::default() };
    let r = run_ksum(&inst.z, inst.target, k, &cfg, &mut rng(g))?;
    #[derive(Serialize)]
    struct Out<'a> {
        k: usize,
        outcome: &'a Outcome,
        elements: Value,
        check: Option<bool>,
        report: &'a doubling::ksum::KsumReport,
    }
    emit(&Out {
        k,
        outcome: &r.outcome,
        elements: chosen(&inst.z, &r.outcome),
        check: recheck(&inst.z, inst.target, &r.outcome),
        report: &r,
    });
    Ok(status(&r.outcome))
}

#[derive(Deserialize)]
struct IsoInput {
    domain: Vec<i64>,
    image: Vec<i64>,
    s: usize,
    #[serde(default)]
    modulus: Option<u64>,
}

#[derive(Deserialize)]
struct BohrInput {
    m: u64,
    freqs: Vec<u64>,
    eps: String,
}

#[derive(Deserialize)]
struct CoverInput {
    y: Vec<i64>,
    z: Vec<i64>,
    x: Vec<i64>,
}

#[derive(Deserialize)]
struct GapContainsInput {
    gap: Gap,
    set: Vec<i64>,
}

fn verdict(ok: bool) -> u8 {
    if ok {
        SOLVED
    } else {
        INFEASIBLE
    }
}

pub fn verify(g: &Global, cmd: VerifyCommand) -> Result<u8> {
    let cap = limits(g).enum_cap;
    match cmd {
        VerifyCommand::Iso { input } => {
            let inp: IsoInput = read(&input)?;
            if inp.domain.len() != inp.image.len() {
                bail!("domain and image must have equal length");
            }
            let map: std::collections::HashMap<i64, i64> = inp.domain.iter().copied().zip(inp.image.iter().copied()).collect();
            let domain = IntegerSet::from_strict(inp.domain)?;
            let r = verify_freiman_iso(|x| map[&x], &domain, inp.s, inp.modulus, cap)?;
            emit(&json!({ "is_iso": r.is_iso, "counterexample": r.counterexample }));
            Ok(verdict(r.is_iso))
        }
        VerifyCommand::Bohr { input } => {
            let inp: BohrInput = read(&input)?;
            let eps: Ratio<u64> = inp.eps.parse().map_err(|_| anyhow::anyhow!("eps must look like \"1/4\""))?;
            if inp.m == 0 {
                bail!("modulus must be positive");
            }
            let set = bohr_enumerate(inp.m, &inp.freqs, eps, cap)?;
            emit(&json!({ "size": set.len(), "elements": set }));
            Ok(SOLVED)
        }
        VerifyCommand::Cover { input } => {
            let inp: CoverInput = read(&input)?;
            let (y, z, x) = (IntegerSet::new(inp.y), IntegerSet::new(inp.z), IntegerSet::new(inp.x));
            let missing = covering_check(&y, &z, &x);
            emit(&json!({ "covered": missing.is_none(), "first_uncovered": missing }));
            Ok(verdict(missing.is_none()))
        }
        VerifyCommand::GapContains { input } => {
            let inp: GapContainsInput = read(&input)?;
            let missing = gap_containment(&inp.gap, &IntegerSet::new(inp.set), cap)?;
            emit(&json!({ "contained": missing.is_none(), "first_missing": missing }));
            Ok(verdict(missing.is_none()))
        }
    }
}

pub fn bench(g: &Global, args: &BenchArgs) -> Result<u8> {
    if args.suite != "foursum-scaling" {
        bail!("unknown suite {:?}; available: foursum-scaling", args.suite);
    }
    let mut cfg = BenchConfig { seed: g.seed, partitions: args.partitions, backend: backend(g), timing: args.timing, ..BenchConfig::default() };
    if let Some(sizes) = &args.sizes {
        cfg.sizes = sizes.clone();
    }
    let report = foursum_scaling(&cfg)?;
    match g.format {
        Format::Json => print!("{}", report.to_json_lines()),
        Format::Csv => print!("{}", report.to_csv()),
    }
    Ok(SOLVED)
}
