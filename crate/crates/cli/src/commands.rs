use std::collections::BTreeMap;
use std::fs;

use anyhow::{bail, Context, Result};
use rand::Rng;
use serde_json::Value;
use sha2::{Digest, Sha256};

use primdeg::constructions::{
    a0, a_k, b_t, exponent_set, monomial_lift, small_exponent_matrix,
};
use primdeg::dense::{to_pattern, DenseTensor, DEFAULT_CELL_CAP};
use primdeg::digraph::{matrix_gamma, wielandt_matrix};
use primdeg::random::{random_dense, random_int_tensor, random_matrix, random_support, seeded};
use primdeg::{wielandt_bound, Error, IndexSet, PatternTensor, TraceOutcome};

use crate::format::TensorDocument;
use crate::report::{Record, RunReport};
use crate::{
    AnalyzeArgs, Command, ConstructArgs, ExponentSetArgs, FamilyArg, OracleCheckArgs, ScanArgs,
    CELL_CAP_ENV,
};

/// Cell cap for dense tensors, from the environment or the library default.
pub fn cell_cap() -> Result<usize> {
    match std::env::var(CELL_CAP_ENV) {
        Ok(v) => v.trim().parse().with_context(|| format!("{CELL_CAP_ENV}={v:?} is not a cell count")),
        Err(_) => Ok(DEFAULT_CELL_CAP),
    }
}

pub fn run(command: &Command, echo: &str) -> Result<RunReport> {
    let mut report = RunReport::default();
    report.push(Record::new("command").field("args", echo));
    match command {
        Command::Analyze(args) => analyze(args, &mut report)?,
        Command::Construct(args) => construct(args, &mut report)?,
        Command::ExponentSet(args) => exponent_set_cmd(args, &mut report)?,
        Command::OracleCheck(args) => oracle_check(args, &mut report)?,
        Command::Scan(args) => scan(args, &mut report)?,
    }
    Ok(report)
}

fn states_value(states: &[IndexSet]) -> Value {
    states.iter().map(|s| Value::from(s.to_string())).collect()
}

pub fn analyze(args: &AnalyzeArgs, report: &mut RunReport) -> Result<()> {
    let bytes = fs::read(&args.path).with_context(|| format!("reading {}", args.path.display()))?;
    let digest = hex(&Sha256::digest(&bytes));
    let text = String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", args.path.display()))?;
    let doc = TensorDocument::parse(&text).with_context(|| format!("parsing {}", args.path.display()))?;
    report.push(
        Record::new("input")
            .field("format", doc.format_tag())
            .field("order", doc.order())
            .field("dim", doc.dim())
            .field("sha256", digest),
    );
    let tensor = doc.to_pattern()?;
    let n = tensor.dim();
    let max_steps = args.max_k.unwrap_or_else(|| wielandt_bound(n));
    if max_steps == 0 {
        bail!("--max-k must be at least 1");
    }
    let result = tensor.analyze_with(max_steps);
    for trace in &result.traces {
        let mut rec = Record::new("column")
            .field("j", trace.column)
            .field("gamma_j", trace.gamma())
            .field("certificate", trace.outcome.kind());
        rec = match trace.outcome {
            TraceOutcome::Reached(k) => rec.field("k", k),
            TraceOutcome::Cycled { first_repeat_at, period } => {
                rec.field("repeat_at", first_repeat_at).field("period", period)
            }
            TraceOutcome::Exhausted(steps) => rec.field("steps", steps),
        };
        if args.per_column {
            rec = rec.field("states", states_value(&trace.states));
        }
        report.push(rec);
    }
    let violations: Vec<String> =
        tensor.necessary_condition_violations().iter().map(ToString::to_string).collect();
    let headline = match (result.gamma, result.is_conclusive()) {
        (Some(g), _) => format!("primitive γ={g}"),
        (None, false) => format!("undecided within max-k={max_steps}"),
        (None, true) if violations.is_empty() => "not primitive".to_owned(),
        (None, true) => format!("not primitive; violation {}", violations.join(", ")),
    };
    report.push(
        Record::new("result")
            .headline(headline)
            .field("primitive", result.primitive)
            .field("gamma", result.gamma)
            .field("bound", result.bound)
            .field("max_k", max_steps)
            .field("conclusive", result.is_conclusive())
            .field("violations", violations),
    );
    Ok(())
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn need(value: Option<usize>, flag: &str, kind: &str) -> Result<usize> {
    value.with_context(|| format!("{kind} requires --{flag}"))
}

fn verify(what: &str, got: Option<usize>, expected: usize) -> Result<usize> {
    match got {
        Some(g) if g == expected => Ok(g),
        _ => Err(Error::Verification(format!("{what} has degree {got:?}, expected {expected}")).into()),
    }
}

pub fn construct(args: &ConstructArgs, report: &mut RunReport) -> Result<()> {
    let n = args.n;
    let (family, doc, gamma) = match args.kind {
        FamilyArg::Wielandt => {
            let m = wielandt_matrix(n)?;
            let g = verify("Wielandt matrix", matrix_gamma(&m), wielandt_bound(n))?;
            (format!("wielandt(n={n})"), TensorDocument::Matrix(m), g)
        }
        FamilyArg::SmallMatrix => {
            let t = need(args.t, "t", "small-matrix")?;
            let m = small_exponent_matrix(n, t)?;
            let g = verify("small-exponent matrix", matrix_gamma(&m), t)?;
            (format!("small-matrix(n={n},t={t})"), TensorDocument::Matrix(m), g)
        }
        FamilyArg::A0 => {
            let order = need(args.m, "m", "a0")?;
            let tensor = a0(order, n)?;
            let g = verify("A0", tensor.analyze().gamma, wielandt_bound(n))?;
            (format!("A0(m={order},n={n})"), TensorDocument::Pattern(tensor), g)
        }
        FamilyArg::Ak => {
            let order = need(args.m, "m", "ak")?;
            let k = need(args.k, "k", "ak")?;
            let tensor = a_k(order, n, k)?;
            let g = verify("A_k", tensor.analyze().gamma, n + k)?;
            (format!("A_{k}(m={order},n={n})"), TensorDocument::Pattern(tensor), g)
        }
        FamilyArg::Bt => {
            let order = need(args.m, "m", "bt")?;
            let t = need(args.t, "t", "bt")?;
            let tensor = b_t(order, n, t)?;
            let g = verify("B_t", tensor.analyze().gamma, t)?;
            (format!("B_{t}(m={order},n={n})"), TensorDocument::Pattern(tensor), g)
        }
    };
    fs::write(&args.out, doc.write()).with_context(|| format!("writing {}", args.out.display()))?;
    let mut rec = Record::new("constructed")
        .field("family", family)
        .field("format", doc.format_tag())
        .field("order", doc.order())
        .field("dim", doc.dim());
    rec = match &doc {
        TensorDocument::Matrix(m) => rec.field("positive_entries", m.count_positive()),
        TensorDocument::Pattern(t) => rec.field("support_sets", t.support_count()),
        TensorDocument::Sparse(s) => rec.field("entries", s.entries.len()),
    };
    report.push(rec.field("out", args.out.display().to_string()));
    report.push(Record::new("result").headline(format!("γ={gamma}")).field("gamma", gamma).field("verified", true));
    Ok(())
}

pub fn exponent_set_cmd(args: &ExponentSetArgs, report: &mut RunReport) -> Result<()> {
    let (m, n) = (args.m, args.n);
    if n < 3 || m < n {
        bail!("exponent-set requires m >= n >= 3, got m = {m}, n = {n}");
    }
    if n > args.max_n {
        bail!("n = {n} exceeds the desk-scale guard --max-n {}", args.max_n);
    }
    let result = exponent_set(m, n)?;
    if let Some(dir) = &args.emit_witnesses {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    for (t, w) in &result.witnesses {
        let verified = w.gamma == Some(*t);
        let mut rec = Record::new("witness")
            .field("t", *t)
            .field("family", w.family.to_string())
            .field("gamma", w.gamma)
            .field("verified", verified);
        if let Some(dir) = &args.emit_witnesses {
            let path = dir.join(format!("B_{t}.txt"));
            fs::write(&path, TensorDocument::Pattern(w.tensor.clone()).write())
                .with_context(|| format!("writing {}", path.display()))?;
            rec = rec.field("file", path.display().to_string());
        }
        report.push(rec);
    }
    let failures = result.failures();
    let headline = if failures.is_empty() {
        "achieved == expected".to_owned()
    } else {
        let list: Vec<String> = failures.iter().map(ToString::to_string).collect();
        format!("achieved != expected; failing t={}", list.join(","))
    };
    report.push(
        Record::new("result")
            .headline(headline)
            .field("m", m)
            .field("n", n)
            .field("expected_max", wielandt_bound(n))
            .field("achieved", result.achieved().len())
            .field("failing", failures.clone()),
    );
    report.verification_failed = !failures.is_empty();
    Ok(())
}

/// Largest explicit tensor power the oracle check materializes.
const EXPLICIT_POWER_CELLS: u128 = 1 << 16;
/// Largest `(AB)C` the associativity spot-check materializes.
const ASSOCIATIVITY_CELLS: u128 = 1 << 12;

fn cells(order: usize, n: usize) -> u128 {
    (n as u128).checked_pow(order as u32).unwrap_or(u128::MAX)
}

/// Least `k <= w_n` with `A^k > 0`, from explicit matrix powers.
fn explicit_matrix_gamma(sup: &DenseTensor<bool>) -> Result<Option<usize>> {
    let mut p = sup.clone();
    for k in 1..=wielandt_bound(sup.dim()) {
        if p.values().iter().all(|&v| v) {
            return Ok(Some(k));
        }
        p = p.shao_product(sup)?;
    }
    Ok(None)
}

#[derive(Default)]
struct OracleTally {
    agree: usize,
    comparisons: usize,
    explicit_power_checks: usize,
    overflow_skips: usize,
    associativity_checks: usize,
    matrix_gamma_checks: usize,
    mismatches: Vec<String>,
}

pub fn oracle_check(args: &OracleCheckArgs, report: &mut RunReport) -> Result<()> {
    let (m, n, steps) = (args.m, args.n, args.max_k);
    if m < 2 {
        bail!("oracle-check requires m >= 2, got m = {m}");
    }
    if steps == 0 {
        bail!("--max-k must be at least 1");
    }
    let cap = cell_cap()?;
    if cells(m, n) > cap as u128 {
        return Err(Error::CapExceeded { cells: cells(m, n), cap }.into());
    }
    let mut rng = seeded(args.seed);
    let mut tally = OracleTally::default();
    for trial in 0..args.trials {
        let before = tally.mismatches.len();
        let a = random_dense(&mut rng, m, n)?;
        let t = to_pattern(&a)?;
        let sup = a.support();
        let recursion = sup.majorization_recursion(steps)?;
        let mut powers = Vec::new();
        let mut p = sup.clone();
        for k in 1..=steps {
            if k > 1 {
                let next_order = (m - 1) * (p.order() - 1) + 1;
                if cells(next_order, n) > EXPLICIT_POWER_CELLS.min(cap as u128) {
                    break;
                }
                p = sup.shao_product(&p)?;
            }
            powers.push(p.majorization_pattern()?);
        }
        for j in 1..=n {
            let states = t.iterate_column(j, steps)?;
            let iterates = match a.apply_to_basis(j, steps) {
                Ok(xs) => Some(xs),
                Err(Error::Overflow(_)) => {
                    tally.overflow_skips += 1;
                    None
                }
                Err(e) => return Err(e.into()),
            };
            for k in 1..=steps {
                let s = states[k - 1];
                let mut check = |route: &str, other: IndexSet| {
                    tally.comparisons += 1;
                    if other != s {
                        tally.mismatches.push(format!("trial {trial} j={j} k={k}: S={s} {route}={other}"));
                    }
                };
                check("recursion", recursion[k - 1].column(j));
                if let Some(xs) = &iterates {
                    check("iterate", xs[k - 1].support_set()?);
                }
                if let Some(pk) = powers.get(k - 1) {
                    tally.explicit_power_checks += 1;
                    check("power", pk.column(j));
                }
            }
        }
        if m == 2 {
            tally.matrix_gamma_checks += 1;
            let via_pattern = matrix_gamma(&t.majorization_pattern());
            let via_powers = explicit_matrix_gamma(&sup)?;
            if via_pattern != via_powers {
                tally.mismatches.push(format!(
                    "trial {trial}: matrix_gamma {via_pattern:?} vs explicit powers {via_powers:?}"
                ));
            }
        }
        if cells((m - 1).pow(3) + 1, n) <= ASSOCIATIVITY_CELLS {
            let [x, y, z] = [0, 1, 2].map(|_| random_int_tensor(&mut rng, m, n, 3));
            let (x, y, z) = (x?, y?, z?);
            tally.associativity_checks += 1;
            if x.shao_product(&y)?.shao_product(&z)? != x.shao_product(&y.shao_product(&z)?)? {
                tally.mismatches.push(format!("trial {trial}: (AB)C != A(BC)"));
            }
        }
        if tally.mismatches.len() == before {
            tally.agree += 1;
        }
    }
    for mismatch in &tally.mismatches {
        report.push(Record::new("mismatch").field("detail", mismatch.clone()));
    }
    report.push(
        Record::new("result")
            .headline(format!("{}/{} agree", tally.agree, args.trials))
            .field("m", m)
            .field("n", n)
            .field("seed", args.seed)
            .field("max_k", steps)
            .field("trials", args.trials)
            .field("agree", tally.agree)
            .field("comparisons", tally.comparisons)
            .field("explicit_power_checks", tally.explicit_power_checks)
            .field("matrix_gamma_checks", tally.matrix_gamma_checks)
            .field("associativity_checks", tally.associativity_checks)
            .field("overflow_skips", tally.overflow_skips),
    );
    report.verification_failed = !tally.mismatches.is_empty();
    Ok(())
}

/// One scan sample: a sparse random matrix lifted monomially, plus up to two
/// extra support sets of size `2..=m-1` on random rows.
fn scan_sample<R: Rng>(rng: &mut R, m: usize, n: usize) -> Result<PatternTensor> {
    let density = rng.gen_range(1.0..3.0) / n as f64;
    let mut t = monomial_lift(&random_matrix(rng, n, density.min(1.0))?, m)?;
    for _ in 0..rng.gen_range(0..=2) {
        let s = random_support(rng, n, m - 1)?;
        if s.len() >= 2 {
            t.insert_support(rng.gen_range(1..=n), s)?;
        }
    }
    Ok(t)
}

pub fn scan(args: &ScanArgs, report: &mut RunReport) -> Result<()> {
    let (m, n) = (args.m, args.n);
    if m < 3 {
        bail!("scan requires m >= 3, got m = {m}");
    }
    if m >= n {
        bail!("scan requires m < n, got m = {m}, n = {n}");
    }
    let mut rng = seeded(args.seed);
    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
    for _ in 0..args.budget {
        if let Some(g) = scan_sample(&mut rng, m, n)?.analyze().gamma {
            *histogram.entry(g).or_default() += 1;
        }
    }
    for (g, count) in &histogram {
        report.push(Record::new("degree").field("gamma", *g).field("count", *count));
    }
    let bound = wielandt_bound(n);
    let unseen: Vec<usize> = (1..=bound).filter(|g| !histogram.contains_key(g)).collect();
    report.push(
        Record::new("result")
            .headline("NON-EXHAUSTIVE sample; nothing is asserted")
            .field("m", m)
            .field("n", n)
            .field("seed", args.seed)
            .field("samples", args.budget)
            .field("primitive", histogram.values().sum::<usize>())
            .field("distinct_degrees", histogram.len())
            .field("bound", bound)
            .field("unseen", unseen),
    );
    Ok(())
}

