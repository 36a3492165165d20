use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anchain_core::oracle::enumeration_size;
use anchain_core::zlattice::json_integer_vec;
use anchain_core::{
    assemble_system, brute_force_membership, build_resolution, canonical_json,
    closed_form_verdict, decide_membership, recurrence_trace, run_agreement, snf as smith,
    solve_integer, solve_mod, FiberType, GridSpec, IntegerMatrix, ObstructionSystem,
    RecurrenceTrace, ResolutionConfig, Verdict, DEFAULT_ORACLE_CAP,
};
use num_bigint::BigInt;
use serde_json::json;

use crate::{
    CheckArgs, CheckFormat, Failure, FiberSet, GraphArgs, ScanArgs, ScanFormat, SnfArgs,
    SolveArgs, EXIT_DISAGREEMENT, EXIT_SOLVABLE, EXIT_UNSOLVABLE,
};

type CmdResult = Result<u8, Failure>;

fn verdict_code(solvable: bool) -> u8 {
    if solvable {
        EXIT_SOLVABLE
    } else {
        EXIT_UNSOLVABLE
    }
}

fn config_from_flags(n: i64, t: i64, fiber: FiberType) -> Result<ResolutionConfig, Failure> {
    if n < 1 {
        return Err(Failure::usage(format!("--n must be at least 1 (got {n})")));
    }
    if t < 1 || t > n {
        return Err(Failure::usage(format!("--t must lie in [1, {n}] (got {t})")));
    }
    ResolutionConfig::new(n, t, fiber).map_err(|e| Failure::usage(e.to_string()))
}

fn internal(e: anchain_core::Error) -> Failure {
    Failure::usage(e.to_string())
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_text<T: serde::Serialize>(value: &T) -> Result<String, Failure> {
    canonical_json(value).map_err(|e| Failure::usage(format!("serialization failed: {e}")))
}

fn read_file(path: &Path, flag: &str) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{flag}: cannot read {}: {e}", path.display())))
}

fn vector_text(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn describe(v: &Verdict) -> String {
    let mut s = String::from(if v.solvable { "solvable" } else { "unsolvable" });
    if let Some(w) = &v.witness {
        let _ = write!(s, ", witness (a, b_1..b_n) = {}", vector_text(w));
    }
    if let Some(c) = &v.certificate {
        let _ = write!(s, ", certificate {}·x ≡ {} (mod {})", c.diag, c.rhs, c.modulus);
    }
    s
}

fn render_system(system: &ObstructionSystem, out: &mut String) {
    let cols: Vec<String> = system.span_classes.iter().map(|c| c.name()).collect();
    let _ = writeln!(out, "pairing equations (columns {}; rhs = pairing with C):", cols.join(", "));
    for (i, row) in system.test_curves.iter().enumerate() {
        let entries: Vec<String> = system.matrix.row(i).iter().map(|e| format!("{e:>2}")).collect();
        let _ = writeln!(out, "  {:<3} [{}] = {}", row.name(), entries.join(" "), system.target[i]);
    }
}

fn render_trace(trace: &RecurrenceTrace, out: &mut String) {
    let _ = writeln!(out, "elimination along the chain:");
    for step in &trace.steps {
        let _ = writeln!(out, "  {:<8} {}", step.label, step.relation);
    }
    let _ = writeln!(out, "  terminal {}", trace.terminal.relation);
    let _ = writeln!(out, "  {}", trace.conclusion);
}

pub fn check(args: CheckArgs) -> CmdResult {
    let config = config_from_flags(args.n, args.t, args.fiber.into())?;
    if args.m < 2 {
        return Err(Failure::usage(format!("--m must be at least 2 (got {})", args.m)));
    }
    let m = args.m as u64;

    let system = assemble_system(&build_resolution(config));
    let solver = decide_membership(&system, m).map_err(internal)?;
    let closed = closed_form_verdict(config, m).map_err(internal)?;
    let trace = recurrence_trace(config, m).map_err(internal)?;
    let oracle = brute_force_membership(&system, m, DEFAULT_ORACLE_CAP).map_err(internal)?;

    let agree = solver.solvable == closed.solvable
        && trace.solvable() == solver.solvable
        && oracle.as_ref().is_none_or(|o| o.solvable == solver.solvable);

    match args.format {
        CheckFormat::Json => {
            let doc = json!({
                "verdict": solver,
                "closed_form": closed,
                "oracle": oracle,
                "trace": trace,
                "agree": agree,
            });
            print!("{}", json_text(&doc)?);
        }
        CheckFormat::Human => {
            let mut out = String::new();
            let _ = writeln!(out, "configuration: {config}, m = {m}");
            render_system(&system, &mut out);
            let _ = writeln!(out, "solver:      {}", describe(&solver));
            let _ = writeln!(out, "closed form: {}", describe(&closed));
            match &oracle {
                Some(o) => {
                    let size = enumeration_size(m, system.matrix.cols()).unwrap_or(0);
                    let _ = writeln!(out, "oracle:      {} ({size} vectors)", describe(o));
                }
                None => {
                    let _ = writeln!(out, "oracle:      skipped (enumeration over cap)");
                }
            }
            render_trace(&trace, &mut out);
            let _ = writeln!(out, "verdict: {}", solver.interpretation.describe());
            print!("{out}");
        }
    }

    if !agree {
        eprintln!("MISMATCH: decision paths disagree for {config}, m = {m}");
        return Ok(EXIT_DISAGREEMENT);
    }
    Ok(verdict_code(solver.solvable))
}

fn range_flag(lo: i64, hi: i64, lo_flag: &str, hi_flag: &str, min: i64) -> Result<(i64, i64), Failure> {
    if lo < min {
        return Err(Failure::usage(format!("--{lo_flag} must be at least {min} (got {lo})")));
    }
    if hi < lo {
        return Err(Failure::usage(format!(
            "--{hi_flag} ({hi}) must not be below --{lo_flag} ({lo})"
        )));
    }
    Ok((lo, hi))
}

pub fn scan(args: ScanArgs) -> CmdResult {
    let (n_lo, n_hi) = range_flag(args.n_min, args.n_max, "n-min", "n-max", 1)?;
    let (m_lo, m_hi) = range_flag(args.m_min, args.m_max, "m-min", "m-max", 2)?;
    let n_lo = u32::try_from(n_lo).map_err(|_| Failure::usage("--n-min is too large"))?;
    let n_hi = u32::try_from(n_hi).map_err(|_| Failure::usage("--n-max is too large"))?;
    let fibers = match args.fibers {
        FiberSet::Both => FiberType::ALL.to_vec(),
        FiberSet::Irreducible => vec![FiberType::Irreducible],
        FiberSet::Reducible => vec![FiberType::Reducible],
    };
    let grid = GridSpec::new((n_lo, n_hi), (m_lo as u64, m_hi as u64), fibers, args.oracle_cap)
        .map_err(internal)?;
    let report = run_agreement(&grid);

    let text = match args.format {
        ScanFormat::Csv => report.to_csv(),
        ScanFormat::Json => json_text(&report)?,
    };
    emit(&text, args.out.as_deref())?;
    if args.out.is_some() {
        let s = &report.summary;
        eprintln!(
            "{} configs, {} agree, {} disagree, oracle ran on {}",
            s.configs, s.agreeing, s.disagreeing, s.oracle_checked
        );
    }
    Ok(if report.all_agree() {
        EXIT_SOLVABLE
    } else {
        EXIT_DISAGREEMENT
    })
}

pub fn graph(args: GraphArgs) -> CmdResult {
    let config = config_from_flags(args.n, args.t, args.fiber.into())?;
    emit(&build_resolution(config).to_dot(), args.out.as_deref())?;
    Ok(EXIT_SOLVABLE)
}

fn load_matrix(path: &Path) -> Result<IntegerMatrix, Failure> {
    IntegerMatrix::from_json_str(&read_file(path, "--matrix")?)
        .map_err(|e| Failure::usage(format!("--matrix: {e}")))
}

pub fn snf(args: SnfArgs) -> CmdResult {
    let a = load_matrix(&args.matrix)?;
    let nf = smith(&a).map_err(internal)?;
    let doc = json!({ "d": nf.normal, "u": nf.left, "v": nf.right });
    print!("{}", json_text(&doc)?);
    Ok(EXIT_SOLVABLE)
}

pub fn solve(args: SolveArgs) -> CmdResult {
    let a = load_matrix(&args.matrix)?;
    let text = read_file(&args.vector, "--vector")?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("--vector: invalid JSON: {e}")))?;
    let c = json_integer_vec(&value).map_err(|e| Failure::usage(format!("--vector: {e}")))?;
    if c.len() != a.rows() {
        return Err(Failure::usage(format!(
            "--vector has {} entries but the matrix has {} rows",
            c.len(),
            a.rows()
        )));
    }

    match args.modulus {
        Some(raw) => {
            let m: BigInt = raw
                .trim()
                .parse()
                .map_err(|_| Failure::usage(format!("--mod must be an integer (got {raw})")))?;
            if m < BigInt::from(1) {
                return Err(Failure::usage(format!("--mod must be at least 1 (got {m})")));
            }
            let outcome = solve_mod(&a, &c, &m).map_err(internal)?;
            print!("{}", json_text(&outcome)?);
            Ok(verdict_code(outcome.is_solvable()))
        }
        None => {
            let x = solve_integer(&a, &c).map_err(internal)?;
            let doc = match &x {
                Some(x) => json!({
                    "status": "solvable",
                    "witness": serde_json::to_value(anchain_core::zlattice::BigIntVec(x))
                        .map_err(|e| Failure::usage(e.to_string()))?,
                }),
                None => json!({ "status": "unsolvable" }),
            };
            print!("{}", json_text(&doc)?);
            Ok(verdict_code(x.is_some()))
        }
    }
}
