//! Exhaustive enumeration over `(Z/m)^cols` and the agreement sweep that
//! compares every decision route over a parameter grid.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::degeneration::{build_resolution, FiberType, ResolutionConfig};
use crate::error::{Error, Result};
use crate::obstruction::{
    assemble_system, closed_form_verdict, decide_membership, ObstructionSystem, Verdict,
    VerdictPath,
};
use crate::zlattice::IntegerMatrix;

pub const DEFAULT_ORACLE_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Enumeration {
    /// `m^cols` exceeds the cap; nothing was enumerated.
    Capped,
    /// Lexicographically smallest solution (first coordinate most significant).
    Solvable(Vec<u64>),
    Unsolvable,
}

/// Number of vectors an enumeration would visit, if it fits in `u64`.
pub fn enumeration_size(m: u64, cols: usize) -> Option<u64> {
    m.checked_pow(u32::try_from(cols).ok()?)
}

/// Scans every `x` in `(Z/m)^cols` in lexicographic order and stops at the
/// first one with `A x ≡ c (mod m)`.
pub fn brute_force_solve_mod(
    a: &IntegerMatrix,
    c: &[BigInt],
    m: u64,
    cap: u64,
) -> Result<Enumeration> {
    if m < 1 {
        return Err(Error::InvalidModulus {
            min: 1,
            got: BigInt::from(m),
        });
    }
    if c.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {}, matrix has {} rows",
            c.len(),
            a.rows()
        )));
    }
    match enumeration_size(m, a.cols()) {
        Some(size) if size <= cap => {}
        _ => return Ok(Enumeration::Capped),
    }

    let big_m = BigInt::from(m);
    let reduce = |v: &BigInt| -> u64 { v.mod_floor(&big_m).to_u64().expect("reduced below m") };
    let (rows, cols) = (a.rows(), a.cols());
    // columns[j][i] = A[i][j] mod m
    let columns: Vec<Vec<u64>> = (0..cols)
        .map(|j| (0..rows).map(|i| reduce(a.get(i, j))).collect())
        .collect();
    let target: Vec<u64> = c.iter().map(reduce).collect();

    // residual[i] = (A x)_i mod m, kept in step with the odometer: bumping
    // x_j by one (with or without wrap-around) adds column j modulo m.
    let mut x = vec![0u64; cols];
    let mut residual = vec![0u64; rows];
    loop {
        if residual == target {
            return Ok(Enumeration::Solvable(x));
        }
        let mut j = cols;
        loop {
            if j == 0 {
                return Ok(Enumeration::Unsolvable);
            }
            j -= 1;
            for (r, &col) in residual.iter_mut().zip(&columns[j]) {
                *r = ((*r as u128 + col as u128) % m as u128) as u64;
            }
            x[j] += 1;
            if x[j] < m {
                break;
            }
            x[j] = 0;
        }
    }
}

/// Oracle verdict for an obstruction system; `None` when over the cap.
/// Unsolvable oracle verdicts carry no certificate.
pub fn brute_force_membership(
    system: &ObstructionSystem,
    m: u64,
    cap: u64,
) -> Result<Option<Verdict>> {
    let witness = match brute_force_solve_mod(&system.matrix, &system.target, m, cap)? {
        Enumeration::Capped => return Ok(None),
        Enumeration::Unsolvable => None,
        Enumeration::Solvable(x) => Some(x.into_iter().map(BigInt::from).collect()),
    };
    Ok(Some(Verdict::new(
        system.config,
        m,
        VerdictPath::Oracle,
        witness,
        None,
    )))
}

/// Parameter grid for [`run_agreement`]; `t` always ranges over `[1, n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridSpec {
    pub n_range: (u32, u32),
    pub m_range: (u64, u64),
    pub fibers: Vec<FiberType>,
    pub oracle_cap: u64,
}

impl GridSpec {
    pub fn new(
        n_range: (u32, u32),
        m_range: (u64, u64),
        fibers: Vec<FiberType>,
        oracle_cap: u64,
    ) -> Result<Self> {
        if n_range.0 < 1 {
            return Err(Error::InvalidGrid(format!("n-min must be at least 1, got {}", n_range.0)));
        }
        if m_range.0 < 2 {
            return Err(Error::InvalidGrid(format!("m-min must be at least 2, got {}", m_range.0)));
        }
        if n_range.0 > n_range.1 {
            return Err(Error::InvalidGrid(format!(
                "n-min {} exceeds n-max {}",
                n_range.0, n_range.1
            )));
        }
        if m_range.0 > m_range.1 {
            return Err(Error::InvalidGrid(format!(
                "m-min {} exceeds m-max {}",
                m_range.0, m_range.1
            )));
        }
        let mut fibers = fibers;
        fibers.sort();
        fibers.dedup();
        Ok(Self {
            n_range,
            m_range,
            fibers,
            oracle_cap,
        })
    }

    /// Cells in report order: n, then t, then m, then fibre.
    pub fn cells(&self) -> Vec<(u32, u32, u64, FiberType)> {
        let mut out = Vec::new();
        for n in self.n_range.0..=self.n_range.1 {
            for t in 1..=n {
                for m in self.m_range.0..=self.m_range.1 {
                    for &fiber in &self.fibers {
                        out.push((n, t, m, fiber));
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AgreementRecord {
    pub n: u32,
    pub t: u32,
    pub m: u64,
    pub fiber: FiberType,
    pub solver: Option<bool>,
    pub closed_form: Option<bool>,
    /// Absent when the enumeration exceeded the cap.
    pub oracle: Option<bool>,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AgreementSummary {
    pub configs: usize,
    pub agreeing: usize,
    pub disagreeing: usize,
    pub oracle_checked: usize,
    pub solvable: usize,
    pub unsolvable: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AgreementReport {
    pub records: Vec<AgreementRecord>,
    pub summary: AgreementSummary,
}

impl AgreementReport {
    pub fn all_agree(&self) -> bool {
        self.records.iter().all(|r| r.agree)
    }

    /// One row per config: `n,t,m,fiber,solver,closed_form,oracle,agree`.
    pub fn to_csv(&self) -> String {
        fn cell(v: Option<bool>, missing: &'static str) -> &'static str {
            match v {
                Some(true) => "solvable",
                Some(false) => "unsolvable",
                None => missing,
            }
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "t", "m", "fiber", "solver", "closed_form", "oracle", "agree"])
            .expect("writing to memory");
        for r in &self.records {
            w.write_record([
                r.n.to_string().as_str(),
                r.t.to_string().as_str(),
                r.m.to_string().as_str(),
                r.fiber.as_str(),
                cell(r.solver, "error"),
                cell(r.closed_form, "error"),
                cell(r.oracle, if r.error.is_some() { "error" } else { "capped" }),
                if r.agree { "true" } else { "false" },
            ])
            .expect("writing to memory");
        }
        let bytes = w.into_inner().expect("flushing to memory");
        String::from_utf8(bytes).expect("csv output is utf-8")
    }
}

fn evaluate_cell(n: u32, t: u32, m: u64, fiber: FiberType, cap: u64) -> AgreementRecord {
    let mut record = AgreementRecord {
        n,
        t,
        m,
        fiber,
        solver: None,
        closed_form: None,
        oracle: None,
        agree: false,
        error: None,
    };
    let outcome = (|| -> Result<()> {
        let config = ResolutionConfig::new(i64::from(n), i64::from(t), fiber)?;
        let system = assemble_system(&build_resolution(config));
        let solver = decide_membership(&system, m)?;
        let closed = closed_form_verdict(config, m)?;
        let oracle = brute_force_membership(&system, m, cap)?;
        record.solver = Some(solver.solvable);
        record.closed_form = Some(closed.solvable);
        record.oracle = oracle.as_ref().map(|v| v.solvable);

        for v in [Some(&solver), Some(&closed), oracle.as_ref()].into_iter().flatten() {
            if let Some(w) = &v.witness {
                if !system.satisfied_by(w, m) {
                    return Err(Error::RejectedWitness(v.path.to_string()));
                }
            }
        }
        record.agree = record.oracle.is_none_or(|o| o == solver.solvable)
            && closed.solvable == solver.solvable;
        Ok(())
    })();
    if let Err(e) = outcome {
        record.agree = false;
        record.error = Some(e.to_string());
    }
    record
}

/// Runs the solver, the closed form and (under the cap) the oracle on every
/// cell of `grid`. Cells are evaluated in parallel; record order is fixed.
pub fn run_agreement(grid: &GridSpec) -> AgreementReport {
    let records: Vec<AgreementRecord> = grid
        .cells()
        .into_par_iter()
        .map(|(n, t, m, fiber)| evaluate_cell(n, t, m, fiber, grid.oracle_cap))
        .collect();

    let mut summary = AgreementSummary {
        configs: records.len(),
        ..Default::default()
    };
    for r in &records {
        if r.agree {
            summary.agreeing += 1;
        } else {
            summary.disagreeing += 1;
        }
        if r.oracle.is_some() {
            summary.oracle_checked += 1;
        }
        match r.solver {
            Some(true) => summary.solvable += 1,
            Some(false) => summary.unsolvable += 1,
            None => {}
        }
        if r.error.is_some() {
            summary.errors += 1;
        }
    }
    AgreementReport { records, summary }
}
