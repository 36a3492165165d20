//! Span membership of `[C]` in the classes of `D, E1..En` modulo `m`.
//!
//! Writing `[C] = a [D] + sum b_i [E_i]` and pairing both sides with every
//! proper curve in the special fibre (the chain curves and the fibre
//! components) gives one integer equation per curve in the unknowns
//! `(a, b_1, ..., b_n)`. The class relation can be achieved after an étale
//! base change exactly when these equations are solvable modulo `m`, and when
//! they are not, the obstruction class of the induced `PGL(m)`-bundle
//! survives on the complement of `D` over every étale neighbourhood.
//!
//! Three independent routes decide the question:
//! * [`decide_membership`] runs the generic Smith-form solver on the system,
//! * [`closed_form_verdict`] evaluates the divisibility criteria
//!   (reducible fibre: `m | t`; irreducible fibre: `gcd(n+1, m) | t`),
//! * [`crate::oracle::brute_force_membership`] enumerates `(Z/m)^(n+1)`.
//!
//! [`recurrence_trace`] spells out the elimination behind the closed form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::degeneration::{CurveLabel, DualGraph, FiberType, ResolutionConfig};
use crate::error::{Error, Result};
use crate::zlattice::{bigint_json, solve_mod, solve_scalar, FailingCongruence, IntegerMatrix};

/// The pairing equations as a matrix system `matrix * (a, b_1..b_n) = target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionSystem {
    pub config: ResolutionConfig,
    /// Row labels: `E1..En` then the fibre component(s).
    pub test_curves: Vec<CurveLabel>,
    /// Column labels: `D` then `E1..En`.
    pub span_classes: Vec<CurveLabel>,
    pub matrix: IntegerMatrix,
    pub target: Vec<BigInt>,
}

impl ObstructionSystem {
    /// True when `x` satisfies every equation modulo `m`.
    pub fn satisfied_by(&self, x: &[BigInt], m: u64) -> bool {
        let m = BigInt::from(m);
        match self.matrix.mul_vec(x) {
            Ok(lhs) => lhs
                .iter()
                .zip(&self.target)
                .all(|(l, r)| (l - r).is_multiple_of(&m)),
            Err(_) => false,
        }
    }
}

/// The classes spanning the kernel of restriction to the complement of
/// `D ∪ E`: one per codimension-one component removed, `D` first.
pub fn kernel_generators(graph: &DualGraph) -> Vec<CurveLabel> {
    std::iter::once(CurveLabel::Dtilde)
        .chain(graph.exceptional_curves())
        .collect()
}

pub fn assemble_system(graph: &DualGraph) -> ObstructionSystem {
    let test_curves: Vec<CurveLabel> = graph
        .exceptional_curves()
        .chain(graph.fiber_components())
        .collect();
    let span_classes = kernel_generators(graph);

    let pair = |a: CurveLabel, b: CurveLabel| -> i64 {
        graph
            .intersection_number(a, b)
            .expect("pairings between fibre curves and span classes are always defined")
    };
    let mut entries = Vec::with_capacity(test_curves.len() * span_classes.len());
    for &row in &test_curves {
        entries.extend(span_classes.iter().map(|&col| BigInt::from(pair(row, col))));
    }
    let matrix = IntegerMatrix::new(test_curves.len(), span_classes.len(), entries)
        .expect("resolution always has at least one chain curve");
    let target = test_curves
        .iter()
        .map(|&row| BigInt::from(pair(CurveLabel::Ctilde, row)))
        .collect();

    ObstructionSystem {
        config: graph.config(),
        test_curves,
        span_classes,
        matrix,
        target,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictPath {
    Solver,
    ClosedForm,
    Oracle,
}

impl fmt::Display for VerdictPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictPath::Solver => "solver",
            VerdictPath::ClosedForm => "closed_form",
            VerdictPath::Oracle => "oracle",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Interpretation {
    /// The pairing equations are solvable; the obstruction class vanishes on
    /// the complement after some étale base change. This alone does not
    /// make the bundle trivial there.
    ObstructionCanVanish,
    /// No étale neighbourhood kills the obstruction: property (L) fails.
    PropertyLFails,
}

impl Interpretation {
    pub fn from_solvable(solvable: bool) -> Self {
        if solvable {
            Interpretation::ObstructionCanVanish
        } else {
            Interpretation::PropertyLFails
        }
    }

    pub fn describe(&self) -> &'static str {
        match self {
            Interpretation::ObstructionCanVanish => {
                "obstruction class can vanish on the complement after an étale base change"
            }
            Interpretation::PropertyLFails => {
                "property (L) fails: the obstruction class survives on every étale neighbourhood"
            }
        }
    }
}

/// Outcome of one decision route. `witness` is `(a, b_1, ..., b_n)` in `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub config: ResolutionConfig,
    pub m: u64,
    pub solvable: bool,
    #[serde(
        with = "bigint_json::vec::option",
        skip_serializing_if = "Option::is_none"
    )]
    pub witness: Option<Vec<BigInt>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<FailingCongruence>,
    pub path: VerdictPath,
    pub interpretation: Interpretation,
}

impl Verdict {
    pub(crate) fn new(
        config: ResolutionConfig,
        m: u64,
        path: VerdictPath,
        witness: Option<Vec<BigInt>>,
        certificate: Option<FailingCongruence>,
    ) -> Self {
        let solvable = witness.is_some();
        Self {
            config,
            m,
            solvable,
            witness,
            certificate,
            path,
            interpretation: Interpretation::from_solvable(solvable),
        }
    }
}

/// Decides the system with the Smith-form solver.
pub fn decide_membership(system: &ObstructionSystem, m: u64) -> Result<Verdict> {
    if m < 1 {
        return Err(Error::InvalidModulus {
            min: 1,
            got: BigInt::from(m),
        });
    }
    let out = solve_mod(&system.matrix, &system.target, &BigInt::from(m))?;
    Ok(Verdict::new(
        system.config,
        m,
        VerdictPath::Solver,
        out.witness,
        out.certificate,
    ))
}

fn require_modulus_two(m: u64) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidModulus {
            min: 2,
            got: BigInt::from(m),
        });
    }
    Ok(())
}

/// The scalar congruence `coefficient * x ≡ rhs (mod m)` the system reduces
/// to. Reducible: `b_1 = 1` is forced, leaving `t ≡ 0`, i.e. `0 * x ≡ t`.
/// Irreducible: `(n+1) * b_n ≡ t`.
fn terminal_congruence(config: ResolutionConfig) -> (u64, u64) {
    let t = u64::from(config.t());
    match config.fiber() {
        FiberType::Reducible => (0, t),
        FiberType::Irreducible => (u64::from(config.n()) + 1, t),
    }
}

/// Solves the system by back-substitution along the chain, or returns `None`
/// when the terminal congruence has no solution.
fn back_substitute(config: ResolutionConfig, m: u64) -> Option<Vec<BigInt>> {
    let n = config.n() as usize;
    let t = config.t() as usize;
    let modulus = BigInt::from(m);
    let (b_first, b_last) = match config.fiber() {
        FiberType::Reducible => {
            if t as u64 % m != 0 {
                return None;
            }
            (BigInt::from(1), BigInt::zero())
        }
        FiberType::Irreducible => {
            let b_last = solve_scalar(&BigInt::from(n + 1), &BigInt::from(t), &modulus)?;
            (BigInt::from(1) - &b_last, b_last)
        }
    };
    // b[0] and b[n+1] are zero padding around the chain.
    let mut b = vec![BigInt::zero(); n + 2];
    for (i, slot) in b.iter_mut().enumerate().take(n + 1).skip(1) {
        let v = if i <= t {
            BigInt::from(i) * &b_first
        } else {
            BigInt::from(n - i + 1) * &b_last
        };
        *slot = v.mod_floor(&modulus);
    }
    // The E_t equation is the only one involving a.
    let a = (-(&b[t - 1] - BigInt::from(2) * &b[t] + &b[t + 1])).mod_floor(&modulus);
    let mut witness = Vec::with_capacity(n + 1);
    witness.push(a);
    witness.extend(b.into_iter().skip(1).take(n));
    Some(witness)
}

/// Evaluates the divisibility criterion directly:
/// reducible fibre solvable iff `m | t`, irreducible iff `gcd(n+1, m) | t`.
///
/// Solvable verdicts carry the back-substituted witness; unsolvable ones
/// carry the terminal scalar congruence as certificate.
pub fn closed_form_verdict(config: ResolutionConfig, m: u64) -> Result<Verdict> {
    require_modulus_two(m)?;
    let t = u64::from(config.t());
    let solvable = match config.fiber() {
        FiberType::Reducible => t % m == 0,
        FiberType::Irreducible => t % (u64::from(config.n()) + 1).gcd(&m) == 0,
    };
    let (witness, certificate) = if solvable {
        let w = back_substitute(config, m).expect("criterion guarantees a solution");
        (Some(w), None)
    } else {
        let (coefficient, rhs) = terminal_congruence(config);
        let cert = FailingCongruence {
            diag: BigInt::from(coefficient),
            rhs: BigInt::from(rhs),
            modulus: BigInt::from(m),
        };
        (None, Some(cert))
    };
    Ok(Verdict::new(config, m, VerdictPath::ClosedForm, witness, certificate))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    /// Curve whose pairing equation produced the relation (or a combining step).
    pub label: String,
    pub relation: String,
}

/// The final scalar congruence `coefficient * x ≡ rhs (mod modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TerminalRelation {
    pub relation: String,
    pub coefficient: u64,
    pub rhs: u64,
    pub modulus: u64,
    pub gcd: u64,
    pub solvable: bool,
}

/// Symbolic elimination along the chain, ending in one scalar congruence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecurrenceTrace {
    pub config: ResolutionConfig,
    pub m: u64,
    pub steps: Vec<TraceStep>,
    pub terminal: TerminalRelation,
    pub conclusion: String,
    #[serde(
        with = "bigint_json::vec::option",
        skip_serializing_if = "Option::is_none"
    )]
    pub witness: Option<Vec<BigInt>>,
}

impl RecurrenceTrace {
    pub fn solvable(&self) -> bool {
        self.terminal.solvable
    }
}

fn step(label: impl Into<String>, relation: impl Into<String>) -> TraceStep {
    TraceStep {
        label: label.into(),
        relation: relation.into(),
    }
}

fn verdict_word(solvable: bool) -> &'static str {
    if solvable {
        "solvable"
    } else {
        "unsolvable"
    }
}

/// Rewrites the pairing equations as the chain recurrences
/// `b_i = i·b_1` (`i <= t`) and, from the far end, `b_i = 0` (reducible) or
/// `b_i = (n-i+1)·b_n` (irreducible) for `i >= t`, then matches them at `E_t`.
/// For `n = 1` the two fibre equations are compared directly.
pub fn recurrence_trace(config: ResolutionConfig, m: u64) -> Result<RecurrenceTrace> {
    require_modulus_two(m)?;
    let n = config.n();
    let t = config.t();
    let mut steps = Vec::new();

    let (coefficient, rhs) = terminal_congruence(config);
    let gcd = coefficient.gcd(&m);
    let solvable = rhs % gcd == 0;

    let relation;
    let conclusion;
    match (config.fiber(), n) {
        (FiberType::Reducible, 1) => {
            steps.push(step("F1", "b_1 = 1"));
            steps.push(step("F2", "b_1 = 0"));
            steps.push(step("E1", "a = 2·b_1 (fixes a)"));
            relation = format!("1·b_1 ≡ 0 (mod {m})");
            conclusion = format!(
                "b_1 = 1 and b_1 = 0 ⇒ 1 ≡ 0 (mod {m}): {solvable} ⇒ {}",
                verdict_word(solvable)
            );
        }
        (FiberType::Irreducible, 1) => {
            steps.push(step("F", "2·b_1 = 1"));
            steps.push(step("E1", "a = 2·b_1 (fixes a)"));
            relation = format!("b_1·2 ≡ 1 (mod {m})");
            conclusion = format!(
                "b_1·2 ≡ 1 (mod {m}): gcd(2,{m})={gcd} {} 1 ⇒ {}",
                if solvable { "|" } else { "∤" },
                verdict_word(solvable)
            );
        }
        (fiber, _) => {
            match fiber {
                FiberType::Reducible => {
                    steps.push(step("F1", "b_1 = 1"));
                    steps.push(step("F2", format!("b_{n} = 0")));
                }
                FiberType::Irreducible => {
                    steps.push(step("F", format!("b_1 + b_{n} = 1")));
                }
            }
            for i in 1..t {
                steps.push(step(format!("E{i}"), format!("b_{} = {}·b_1", i + 1, i + 1)));
            }
            for i in (t + 1..=n).rev() {
                let rel = match fiber {
                    FiberType::Reducible => format!("b_{} = 0", i - 1),
                    FiberType::Irreducible => format!("b_{} = {}·b_{n}", i - 1, n - i + 2),
                };
                steps.push(step(format!("E{i}"), rel));
            }
            let a_rel = match (t > 1, t < n) {
                (true, true) => format!("a = 2·b_{t} - b_{} - b_{} (fixes a)", t - 1, t + 1),
                (true, false) => format!("a = 2·b_{t} - b_{} (fixes a)", t - 1),
                (false, true) => format!("a = 2·b_{t} - b_{} (fixes a)", t + 1),
                (false, false) => unreachable!("n >= 2"),
            };
            steps.push(step(format!("E{t}"), a_rel));

            match fiber {
                FiberType::Reducible => {
                    relation = format!("{t}·b_1 ≡ 0 (mod {m})");
                    conclusion = format!(
                        "b_{t} = {t}·b_1 = {t} and b_{t} = 0 ⇒ {t} ≡ 0 (mod {m}): {solvable} ⇒ {}",
                        verdict_word(solvable)
                    );
                }
                FiberType::Irreducible => {
                    steps.push(step(
                        "combine",
                        format!(
                            "b_{t} = {t}·b_1 = {}·b_{n} and b_1 = 1 - b_{n} ⇒ {t}·(1 - b_{n}) = {}·b_{n}",
                            n - t + 1,
                            n - t + 1
                        ),
                    ));
                    relation = format!("b_{n}·{} ≡ {t} (mod {m})", n + 1);
                    conclusion = format!(
                        "b_{n}·{} ≡ {t} (mod {m}): gcd({},{m})={gcd} {} {t} ⇒ {}",
                        n + 1,
                        n + 1,
                        if solvable { "|" } else { "∤" },
                        verdict_word(solvable)
                    );
                }
            }
        }
    }

    Ok(RecurrenceTrace {
        config,
        m,
        steps,
        terminal: TerminalRelation {
            relation,
            coefficient,
            rhs,
            modulus: m,
            gcd,
            solvable,
        },
        conclusion,
        witness: if solvable { back_substitute(config, m) } else { None },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degeneration::build_resolution;
    use CurveLabel::*;

    fn cfg(n: i64, t: i64, fiber: FiberType) -> ResolutionConfig {
        ResolutionConfig::new(n, t, fiber).unwrap()
    }

    fn system(n: i64, t: i64, fiber: FiberType) -> ObstructionSystem {
        assemble_system(&build_resolution(cfg(n, t, fiber)))
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn assemble_reducible_n1() {
        let s = system(1, 1, FiberType::Reducible);
        assert_eq!(s.test_curves, vec![E(1), F1, F2]);
        assert_eq!(s.span_classes, vec![Dtilde, E(1)]);
        assert_eq!(
            s.matrix,
            IntegerMatrix::from_rows(&[[1, -2], [0, 1], [0, 1]]).unwrap()
        );
        assert_eq!(s.target, big(&[0, 1, 0]));
    }

    #[test]
    fn assemble_irreducible_n2_t1() {
        let s = system(2, 1, FiberType::Irreducible);
        assert_eq!(
            s.matrix,
            IntegerMatrix::from_rows(&[[1, -2, 1], [0, 1, -2], [0, 1, 1]]).unwrap()
        );
        assert_eq!(s.target, big(&[0, 0, 1]));
    }

    #[test]
    fn assembled_entries_match_pairing() {
        for fiber in FiberType::ALL {
            for n in 1..=5 {
                for t in 1..=n {
                    let g = build_resolution(cfg(n, t, fiber));
                    let s = assemble_system(&g);
                    let extra = if fiber == FiberType::Irreducible { 1 } else { 2 };
                    assert_eq!(s.matrix.rows(), n as usize + extra);
                    assert_eq!(s.matrix.cols(), n as usize + 1);
                    for (i, &r) in s.test_curves.iter().enumerate() {
                        for (j, &c) in s.span_classes.iter().enumerate() {
                            assert_eq!(
                                s.matrix.get(i, j),
                                &BigInt::from(g.intersection_number(r, c).unwrap())
                            );
                        }
                        assert_eq!(
                            s.target[i],
                            BigInt::from(g.intersection_number(Ctilde, r).unwrap())
                        );
                    }
                    // D column: single 1 at row E_t.
                    let d_col: Vec<_> = (0..s.matrix.rows()).map(|i| s.matrix.get(i, 0).clone()).collect();
                    let nonzero: Vec<_> = d_col.iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
                    assert_eq!(nonzero.len(), 1);
                    assert_eq!(s.test_curves[nonzero[0].0], E(t as u32));
                    assert_eq!(nonzero[0].1, &BigInt::from(1));
                    // Target: single 1 at F (or F1).
                    let hot: Vec<_> = s.target.iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
                    assert_eq!(hot.len(), 1);
                    assert!(matches!(s.test_curves[hot[0].0], Ftilde | F1));
                }
            }
        }
    }

    #[test]
    fn kernel_generator_lists() {
        for fiber in FiberType::ALL {
            let g = build_resolution(cfg(2, 1, fiber));
            assert_eq!(kernel_generators(&g), vec![Dtilde, E(1), E(2)]);
            let g = build_resolution(cfg(1, 1, fiber));
            assert_eq!(kernel_generators(&g), vec![Dtilde, E(1)]);
        }
        let g = build_resolution(cfg(6, 4, FiberType::Reducible));
        assert_eq!(kernel_generators(&g).len(), 7);
    }

    #[test]
    fn solver_fixtures() {
        let v = decide_membership(&system(1, 1, FiberType::Reducible), 2).unwrap();
        assert!(!v.solvable);
        assert_eq!(v.interpretation, Interpretation::PropertyLFails);
        assert!(v.certificate.unwrap().is_valid());

        let s = system(2, 2, FiberType::Reducible);
        let v = decide_membership(&s, 2).unwrap();
        assert!(v.solvable);
        assert_eq!(v.path, VerdictPath::Solver);
        assert!(s.satisfied_by(v.witness.as_ref().unwrap(), 2));
        // Hand-derived witness (a, b_1, b_2) = (1, 1, 0).
        assert!(s.satisfied_by(&big(&[1, 1, 0]), 2));

        let v = decide_membership(&system(3, 1, FiberType::Irreducible), 1).unwrap();
        assert!(v.solvable);
        assert!(decide_membership(&s, 0).is_err());
    }

    #[test]
    fn closed_form_fixtures() {
        assert!(!closed_form_verdict(cfg(2, 1, FiberType::Irreducible), 3).unwrap().solvable);
        assert!(!closed_form_verdict(cfg(5, 3, FiberType::Reducible), 7).unwrap().solvable);
        let v = closed_form_verdict(cfg(3, 2, FiberType::Irreducible), 6).unwrap();
        assert!(v.solvable);
        assert!(system(3, 2, FiberType::Irreducible).satisfied_by(v.witness.as_ref().unwrap(), 6));
        assert!(closed_form_verdict(cfg(3, 2, FiberType::Irreducible), 1).is_err());
    }

    #[test]
    fn closed_form_certificates_are_valid() {
        for fiber in FiberType::ALL {
            for n in 1..=6 {
                for t in 1..=n {
                    for m in 2..=10 {
                        let v = closed_form_verdict(cfg(n, t, fiber), m).unwrap();
                        if let Some(c) = &v.certificate {
                            assert!(c.is_valid(), "{c:?}");
                        }
                        if let Some(w) = &v.witness {
                            assert!(system(n, t, fiber).satisfied_by(w, m));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn trace_reducible_n3_t2() {
        let tr = recurrence_trace(cfg(3, 2, FiberType::Reducible), 5).unwrap();
        assert_eq!(
            tr.conclusion,
            "b_2 = 2·b_1 = 2 and b_2 = 0 ⇒ 2 ≡ 0 (mod 5): false ⇒ unsolvable"
        );
        assert_eq!(tr.terminal.relation, "2·b_1 ≡ 0 (mod 5)");
        let labels: Vec<_> = tr.steps.iter().map(|s| s.label.as_str()).collect();
        assert_eq!(labels, ["F1", "F2", "E1", "E3", "E2"]);
        assert_eq!(tr.steps[2].relation, "b_2 = 2·b_1");
        assert_eq!(tr.steps[3].relation, "b_2 = 0");
    }

    #[test]
    fn trace_irreducible_n3_t2() {
        let tr = recurrence_trace(cfg(3, 2, FiberType::Irreducible), 4).unwrap();
        assert_eq!(tr.terminal.relation, "b_3·4 ≡ 2 (mod 4)");
        assert_eq!(tr.conclusion, "b_3·4 ≡ 2 (mod 4): gcd(4,4)=4 ∤ 2 ⇒ unsolvable");
        assert!(!tr.solvable());
        assert!(tr.witness.is_none());
    }

    #[test]
    fn trace_irreducible_n2_t2() {
        let tr = recurrence_trace(cfg(2, 2, FiberType::Irreducible), 3).unwrap();
        assert_eq!(tr.terminal.relation, "b_2·3 ≡ 2 (mod 3)");
        assert_eq!((tr.terminal.coefficient, tr.terminal.rhs), (3, 2));
        assert!(!tr.solvable());
    }

    #[test]
    fn trace_n1_forms() {
        let tr = recurrence_trace(cfg(1, 1, FiberType::Reducible), 3).unwrap();
        assert_eq!(tr.steps.len(), 3);
        assert!(!tr.solvable());
        let tr = recurrence_trace(cfg(1, 1, FiberType::Irreducible), 3).unwrap();
        assert!(tr.solvable());
        let w = tr.witness.unwrap();
        assert!(system(1, 1, FiberType::Irreducible).satisfied_by(&w, 3));
        let tr = recurrence_trace(cfg(1, 1, FiberType::Irreducible), 4).unwrap();
        assert!(!tr.solvable());
    }

    #[test]
    fn verdict_json_shape() {
        let v = decide_membership(&system(2, 2, FiberType::Reducible), 2).unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["config"]["fiber"], "reducible");
        assert_eq!(json["path"], "solver");
        assert_eq!(json["interpretation"], "obstruction_can_vanish");
        assert!(json.get("certificate").is_none());
        let v = decide_membership(&system(1, 1, FiberType::Reducible), 2).unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert!(json.get("witness").is_none());
        assert!(json["certificate"]["modulus"] == 2);
    }
}
