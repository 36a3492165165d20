//! Exact integer linear algebra for deciding whether the obstruction class of
//! a `PGL(m)`-bundle on a family of curves with an `A_n` degeneration can be
//! killed on the complement of a divisor after an étale base change.
//!
//! * [`zlattice`]: integer matrices, Hermite/Smith normal forms, solvers
//!   over `Z` and `Z/mZ` with witnesses and certificates.
//! * [`degeneration`]: dual graph and intersection pairing of the resolution.
//! * [`obstruction`]: the pairing equations and three ways of deciding them.
//! * [`oracle`]: brute-force enumeration and grid agreement sweeps.

pub mod degeneration;
pub mod error;
pub mod obstruction;
pub mod oracle;
pub mod zlattice;

pub use degeneration::{build_resolution, CurveLabel, DualGraph, FiberType, ResolutionConfig};
pub use error::{Error, Result};
pub use obstruction::{
    assemble_system, closed_form_verdict, decide_membership, kernel_generators,
    recurrence_trace, Interpretation, ObstructionSystem, RecurrenceTrace, Verdict, VerdictPath,
};
pub use oracle::{
    brute_force_membership, brute_force_solve_mod, run_agreement, AgreementRecord,
    AgreementReport, Enumeration, GridSpec, DEFAULT_ORACLE_CAP,
};
pub use zlattice::{
    hnf, snf, solve_integer, solve_mod, FailingCongruence, IntegerMatrix, NormalFormResult,
    SolveOutcome, SolveStatus,
};

/// Pretty JSON with object keys in sorted order, newline-terminated.
///
/// Going through [`serde_json::Value`] sorts keys, so parsing the output and
/// printing it again with this function reproduces it byte for byte.
pub fn canonical_json<T: serde::Serialize>(value: &T) -> serde_json::Result<String> {
    let v = serde_json::to_value(value)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}
