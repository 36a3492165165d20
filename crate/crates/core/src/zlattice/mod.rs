//! Exact integer linear algebra: matrices, Hermite and Smith normal forms,
//! and solvers over `Z` and `Z/mZ` that return witnesses or certificates.

mod matrix;
mod normal_form;
mod solve;

pub use matrix::{bigint_json, BigIntVec, json_integer, json_integer_vec, reduce_mod, IntegerMatrix};
pub use normal_form::{hnf, is_hermite_form, is_smith_form, snf, NormalFormResult};
pub use solve::{
    solve_integer, solve_mod, solve_scalar, FailingCongruence, SolveOutcome, SolveStatus,
};
