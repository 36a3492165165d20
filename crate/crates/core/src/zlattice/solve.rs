//! Linear systems over the integers and over `Z/mZ`, decided through the
//! Smith normal form.
//!
//! With `U * A * V = D`, the system `A x = c` becomes `D y = U c` with
//! `x = V y`. Because `U` and `V` are unimodular they stay invertible modulo
//! any `m`, so the same reduction decides `A x ≡ c (mod m)` one diagonal
//! congruence at a time. This is equivalent to integer solvability of the
//! augmented system `[A | m I] (x, y) = c`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::matrix::{bigint_json, IntegerMatrix};
use super::normal_form::snf;
use crate::error::{Error, Result};

/// A scalar congruence `diag * x ≡ rhs (mod modulus)` with no solution.
///
/// Checkable on its own: `gcd(diag, modulus)` does not divide `rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailingCongruence {
    #[serde(with = "bigint_json")]
    pub diag: BigInt,
    #[serde(with = "bigint_json")]
    pub rhs: BigInt,
    #[serde(with = "bigint_json")]
    pub modulus: BigInt,
}

impl FailingCongruence {
    /// Re-derives unsolvability from the three integers alone.
    pub fn is_valid(&self) -> bool {
        if !self.modulus.is_positive() {
            return false;
        }
        let g = self.diag.gcd(&self.modulus);
        !self.rhs.is_multiple_of(&g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Solvable,
    Unsolvable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    #[serde(
        with = "bigint_json::vec::option",
        skip_serializing_if = "Option::is_none"
    )]
    pub witness: Option<Vec<BigInt>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<FailingCongruence>,
}

impl SolveOutcome {
    pub fn is_solvable(&self) -> bool {
        self.status == SolveStatus::Solvable
    }

    fn solvable(witness: Vec<BigInt>) -> Self {
        Self {
            status: SolveStatus::Solvable,
            witness: Some(witness),
            certificate: None,
        }
    }

    fn unsolvable(certificate: FailingCongruence) -> Self {
        Self {
            status: SolveStatus::Unsolvable,
            witness: None,
            certificate: Some(certificate),
        }
    }
}

fn check_rhs(a: &IntegerMatrix, c: &[BigInt]) -> Result<()> {
    if c.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {}, matrix has {} rows",
            c.len(),
            a.rows()
        )));
    }
    Ok(())
}

/// Finds an integer `x` with `A x = c`, or `None` when none exists.
///
/// Free coordinates of the diagonalized system are set to zero.
pub fn solve_integer(a: &IntegerMatrix, c: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    check_rhs(a, c)?;
    let nf = snf(a)?;
    let target = nf.left.mul_vec(c)?;
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, rhs) in target.iter().enumerate() {
        let d = if i < a.cols() {
            nf.normal.get(i, i)
        } else {
            &BigInt::ZERO
        };
        if d.is_zero() {
            if !rhs.is_zero() {
                return Ok(None);
            }
        } else {
            let (q, r) = rhs.div_rem(d);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        }
    }
    Ok(Some(nf.right.mul_vec(&y)?))
}

/// Decides `A x ≡ c (mod m)`.
///
/// Witnesses are reduced into `[0, m)`. Each diagonal congruence `d y ≡ e`
/// takes its smallest nonnegative solution modulo `m / gcd(d, m)`; free
/// coordinates are zero. An unsolvable system reports the first diagonal
/// congruence that fails.
pub fn solve_mod(a: &IntegerMatrix, c: &[BigInt], m: &BigInt) -> Result<SolveOutcome> {
    check_rhs(a, c)?;
    if m < &BigInt::one() {
        return Err(Error::InvalidModulus {
            min: 1,
            got: m.clone(),
        });
    }
    if m.is_one() {
        return Ok(SolveOutcome::solvable(vec![BigInt::zero(); a.cols()]));
    }

    let nf = snf(a)?;
    let target = nf.left.mul_vec(c)?;
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, rhs) in target.iter().enumerate() {
        let d = if i < a.cols() {
            nf.normal.get(i, i).clone()
        } else {
            BigInt::zero()
        };
        let e = rhs.mod_floor(m);
        match solve_scalar(&d, &e, m) {
            Some(v) => {
                if i < a.cols() {
                    y[i] = v;
                }
            }
            None => {
                return Ok(SolveOutcome::unsolvable(FailingCongruence {
                    diag: d,
                    rhs: e,
                    modulus: m.clone(),
                }))
            }
        }
    }
    let x = nf
        .right
        .mul_vec(&y)?
        .into_iter()
        .map(|v| v.mod_floor(m))
        .collect();
    Ok(SolveOutcome::solvable(x))
}

/// Smallest nonnegative `x` with `d x ≡ e (mod m)`, if any.
pub fn solve_scalar(d: &BigInt, e: &BigInt, m: &BigInt) -> Option<BigInt> {
    let d = d.mod_floor(m);
    let e = e.mod_floor(m);
    let ext = d.extended_gcd(m);
    let g = ext.gcd;
    if !e.is_multiple_of(&g) {
        return None;
    }
    let reduced = m / &g;
    // ext.x * d ≡ g (mod m), so scaling by e/g solves the congruence.
    Some((ext.x * (e / &g)).mod_floor(&reduced))
}
