//! Hermite and Smith normal forms by elementary integer row/column operations.
//!
//! Pivots are always chosen as the entry of smallest nonzero absolute value in
//! the active block, which keeps intermediate growth small for the tiny
//! matrices this crate is built for. Both forms carry their transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntegerMatrix;
use crate::error::Result;

/// A normal form together with the unimodular transforms producing it:
/// `left * A * right == normal`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFormResult {
    pub normal: IntegerMatrix,
    pub left: IntegerMatrix,
    pub right: IntegerMatrix,
}

impl NormalFormResult {
    /// Diagonal of the normal form, `min(rows, cols)` entries.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.normal.rows().min(self.normal.cols());
        (0..k).map(|i| self.normal.get(i, i).clone()).collect()
    }

    /// Number of nonzero diagonal entries (the rank, for an SNF).
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    /// Recomputes `left * A * right` and compares against the stored form.
    pub fn reproduces(&self, a: &IntegerMatrix) -> bool {
        self.left
            .mul(a)
            .and_then(|la| la.mul(&self.right))
            .is_ok_and(|p| p == self.normal)
    }
}

/// Row-style Hermite normal form: `left * A = normal`, `right` is the identity.
///
/// Pivots are positive, each pivot sits strictly right of the one above it,
/// entries above a pivot lie in `[0, pivot)` and zero rows come last.
pub fn hnf(a: &IntegerMatrix) -> Result<NormalFormResult> {
    let mut h = a.clone();
    let mut left = IntegerMatrix::identity(a.rows())?;
    let mut pivot_row = 0;

    for col in 0..a.cols() {
        if pivot_row == a.rows() {
            break;
        }
        // Euclid down the column until only the pivot row is nonzero.
        loop {
            let best = (pivot_row..a.rows())
                .filter(|&i| !h.get(i, col).is_zero())
                .min_by_key(|&i| h.get(i, col).abs());
            let Some(best) = best else { break };
            h.swap_rows(pivot_row, best);
            left.swap_rows(pivot_row, best);

            let mut clean = true;
            for i in pivot_row + 1..a.rows() {
                if h.get(i, col).is_zero() {
                    continue;
                }
                let q = h.get(i, col) / h.get(pivot_row, col);
                let neg_q = -q;
                h.add_row_multiple(i, pivot_row, &neg_q);
                left.add_row_multiple(i, pivot_row, &neg_q);
                if !h.get(i, col).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.get(pivot_row, col).is_zero() {
            continue;
        }
        if h.get(pivot_row, col).is_negative() {
            h.negate_row(pivot_row);
            left.negate_row(pivot_row);
        }
        let pivot = h.get(pivot_row, col).clone();
        for i in 0..pivot_row {
            let q = h.get(i, col).div_floor(&pivot);
            let neg_q = -q;
            h.add_row_multiple(i, pivot_row, &neg_q);
            left.add_row_multiple(i, pivot_row, &neg_q);
        }
        pivot_row += 1;
    }

    Ok(NormalFormResult {
        normal: h,
        left,
        right: IntegerMatrix::identity(a.cols())?,
    })
}

/// Smith normal form: `left * A * right = normal` with `normal` diagonal,
/// nonnegative, `d1 | d2 | ...`, and zeros trailing.
pub fn snf(a: &IntegerMatrix) -> Result<NormalFormResult> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut left = IntegerMatrix::identity(rows)?;
    let mut right = IntegerMatrix::identity(cols)?;

    for k in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = min_nonzero(&d, k) else {
                // The remaining block is zero.
                return Ok(finish(d, left, right));
            };
            d.swap_rows(k, pi);
            left.swap_rows(k, pi);
            d.swap_cols(k, pj);
            right.swap_cols(k, pj);

            let mut clean = true;
            for i in k + 1..rows {
                if d.get(i, k).is_zero() {
                    continue;
                }
                let neg_q = -(d.get(i, k) / d.get(k, k));
                d.add_row_multiple(i, k, &neg_q);
                left.add_row_multiple(i, k, &neg_q);
                clean &= d.get(i, k).is_zero();
            }
            for j in k + 1..cols {
                if d.get(k, j).is_zero() {
                    continue;
                }
                let neg_q = -(d.get(k, j) / d.get(k, k));
                d.add_col_multiple(j, k, &neg_q);
                right.add_col_multiple(j, k, &neg_q);
                clean &= d.get(k, j).is_zero();
            }
            if !clean {
                continue;
            }

            // Row and column are clear; enforce divisibility on the rest.
            let pivot = d.get(k, k).clone();
            let offender = (k + 1..rows).find(|&i| {
                (k + 1..cols).any(|j| !d.get(i, j).is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(k, i, &one);
                    left.add_row_multiple(k, i, &one);
                }
                None => break,
            }
        }
        if d.get(k, k).is_negative() {
            d.negate_row(k);
            left.negate_row(k);
        }
    }
    Ok(finish(d, left, right))
}

fn finish(normal: IntegerMatrix, left: IntegerMatrix, right: IntegerMatrix) -> NormalFormResult {
    NormalFormResult {
        normal,
        left,
        right,
    }
}

fn min_nonzero(m: &IntegerMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in k..m.rows() {
        for j in k..m.cols() {
            let v = m.get(i, j);
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            if best.as_ref().is_none_or(|(_, b)| abs < *b) {
                best = Some(((i, j), abs));
            }
        }
    }
    best.map(|(idx, _)| idx)
}

/// Checks the Hermite shape conditions on a matrix (transforms not involved).
pub fn is_hermite_form(h: &IntegerMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for i in 0..h.rows() {
        let lead = (0..h.cols()).find(|&j| !h.get(i, j).is_zero());
        match lead {
            None => seen_zero_row = true,
            Some(j) => {
                if seen_zero_row || last_pivot.is_some_and(|p| j <= p) {
                    return false;
                }
                let pivot = h.get(i, j);
                if !pivot.is_positive() {
                    return false;
                }
                if (0..i).any(|r| h.get(r, j).is_negative() || h.get(r, j) >= pivot) {
                    return false;
                }
                last_pivot = Some(j);
            }
        }
    }
    true
}

/// Checks the Smith shape conditions: diagonal, nonnegative, chained, zeros last.
pub fn is_smith_form(d: &IntegerMatrix) -> bool {
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            if i != j && !d.get(i, j).is_zero() {
                return false;
            }
        }
    }
    let diag: Vec<&BigInt> = (0..d.rows().min(d.cols())).map(|i| d.get(i, i)).collect();
    if diag.iter().any(|v| v.is_negative()) {
        return false;
    }
    diag.windows(2).all(|w| {
        if w[0].is_zero() {
            w[1].is_zero()
        } else {
            w[1].is_multiple_of(w[0])
        }
    })
}
