use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
///
/// Empty matrices are rejected at construction, so every value of this type
/// has at least one row and one column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix { rows, cols });
        }
        if entries.len() != rows * cols {
            return Err(Error::EntryCount {
                rows,
                cols,
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    /// Builds a matrix from nested rows; all rows must share one length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            entries.extend(row.iter().map(|&e| BigInt::from(e)));
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(size: usize) -> Result<Self> {
        let mut m = Self::zeros(size, size)?;
        for i in 0..size {
            m.entries[i * size + i] = BigInt::one();
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        &self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[BigInt] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub(crate) fn get_mut(&mut self, row: usize, col: usize) -> &mut BigInt {
        &mut self.entries[row * self.cols + col]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut entries = vec![BigInt::zero(); self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    entries[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        IntegerMatrix::new(self.rows, rhs.cols, entries)
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against a matrix with {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot place {} rows beside {} rows",
                self.rows, rhs.rows
            )));
        }
        let cols = self.cols + rhs.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            entries.extend_from_slice(self.row(i));
            entries.extend_from_slice(rhs.row(i));
        }
        IntegerMatrix::new(self.rows, cols, entries)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        Ok(sign * &a[n * n - 1])
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().is_ok_and(|d| d.abs().is_one())
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub(crate) fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let e = self.get_mut(r, j);
            *e = -std::mem::take(e);
        }
    }

    /// `row[dst] += factor * row[src]`
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let delta = factor * self.get(src, j);
            *self.get_mut(dst, j) += delta;
        }
    }

    /// `col[dst] += factor * col[src]`
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let delta = factor * self.get(i, src);
            *self.get_mut(i, dst) += delta;
        }
    }

    /// Parses the interchange form `{"rows": R, "cols": C, "entries": [...]}`.
    pub fn from_json_value(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("matrix must be a JSON object".into()))?;
        let dim = |key: &str| -> Result<usize> {
            let v = obj
                .get(key)
                .ok_or_else(|| Error::Parse(format!("matrix is missing \"{key}\"")))?;
            let n = json_integer(v)?;
            usize::try_from(n).map_err(|_| Error::Parse(format!("\"{key}\" is not a valid size")))
        };
        let rows = dim("rows")?;
        let cols = dim("cols")?;
        let entries = obj
            .get("entries")
            .ok_or_else(|| Error::Parse("matrix is missing \"entries\"".into()))?;
        Self::new(rows, cols, json_integer_vec(entries)?)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        Self::from_json_value(&value)
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerMatrix{self}")
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl Serialize for IntegerMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("IntegerMatrix", 3)?;
        s.serialize_field("rows", &self.rows)?;
        s.serialize_field("cols", &self.cols)?;
        s.serialize_field("entries", &BigIntVec(&self.entries))?;
        s.end()
    }
}

/// Reads one integer given either as a JSON number or a decimal string.
pub fn json_integer(value: &Value) -> Result<BigInt> {
    let text = match value {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        other => return Err(Error::Parse(format!("expected an integer, got {other}"))),
    };
    BigInt::from_str(&text).map_err(|_| Error::Parse(format!("\"{text}\" is not an integer")))
}

pub fn json_integer_vec(value: &Value) -> Result<Vec<BigInt>> {
    value
        .as_array()
        .ok_or_else(|| Error::Parse("expected a JSON array of integers".into()))?
        .iter()
        .map(json_integer)
        .collect()
}

/// Reduces `value` into `[0, modulus)`.
pub fn reduce_mod(value: &BigInt, modulus: &BigInt) -> BigInt {
    value.mod_floor(modulus)
}

/// Serialization helpers for big integers: numbers when they fit in an `i64`,
/// decimal strings otherwise.
pub mod bigint_json {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match v.to_i64() {
            Some(small) => s.serialize_i64(small),
            None => s.serialize_str(&v.to_string()),
        }
    }

    pub mod vec {
        use num_bigint::BigInt;
        use serde::{Serialize, Serializer};

        pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            super::super::BigIntVec(v).serialize(s)
        }

        pub mod option {
            use num_bigint::BigInt;
            use serde::Serializer;

            pub fn serialize<S: Serializer>(v: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
                match v {
                    Some(v) => super::serialize(v, s),
                    None => s.serialize_none(),
                }
            }
        }
    }
}

struct BigIntRef<'a>(&'a BigInt);

impl Serialize for BigIntRef<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        bigint_json::serialize(self.0, s)
    }
}

/// Serializes a slice of big integers with [`bigint_json`] rules.
pub struct BigIntVec<'a>(pub &'a [BigInt]);

impl Serialize for BigIntVec<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(BigIntRef))
    }
}
