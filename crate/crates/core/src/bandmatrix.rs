//! Finite truncations of infinite lower-Hessenberg matrices.
//!
//! A [`BandMatrix`] stores rows `0..valid_rows` of an infinite matrix whose row `i` vanishes past
//! column `i + width`. Products and shifts shrink the trusted window pessimistically so that every
//! stored entry equals the corresponding entry of the infinite product.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{AlgebraError, Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BandError {
    #[error("nonzero entry at ({row}, {col}) lies outside the band")]
    BandViolation { row: usize, col: usize },
    #[error("row {row} is outside the validity window of {valid_rows} rows")]
    OutsideWindow { row: usize, valid_rows: usize },
    #[error("validity window exhausted in {op}")]
    WindowExhausted { op: &'static str },
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },
    #[error("malformed matrix: {0}")]
    Malformed(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Multiplication by a power of the shift matrix `Y`, on the left or on the right.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftOp {
    /// `Y^k B`: `(Y^k B)_{ij} = B_{i+k, j}`.
    Left(usize),
    /// `B Y^k`: `(B Y^k)_{ij} = B_{i, j-k}`.
    Right(usize),
}

/// First differing entry found by [`BandMatrix::eq_on_window`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub i: usize,
    pub j: usize,
    pub left: Scalar,
    pub right: Scalar,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}): {} != {}", self.i, self.j, self.left, self.right)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandMatrix {
    field: Field,
    width: usize,
    rows: Vec<Vec<Scalar>>,
}

impl BandMatrix {
    /// A primary matrix: row `i` may only be nonzero in columns `0..=i+1`.
    pub fn from_rows(rows: Vec<Vec<Scalar>>, field: Field) -> Result<Self, BandError> {
        Self::with_width(rows, field, 1)
    }

    /// Rows with profile `i + width`; shorter rows are padded with zeros.
    pub fn with_width(rows: Vec<Vec<Scalar>>, field: Field, width: usize) -> Result<Self, BandError> {
        let mut out = Vec::with_capacity(rows.len());
        for (i, mut row) in rows.into_iter().enumerate() {
            let len = i + width + 1;
            for (j, v) in row.iter().enumerate() {
                if v.field() != field {
                    return Err(BandError::FieldMismatch { left: field, right: v.field() });
                }
                if j >= len && !v.is_zero() {
                    return Err(BandError::BandViolation { row: i, col: j });
                }
            }
            row.resize(len, field.zero());
            out.push(row);
        }
        Ok(BandMatrix { field, width, rows: out })
    }

    #[must_use]
    pub fn zero(field: Field, rows: usize, width: usize) -> Self {
        let rows = (0..rows).map(|i| vec![field.zero(); i + width + 1]).collect();
        BandMatrix { field, width, rows }
    }

    #[must_use]
    pub fn identity(field: Field, rows: usize) -> Self {
        Self::shift_power(field, rows, 0)
    }

    /// `Y^k` truncated to `rows` rows.
    #[must_use]
    pub fn shift_power(field: Field, rows: usize, k: usize) -> Self {
        let mut m = Self::zero(field, rows, k);
        for (i, row) in m.rows.iter_mut().enumerate() {
            row[i + k] = field.one();
        }
        m
    }

    #[must_use]
    pub fn field(&self) -> Field {
        self.field
    }

    /// Row `i` is stored up to column `i + width`.
    #[must_use]
    pub fn width(&self) -> usize {
        self.width
    }

    #[must_use]
    pub fn valid_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, i: usize) -> Result<&[Scalar], BandError> {
        self.rows
            .get(i)
            .map(Vec::as_slice)
            .ok_or(BandError::OutsideWindow { row: i, valid_rows: self.rows.len() })
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.rows.iter().map(Vec::as_slice)
    }

    /// Entry `(i, j)`; structural zeros past the profile are returned as zero.
    pub fn entry(&self, i: usize, j: usize) -> Result<Scalar, BandError> {
        Ok(self.row(i)?.get(j).cloned().unwrap_or_else(|| self.field.zero()))
    }

    /// Stored entry, or `None` for a structural zero; panics outside the window.
    #[must_use]
    pub fn get(&self, i: usize, j: usize) -> Option<&Scalar> {
        self.rows[i].get(j)
    }

    /// Overwrites an entry inside the stored profile.
    pub fn set(&mut self, i: usize, j: usize, value: Scalar) -> Result<(), BandError> {
        let valid_rows = self.rows.len();
        let row = self.rows.get_mut(i).ok_or(BandError::OutsideWindow { row: i, valid_rows })?;
        let slot = row.get_mut(j).ok_or(BandError::BandViolation { row: i, col: j })?;
        *slot = value;
        Ok(())
    }

    /// The first `rows` rows.
    #[must_use]
    pub fn truncated(&self, rows: usize) -> Self {
        BandMatrix { field: self.field, width: self.width, rows: self.rows[..rows.min(self.rows.len())].to_vec() }
    }

    /// Reduces the stored profile to `width`, failing if a nonzero entry would be dropped.
    pub fn narrowed(&self, width: usize) -> Result<Self, BandError> {
        Self::with_width(self.rows.clone(), self.field, width)
    }

    /// Product with window `min(R_A, R_B - width_A)`.
    pub fn mul(&self, other: &BandMatrix) -> Result<BandMatrix, BandError> {
        self.same_field(other)?;
        let valid = self.rows.len().min(other.rows.len().saturating_sub(self.width));
        if valid == 0 {
            return Err(BandError::WindowExhausted { op: "mul" });
        }
        let width = self.width + other.width;
        let zero = self.field.zero();
        let rows = (0..valid)
            .into_par_iter()
            .map(|i| {
                let mut acc = vec![zero.clone(); i + width + 1];
                for (k, a) in self.rows[i].iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in other.rows[k].iter().enumerate() {
                        if !b.is_zero() {
                            acc[j] = &acc[j] + &(a * b);
                        }
                    }
                }
                acc
            })
            .collect();
        Ok(BandMatrix { field: self.field, width, rows })
    }

    /// `A^p`; `p = 0` gives the identity on the same window.
    pub fn pow(&self, p: usize) -> Result<BandMatrix, BandError> {
        let mut acc = BandMatrix::identity(self.field, self.rows.len());
        for _ in 0..p {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `[A^0, A^1, ..., A^p_max]`.
    pub fn powers(&self, p_max: usize) -> Result<Vec<BandMatrix>, BandError> {
        let mut out = vec![BandMatrix::identity(self.field, self.rows.len())];
        for p in 0..p_max {
            let next = out[p].mul(self)?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn shift(&self, op: ShiftOp) -> Result<BandMatrix, BandError> {
        match op {
            ShiftOp::Left(k) => {
                if self.rows.len() <= k {
                    return Err(BandError::WindowExhausted { op: "left shift" });
                }
                Ok(BandMatrix { field: self.field, width: self.width + k, rows: self.rows[k..].to_vec() })
            }
            ShiftOp::Right(k) => {
                let zero = self.field.zero();
                let rows = self
                    .rows
                    .iter()
                    .map(|r| {
                        let mut row = vec![zero.clone(); k];
                        row.extend_from_slice(r);
                        row
                    })
                    .collect();
                Ok(BandMatrix { field: self.field, width: self.width + k, rows })
            }
        }
    }

    pub fn add(&self, other: &BandMatrix) -> Result<BandMatrix, BandError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &BandMatrix) -> Result<BandMatrix, BandError> {
        self.zip(other, |a, b| a - b)
    }

    #[must_use]
    pub fn scale(&self, s: &Scalar) -> BandMatrix {
        let rows = self.rows.iter().map(|r| r.iter().map(|v| s * v).collect()).collect();
        BandMatrix { field: self.field, width: self.width, rows }
    }

    /// `A - Y` on the same window.
    #[must_use]
    pub fn minus_shift(&self) -> BandMatrix {
        let y = BandMatrix::shift_power(self.field, self.rows.len(), 1);
        self.sub(&y).expect("same field and window")
    }

    /// `A + Y` on the same window.
    #[must_use]
    pub fn plus_shift(&self) -> BandMatrix {
        let y = BandMatrix::shift_power(self.field, self.rows.len(), 1);
        self.add(&y).expect("same field and window")
    }

    /// Whether every stored entry vanishes.
    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Scalar::is_zero)
    }

    /// Compares rows `0..rows` and columns `0..cols` (all stored columns if `None`), returning the
    /// first mismatch in row-major order.
    pub fn eq_on_window(
        &self,
        other: &BandMatrix,
        rows: usize,
        cols: Option<usize>,
    ) -> Result<Option<Mismatch>, BandError> {
        self.same_field(other)?;
        if rows > self.rows.len().min(other.rows.len()) {
            return Err(BandError::WindowExhausted { op: "eq_on_window" });
        }
        let zero = self.field.zero();
        for i in 0..rows {
            let stored = i + self.width.max(other.width) + 1;
            let end = cols.map_or(stored, |c| c.min(stored));
            for j in 0..end {
                let a = self.rows[i].get(j).unwrap_or(&zero);
                let b = other.rows[i].get(j).unwrap_or(&zero);
                if a != b {
                    return Ok(Some(Mismatch { i, j, left: a.clone(), right: b.clone() }));
                }
            }
        }
        Ok(None)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self, BandError> {
        serde_json::from_str(s).map_err(|e| BandError::Malformed(e.to_string()))
    }

    fn same_field(&self, other: &BandMatrix) -> Result<(), BandError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(BandError::FieldMismatch { left: self.field, right: other.field })
        }
    }

    fn zip(&self, other: &BandMatrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<BandMatrix, BandError> {
        self.same_field(other)?;
        let width = self.width.max(other.width);
        let zero = self.field.zero();
        let valid = self.rows.len().min(other.rows.len());
        let rows = (0..valid)
            .map(|i| {
                (0..i + width + 1)
                    .map(|j| f(self.rows[i].get(j).unwrap_or(&zero), other.rows[i].get(j).unwrap_or(&zero)))
                    .collect()
            })
            .collect();
        Ok(BandMatrix { field: self.field, width, rows })
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    field: String,
    valid_rows: usize,
    rows: Vec<Vec<String>>,
}

impl Serialize for BandMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        Repr {
            field: self.field.to_string(),
            valid_rows: self.rows.len(),
            rows: self.rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BandMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = Repr::deserialize(deserializer)?;
        let field: Field = repr.field.parse().map_err(D::Error::custom)?;
        if repr.valid_rows > repr.rows.len() {
            return Err(D::Error::custom(format!(
                "valid_rows = {} but only {} rows given",
                repr.valid_rows,
                repr.rows.len()
            )));
        }
        let rows = repr.rows[..repr.valid_rows]
            .iter()
            .map(|r| r.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        let width = rows.iter().enumerate().map(|(i, r)| r.len().saturating_sub(i + 1)).max().unwrap_or(0);
        BandMatrix::with_width(rows, field, width).map_err(D::Error::custom)
    }
}
