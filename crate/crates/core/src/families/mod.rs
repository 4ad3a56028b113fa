//! Constructors for every row of the classification table.
//!
//! Each constructor returns the prefix of `M` with the requested number of valid rows. The
//! `x - y` families are defined through `𝕄 = M - Y`, available via [`BandMatrix::minus_shift`].

mod bnl;
mod mtilde;
mod quadratic;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Field, Scalar};
use crate::bandmatrix::{BandError, BandMatrix};
use crate::seqlab::{QBSeq, SeqError, Witness};

pub use bnl::{branch_2n, build_bnl, force_bnl, mtilde_of_sequence, BranchCandidate, BranchState};
pub use mtilde::{anda_coefficients, build_anda, build_particular};
pub use quadratic::{build_generic, build_ore};

/// Which obstruction polynomial vanished.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ObstructionPoly {
    Q,
    R,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    /// `Q_index(b, c) = 0` or `R_index(a, d) = 0`.
    #[error("obstruction at index {index}: {poly:?}_{index}({x}, {y}) = 0")]
    Obstruction { poly: ObstructionPoly, index: usize, x: Box<Scalar>, y: Box<Scalar> },
    #[error("c = 1 forces b = -1, got b = {b}")]
    Rejected { b: Scalar },
    #[error("(b, c) = (-1, 1) is the x - y regime; use the particular, anda or bnl variants")]
    Rerouted,
    #[error("sequence is not quasi-balanced: {0}")]
    NotQuasiBalanced(Witness),
    #[error("sequence ending at {last} determines only {covered} rows, {depth} requested")]
    SequenceTooShort { last: usize, covered: usize, depth: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Band(#[from] BandError),
    #[error(transparent)]
    Seq(#[from] SeqError),
}

/// One row of the classification table with its parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum Variant {
    Ore { b: Scalar, c: Scalar },
    Generic { b: Scalar, c: Scalar },
    Particular,
    Anda { n: usize, d: Scalar, a: Scalar },
    Bnl { a: Scalar, #[serde(rename = "L")] l: QBSeq },
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Ore { b, c } => write!(f, "ore(b={b}, c={c})"),
            Variant::Generic { b, c } => write!(f, "generic(b={b}, c={c})"),
            Variant::Particular => write!(f, "particular"),
            Variant::Anda { n, d, a } => write!(f, "anda(n={n}, d={d}, a={a})"),
            Variant::Bnl { a, l } => write!(f, "bnl(a={a}, L={l})"),
        }
    }
}

/// Family choice plus requested depth and coefficient field.
///
/// Rational literals are mapped into `field` when it is a prime field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    #[serde(flatten)]
    pub variant: Variant,
    pub depth: usize,
    #[serde(default = "rational", with = "field_serde")]
    pub field: Field,
}

fn rational() -> Field {
    Field::Rational
}

mod field_serde {
    use super::Field;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(f: &Field, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(f)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Field, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

impl FamilyParams {
    #[must_use]
    pub fn new(variant: Variant, depth: usize) -> Self {
        FamilyParams { variant, depth, field: Field::Rational }
    }

    /// Builds `M`.
    pub fn build(&self) -> Result<BandMatrix, FamilyError> {
        let f = self.field;
        match &self.variant {
            Variant::Ore { b, c } => build_ore(&coerce(b, f)?, &coerce(c, f)?, self.depth),
            Variant::Generic { b, c } => build_generic(&coerce(b, f)?, &coerce(c, f)?, self.depth),
            Variant::Particular => build_particular(f, self.depth),
            Variant::Anda { n, d, a } => build_anda(*n, &coerce(d, f)?, &coerce(a, f)?, self.depth),
            Variant::Bnl { a, l } => build_bnl(&coerce(a, f)?, l, self.depth),
        }
    }
}

/// Maps a scalar into `field`, accepting rationals for prime fields.
pub fn coerce(s: &Scalar, field: Field) -> Result<Scalar, FamilyError> {
    match s {
        _ if s.field() == field => Ok(s.clone()),
        Scalar::Rat(q) => Ok(field.rational(q)?),
        Scalar::Mod(_) => Err(FamilyError::InvalidParams(format!("{s} does not belong to {field}"))),
    }
}

/// Rescales `x` so that the leading coefficient becomes 1: `(a, b, c) ↦ (1, b, ca)`.
pub fn normalize_a(a: &Scalar, b: &Scalar, c: &Scalar) -> Result<(Scalar, Scalar, Scalar), FamilyError> {
    if a.is_zero() {
        return Err(FamilyError::InvalidParams("a = 0 is the Ore case and needs no normalization".into()));
    }
    Ok((a.field().one(), b.clone(), c * a))
}

fn require_depth(depth: usize) -> Result<(), FamilyError> {
    if depth == 0 {
        Err(FamilyError::InvalidParams("depth must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Adds `Y` to rows of `𝕄` and wraps them as a primary matrix.
fn from_mtilde_rows(rows: Vec<Vec<Scalar>>, field: Field) -> Result<BandMatrix, FamilyError> {
    Ok(BandMatrix::from_rows(rows, field)?.plus_shift().narrowed(1)?)
}
