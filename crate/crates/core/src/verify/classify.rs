//! Reading off which row of the family table a verified prefix belongs to.

use serde::{Deserialize, Serialize};

use crate::algebra::Scalar;
use crate::bandmatrix::BandMatrix;
use crate::families::{build_anda, build_generic, build_ore, build_particular, force_bnl, Variant};
use crate::seqlab::QBSeq;

use super::VerifyError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilyTag {
    Ore { b: Scalar, c: Scalar },
    /// Parameters after rescaling row 1 to `(1, b, c)`.
    GenericQuadratic { b: Scalar, c: Scalar },
    Particular,
    Anda { n: usize, d: Scalar, a: Scalar },
    /// `L` lists the terms visible in the window.
    Bnl { a: Scalar, #[serde(rename = "L")] l: Vec<usize> },
    /// Row `n` has the `B(a, L)` shape but row `row ≥ 2n` departs from every `M(L)`.
    UnclassifiedBranch { n: usize, a: Scalar, row: usize },
}

/// A tag plus the factor `α` with `M'_{kj} = α^{j-k} M_{kj}` bringing row 1 to `(1, b, c)`
/// (`α = 1` when no rescaling is needed).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    #[serde(flatten)]
    pub tag: FamilyTag,
    pub scale: Scalar,
}

impl Classification {
    /// The constructor parameters reproducing the prefix, when unscaled and in the table.
    #[must_use]
    pub fn variant(&self) -> Option<Variant> {
        if !self.scale.is_one() {
            return None;
        }
        Some(match &self.tag {
            FamilyTag::Ore { b, c } => Variant::Ore { b: b.clone(), c: c.clone() },
            FamilyTag::GenericQuadratic { b, c } => Variant::Generic { b: b.clone(), c: c.clone() },
            FamilyTag::Particular => Variant::Particular,
            FamilyTag::Anda { n, d, a } => Variant::Anda { n: *n, d: d.clone(), a: a.clone() },
            FamilyTag::Bnl { a, l } => Variant::Bnl { a: a.clone(), l: QBSeq::from_terms(l.clone()).ok()? },
            FamilyTag::UnclassifiedBranch { .. } => return None,
        })
    }
}

/// `M'_{kj} = α^{j-k} M_{kj}`.
pub fn rescale(m: &BandMatrix, alpha: &Scalar) -> Result<BandMatrix, VerifyError> {
    let inv = alpha.inv().map_err(crate::families::FamilyError::from)?;
    let rows = m
        .rows()
        .enumerate()
        .map(|(k, row)| {
            row.iter()
                .enumerate()
                .map(|(j, v)| if j >= k { v * &alpha.pow((j - k) as u32) } else { v * &inv.pow((k - j) as u32) })
                .collect()
        })
        .collect();
    Ok(BandMatrix::with_width(rows, m.field(), m.width())?)
}

fn expect_same(m: &BandMatrix, built: &BandMatrix, what: &str) -> Result<(), VerifyError> {
    match m.eq_on_window(built, m.valid_rows(), None)? {
        None => Ok(()),
        Some(mm) => Err(VerifyError::Inconsistent { row: mm.i, reason: format!("differs from {what} at column {}", mm.j) }),
    }
}

/// Tags `M` with its family; every tag is confirmed by rebuilding the prefix.
pub fn classify(m: &BandMatrix) -> Result<Classification, VerifyError> {
    let rows = m.valid_rows();
    if rows < 2 {
        return Err(VerifyError::WindowExhausted { check: "classify", needed: 2, available: rows });
    }
    let m = m.narrowed(1)?;
    let field = m.field();
    let (a, b, c) = (m.entry(1, 0)?, m.entry(1, 1)?, m.entry(1, 2)?);
    if a.is_zero() {
        expect_same(&m, &build_ore(&b, &c, rows)?, "ore")?;
        return Ok(Classification { tag: FamilyTag::Ore { b, c }, scale: field.one() });
    }
    let m = if a.is_one() { m } else { rescale(&m, &a)? };
    let c = m.entry(1, 2)?;
    let tag = if c.is_one() {
        if !(&b + &field.one()).is_zero() {
            return Err(VerifyError::Inconsistent { row: 1, reason: format!("c = 1 with b = {b} != -1") });
        }
        classify_x_minus_y(&m)?
    } else {
        expect_same(&m, &build_generic(&b, &c, rows)?, "generic")?;
        FamilyTag::GenericQuadratic { b, c }
    };
    Ok(Classification { tag, scale: a })
}

fn classify_x_minus_y(m: &BandMatrix) -> Result<FamilyTag, VerifyError> {
    let rows = m.valid_rows();
    let field = m.field();
    let mt = m.minus_shift();
    let base = build_particular(field, rows)?.minus_shift();
    let Some(first) = mt.eq_on_window(&base, rows, None)? else {
        return Ok(FamilyTag::Particular);
    };
    let n = first.i;
    let row = mt.row(n)?;
    let (d, e1) = (row[0].clone(), row[1].clone());
    let (tn, tn1) = (row[n].clone(), row[n + 1].clone());
    let rest_zero = row.iter().enumerate().all(|(j, v)| [0, 1, n, n + 1].contains(&j) || v.is_zero());
    if !rest_zero || n < 2 {
        return Err(VerifyError::Inconsistent { row: n, reason: "row shape matches no family".into() });
    }
    if (&d + &e1).is_zero() && (&tn + &tn1).is_zero() {
        let a = tn1;
        let built = build_anda(n, &d, &a, rows).map_err(|e| VerifyError::Inconsistent { row: n, reason: e.to_string() })?;
        expect_same(m, &built, "anda")?;
        return Ok(FamilyTag::Anda { n, d, a });
    }
    let a = tn1;
    let bnl_shape = e1 == -field.one() && tn.is_zero() && !a.is_zero() && (&d * &(&a + &field.one())).is_one();
    if !bnl_shape {
        return Err(VerifyError::Inconsistent { row: n, reason: "row shape matches no family".into() });
    }
    let visible: Vec<usize> = (1..rows).filter(|&i| !mt.entry(i, i + 1).map_or(true, |v| v.is_zero())).collect();
    let mut l = QBSeq::new(n, visible.clone())
        .map_err(|e| VerifyError::Inconsistent { row: n, reason: format!("superdiagonal is not a sequence: {e}") })?;
    if l.last() + n < rows {
        l.push(l.last() + n + 1).map_err(|e| VerifyError::Inconsistent { row: n, reason: e.to_string() })?;
    }
    let built = force_bnl(&a, &l, rows)?;
    match m.eq_on_window(&built, rows, None)? {
        None => Ok(FamilyTag::Bnl { a, l: visible }),
        Some(mm) if mm.i >= 2 * n => Ok(FamilyTag::UnclassifiedBranch { n, a, row: mm.i }),
        Some(mm) => Err(VerifyError::Inconsistent { row: mm.i, reason: format!("differs from bnl at column {}", mm.j) }),
    }
}
