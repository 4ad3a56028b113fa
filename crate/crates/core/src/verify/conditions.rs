//! The three `𝕄`-form conditions equivalent to the fundamental identity for `M(L) + Y`.

use crate::algebra::Scalar;
use crate::bandmatrix::{BandMatrix, ShiftOp};
use crate::seqlab::QBSeq;

use super::{Failure, Status, VerifyError, VerifyReport};

/// `𝕄 Y^k 𝕄`, valid on `R - k - 1` rows.
fn sandwich(mt: &BandMatrix, k: usize) -> Result<BandMatrix, VerifyError> {
    Ok(mt.shift(ShiftOp::Right(k))?.mul(mt)?)
}

fn compare(lhs: &BandMatrix, rhs: &BandMatrix, rows: usize, k: usize) -> Result<Option<Failure>, VerifyError> {
    Ok(lhs
        .eq_on_window(rhs, rows, None)?
        .map(|m| Failure { k, i: m.i, j: m.j, lhs: m.left, rhs: m.right, detail: None }))
}

/// Runs `check(k)` for each `k` in order and stops at the first failure.
fn sweep(
    name: &str,
    ks: impl Iterator<Item = usize>,
    mut check: impl FnMut(usize) -> Result<Option<Failure>, VerifyError>,
) -> Result<VerifyReport, VerifyError> {
    let mut depth = 0;
    for k in ks {
        if let Some(f) = check(k)? {
            return Ok(VerifyReport::leaf(name, depth, Status::Fail(f)));
        }
        depth = k;
    }
    Ok(VerifyReport::leaf(name, depth, Status::Pass))
}

/// Checks, on every sound window of `mt`:
/// (1) `𝕄 Y^k 𝕄 = 0` for `k < L_last` with `k, k+1 ∉ L`;
/// (2) `𝕄 Y^{L_r} 𝕄 + Y 𝕄 Y^{L_r - 1} 𝕄 = a Y^{L_r + 1} 𝕄`;
/// (3) `𝕄 Y^{L_r - 1} 𝕄 = a Σ_{i=0}^{L_r} Y^i 𝕄 Y^{L_r - i} - r a^2 Y^{L_r + 1}`.
///
/// `max_rows` restricts the window. Depths in the sub-reports are the largest `k` for (1) and
/// the largest `r` for (2) and (3).
pub fn check_mtilde(
    mt: &BandMatrix,
    a: &Scalar,
    l: &QBSeq,
    max_rows: Option<usize>,
) -> Result<VerifyReport, VerifyError> {
    let rows = max_rows.map_or(mt.valid_rows(), |r| r.min(mt.valid_rows()));
    let mt = mt.truncated(rows);
    if rows < l.term(1) + 2 {
        return Err(VerifyError::WindowExhausted { check: "mtilde", needed: l.term(1) + 2, available: rows });
    }
    let field = mt.field();

    let ks = (0..l.last()).filter(|&k| k + 2 <= rows && !l.contains(k) && !l.contains(k + 1));
    let c1 = sweep("(1)", ks, |k| {
        let s = sandwich(&mt, k)?;
        let zero = BandMatrix::zero(field, s.valid_rows(), s.width());
        compare(&s, &zero, rows - k - 1, k)
    })?;

    let rs2 = (1..=l.len()).filter(|&r| l.term(r) + 2 <= rows);
    let c2 = sweep("(2)", rs2, |r| {
        let lr = l.term(r);
        let lhs = sandwich(&mt, lr)?.add(&sandwich(&mt, lr - 1)?.shift(ShiftOp::Left(1))?)?;
        let rhs = mt.shift(ShiftOp::Left(lr + 1))?.scale(a);
        compare(&lhs, &rhs, rows - lr - 1, r)
    })?;

    let rs3 = (1..=l.len()).filter(|&r| l.term(r) < rows);
    let c3 = sweep("(3)", rs3, |r| {
        let lr = l.term(r);
        let window = rows - lr;
        let lhs = sandwich(&mt, lr - 1)?;
        let mut sum = BandMatrix::zero(field, window, lr + 1);
        for i in 0..=lr {
            sum = sum.add(&mt.shift(ShiftOp::Left(i))?.shift(ShiftOp::Right(lr - i))?.truncated(window))?;
        }
        let r_a2 = field.int(r as i64) * a * a;
        let rhs = sum.scale(a).sub(&BandMatrix::shift_power(field, window, lr + 1).scale(&r_a2))?;
        compare(&lhs, &rhs, window, r)
    })?;

    Ok(VerifyReport::combine("mtilde", vec![c1, c2, c3]))
}
