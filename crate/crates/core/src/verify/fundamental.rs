//! `Y^k M = Σ_{j=0}^{k+1} M_{kj} M^{k+1-j} Y^j`.

use rayon::prelude::*;

use crate::algebra::Scalar;
use crate::bandmatrix::BandMatrix;

use super::{Failure, Status, VerifyError, VerifyReport};

/// Deepest `k` checkable on `rows` rows: identity `k` is compared on rows `0..rows-k`, and row 0
/// alone is a tautology.
#[must_use]
pub fn fundamental_cap(rows: usize) -> usize {
    rows.saturating_sub(2)
}

/// Checks identities `k = 1..=max_k` (all that fit if `None`).
///
/// Row 0 must be `E_0`; otherwise the report fails at `k = 0`.
pub fn check_fundamental(m: &BandMatrix, max_k: Option<usize>) -> Result<VerifyReport, VerifyError> {
    let rows = m.valid_rows();
    let cap = fundamental_cap(rows);
    if cap == 0 {
        return Err(VerifyError::WindowExhausted { check: "fundamental", needed: 3, available: rows });
    }
    let m = m.narrowed(1)?;
    let field = m.field();
    let target = max_k.unwrap_or(cap);
    let checked = target.min(cap);
    let mut report = VerifyReport::leaf("fundamental", 0, Status::Pass);
    report.requested = max_k;

    for (j, v) in m.row(0)?.iter().enumerate() {
        let want = if j == 0 { field.one() } else { field.zero() };
        if *v != want {
            report.status =
                Status::Fail(Failure { k: 0, i: 0, j, lhs: v.clone(), rhs: want, detail: Some("row 0 must be E_0".into()) });
            return Ok(report);
        }
    }

    let powers = m.powers(checked + 1)?;
    let first = (1..=checked).into_par_iter().filter_map(|k| check_one(&m, &powers, k)).min_by_key(|f| f.k);
    report.status = match first {
        Some(f) => {
            report.checked_depth = f.k - 1;
            Status::Fail(f)
        }
        None => {
            report.checked_depth = checked;
            if target > cap {
                Status::WindowLimited
            } else {
                Status::Pass
            }
        }
    };
    Ok(report)
}

fn check_one(m: &BandMatrix, powers: &[BandMatrix], k: usize) -> Option<Failure> {
    let zero = m.field().zero();
    let coeffs = m.row(k).ok()?;
    for i in 0..m.valid_rows() - k {
        let lhs_row = m.row(i + k).ok()?;
        for c in 0..=i + k + 1 {
            let mut rhs = zero.clone();
            for (j, coeff) in coeffs.iter().enumerate().take(c + 1) {
                if coeff.is_zero() {
                    continue;
                }
                if let Some(p) = powers[k + 1 - j].get(i, c - j) {
                    rhs = rhs + coeff * p;
                }
            }
            let lhs: &Scalar = lhs_row.get(c).unwrap_or(&zero);
            if *lhs != rhs {
                return Some(Failure { k, i, j: c, lhs: lhs.clone(), rhs, detail: None });
            }
        }
    }
    None
}
