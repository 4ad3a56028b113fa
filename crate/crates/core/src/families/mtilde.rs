//! The particular matrix and the family `A(n, d, a)`, both given through `𝕄 = M - Y`.

use crate::algebra::{find_r_root, AndaSequences, Field, Scalar, DEFAULT_BOUND};
use crate::bandmatrix::BandMatrix;

use super::{from_mtilde_rows, require_depth, FamilyError, ObstructionPoly};

/// Every row of `𝕄` equals `E_0 - E_1`.
pub fn build_particular(field: Field, depth: usize) -> Result<BandMatrix, FamilyError> {
    require_depth(depth)?;
    let rows = (0..depth).map(|_| vec![field.one(), -field.one()]).collect();
    from_mtilde_rows(rows, field)
}

/// `c[k][r]` such that row `kn + j` of `𝕄` is `Σ_r c[k][r] (E_{rn} - E_{rn+1})`, for
/// `k = 0..=k_max`.
///
/// `c[k][0] = d Π_{i=2}^{k} d_i/(d_i + e_i)` and
/// `c[k][r] = a_r/(e_r + d_r) Π_{i=r+1}^{k} d_i/(d_i + e_i)` for `1 ≤ r ≤ k`.
pub fn anda_coefficients(d: &Scalar, a: &Scalar, k_max: usize) -> Result<Vec<Vec<Scalar>>, FamilyError> {
    let field = a.field();
    let seq = AndaSequences::new(a, d, k_max);
    let mut out = vec![vec![field.one()]];
    for k in 1..=k_max {
        let ratio = seq.d[k].checked_div(&seq.r(k))?;
        let mut row: Vec<Scalar> = out[k - 1].iter().map(|c| c * &ratio).collect();
        if k == 1 {
            row[0] = d.clone();
        }
        row.push(seq.a[k].checked_div(&seq.r(k))?);
        out.push(row);
    }
    Ok(out)
}

/// `A(n, d, a)`; fails with the least `k` such that `R_k(a, d) = 0`.
pub fn build_anda(n: usize, d: &Scalar, a: &Scalar, depth: usize) -> Result<BandMatrix, FamilyError> {
    require_depth(depth)?;
    if n < 2 {
        return Err(FamilyError::InvalidParams(format!("n must be at least 2, got {n}")));
    }
    if d.is_one() && a.is_zero() {
        return Err(FamilyError::InvalidParams("(d, a) = (1, 0) is excluded".into()));
    }
    let field = a.field();
    let k_max = (depth - 1) / n;
    let report = find_r_root(a, d, DEFAULT_BOUND.max(k_max))?;
    if let Some(index) = report.index {
        return Err(FamilyError::Obstruction { poly: ObstructionPoly::R, index, x: Box::new(a.clone()), y: Box::new(d.clone()) });
    }
    let coeffs = anda_coefficients(d, a, k_max)?;
    let rows = (0..depth)
        .map(|i| {
            let mut row = vec![field.zero(); i + 2];
            for (r, c) in coeffs[i / n].iter().enumerate() {
                row[r * n] = c.clone();
                row[r * n + 1] = -c;
            }
            row
        })
        .collect();
    from_mtilde_rows(rows, field)
}
