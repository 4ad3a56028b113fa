//! The family `B(a, L)` built from quasi-balanced sequences, and the four branches at row `2n`.

use serde::Serialize;

use crate::algebra::{Field, Scalar};
use crate::bandmatrix::BandMatrix;
use crate::seqlab::{is_quasi_balanced, QBSeq};

use super::{from_mtilde_rows, require_depth, FamilyError};

fn check_a(a: &Scalar) -> Result<Scalar, FamilyError> {
    let one = a.field().one();
    if a.is_zero() || (a + &one).is_zero() {
        return Err(FamilyError::InvalidParams(format!("a must avoid 0 and -1, got {a}")));
    }
    Ok((a + &one).inv()?)
}

/// `e_i`: the unit vector with a 1 in column `i`, as a sparse coefficient list.
fn unit_row(len: usize, field: Field, entries: &[(usize, Scalar)]) -> Vec<Scalar> {
    let mut row = vec![field.zero(); len];
    for (j, v) in entries {
        row[*j] = v + &row[*j];
    }
    row
}

/// Rows `0..depth` of `M(L)` with `d = 1/(a+1)`:
/// `E_0 - E_1` before `L_1`, `d^k (E_0 - E_1)` strictly between `L_k` and `L_{k+1}`, and
/// `d^k E_0 - d^{k-1} E_1 + a E_{L_k+1}` at `L_k`.
///
/// Quasi-balance is not checked, but `L` must determine every requested row.
pub fn mtilde_of_sequence(a: &Scalar, l: &QBSeq, depth: usize) -> Result<BandMatrix, FamilyError> {
    require_depth(depth)?;
    let d = check_a(a)?;
    let field = a.field();
    let covered = l.last() + l.n();
    if depth > covered {
        return Err(FamilyError::SequenceTooShort { last: l.last(), covered, depth });
    }
    let mut rows = Vec::with_capacity(depth);
    let mut k = 0u32;
    for i in 0..depth {
        if l.contains(i) {
            k += 1;
            let dk = d.pow(k);
            let dk1 = d.pow(k - 1);
            rows.push(unit_row(i + 2, field, &[(0, dk), (1, -dk1), (i + 1, a.clone())]));
        } else {
            let dk = d.pow(k);
            rows.push(unit_row(i + 2, field, &[(0, dk.clone()), (1, -dk)]));
        }
    }
    Ok(BandMatrix::from_rows(rows, field)?)
}

/// `M = M(L) + Y` for quasi-balanced `L`.
pub fn build_bnl(a: &Scalar, l: &QBSeq, depth: usize) -> Result<BandMatrix, FamilyError> {
    is_quasi_balanced(l).map_err(FamilyError::NotQuasiBalanced)?;
    force_bnl(a, l, depth)
}

/// `M = M(L) + Y` without the quasi-balance check.
pub fn force_bnl(a: &Scalar, l: &QBSeq, depth: usize) -> Result<BandMatrix, FamilyError> {
    let mt = mtilde_of_sequence(a, l, depth)?;
    let rows = mt.rows().map(<[Scalar]>::to_vec).collect();
    from_mtilde_rows(rows, a.field())
}

/// One choice of rows `2n` and `2n + 1` of `𝕄`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchCandidate {
    /// `𝕄_{2n,0}`: `d` or `d^2`.
    pub t0: Scalar,
    /// `𝕄_{2n,2n+1}`: `0` or `a`.
    pub t_last: Scalar,
    pub row_2n: Vec<Scalar>,
    pub row_2n1: Vec<Scalar>,
}

/// The forced rows `0..2n` of `𝕄` in the regime `𝕄_{n,*} = d E_0 - E_1 + a E_{n+1}` and the four
/// admissible continuations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchState {
    pub n: usize,
    pub a: Scalar,
    pub d: Scalar,
    pub rows: Vec<Vec<Scalar>>,
    pub candidates: [BranchCandidate; 4],
}

impl BranchState {
    /// `M` with rows `0..2n+2` for the chosen candidate.
    pub fn matrix(&self, idx: usize) -> Result<BandMatrix, FamilyError> {
        let c = &self.candidates[idx];
        let mut rows = self.rows.clone();
        rows.push(c.row_2n.clone());
        rows.push(c.row_2n1.clone());
        from_mtilde_rows(rows, self.a.field())
    }
}

/// Rows `0..2n` and the candidates indexed by `(t_0, t_{2n+1})` in the order
/// `(d, 0)`, `(d^2, 0)`, `(d, a)`, `(d^2, a)`.
pub fn branch_2n(n: usize, a: &Scalar) -> Result<BranchState, FamilyError> {
    if n < 2 {
        return Err(FamilyError::InvalidParams(format!("n must be at least 2, got {n}")));
    }
    let d = check_a(a)?;
    let field = a.field();
    let one = field.one();
    let d2 = &d * &d;
    let ad = a * &d;
    let mut rows = Vec::with_capacity(2 * n);
    for i in 0..2 * n {
        let entries = match i {
            _ if i < n => vec![(0, one.clone()), (1, -&one)],
            _ if i == n => vec![(0, d.clone()), (1, -&one), (n + 1, a.clone())],
            _ => vec![(0, d.clone()), (1, -&d)],
        };
        rows.push(unit_row(i + 2, field, &entries));
    }
    let r0 = 2 * n + 2;
    let r1 = 2 * n + 3;
    let cand = |t0: &Scalar, t_last: &Scalar, e0: Vec<(usize, Scalar)>, e1: Vec<(usize, Scalar)>| BranchCandidate {
        t0: t0.clone(),
        t_last: t_last.clone(),
        row_2n: unit_row(r0, field, &e0),
        row_2n1: unit_row(r1, field, &e1),
    };
    let zero = field.zero();
    let candidates = [
        cand(
            &d,
            &zero,
            vec![(0, d.clone()), (1, -&d)],
            vec![(0, d2.clone()), (1, -&d), (2 * n + 2, a.clone())],
        ),
        cand(
            &d2,
            &zero,
            vec![(0, d2.clone()), (1, -&d), (n + 1, ad.clone())],
            vec![(0, d2.clone()), (1, -&d2), (n + 2, -&ad), (2 * n + 2, a.clone())],
        ),
        cand(
            &d,
            a,
            vec![(0, d.clone()), (1, -&d), (n, -&ad), (2 * n + 1, a.clone())],
            vec![(0, d2.clone()), (1, -&d), (n + 1, ad.clone())],
        ),
        cand(
            &d2,
            a,
            vec![(0, d2.clone()), (1, -&d), (2 * n + 1, a.clone())],
            vec![(0, d2.clone()), (1, -&d2)],
        ),
    ];
    Ok(BranchState { n, a: a.clone(), d, rows, candidates })
}
