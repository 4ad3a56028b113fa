//! The maps `γ^r_j`, tabulated through `γ^r_j(x^i) = (M^i)_{rj} x^{r+i-j}`.

use crate::algebra::{Field, Scalar};
use crate::bandmatrix::BandMatrix;

use super::{Failure, Status, VerifyError, VerifyReport};

/// Coefficients `(M^i)_{rj}` for `r ≤ max_r + max_i` when `i ≤ max_i`, and for `r ≤ max_r` when
/// `max_i < i ≤ max(2 max_i, max_r + max_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaTable {
    field: Field,
    max_r: usize,
    max_i: usize,
    /// `rows[i][r]` is row `r` of `M^i`.
    rows: Vec<Vec<Vec<Scalar>>>,
}

impl GammaTable {
    #[must_use]
    pub fn max_r(&self) -> usize {
        self.max_r
    }

    #[must_use]
    pub fn max_i(&self) -> usize {
        self.max_i
    }

    /// The coefficient of `γ^r_j(x^i)`.
    pub fn gamma(&self, r: usize, j: usize, i: usize) -> Result<Scalar, VerifyError> {
        let row = self.rows.get(i).and_then(|p| p.get(r)).ok_or(VerifyError::OutOfTable { r, i })?;
        Ok(row.get(j).cloned().unwrap_or_else(|| self.field.zero()))
    }

    /// Overwrites one coefficient.
    pub fn set(&mut self, r: usize, j: usize, i: usize, value: Scalar) -> Result<(), VerifyError> {
        let row = self.rows.get_mut(i).and_then(|p| p.get_mut(r)).ok_or(VerifyError::OutOfTable { r, i })?;
        if j >= row.len() {
            row.resize(j + 1, self.field.zero());
        }
        row[j] = value;
        Ok(())
    }
}

/// Tabulates powers of `M` as needed by [`check_gamma_axioms`] on `r, i ≤ max_r, max_i`.
pub fn gamma_table(m: &BandMatrix, max_r: usize, max_i: usize) -> Result<GammaTable, VerifyError> {
    let p_max = (2 * max_i).max(max_r + max_i);
    let needed = p_max + max_r;
    if m.valid_rows() < needed {
        return Err(VerifyError::WindowExhausted { check: "gamma", needed, available: m.valid_rows() });
    }
    let powers = m.narrowed(1)?.powers(p_max)?;
    let rows = powers
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let top = if i <= max_i { max_r + max_i } else { max_r };
            (0..=top).map(|r| p.row(r).map(<[Scalar]>::to_vec)).collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GammaTable { field: m.field(), max_r, max_i, rows })
}

/// Checks
/// (1) `γ^0_j = δ_{j0}`, (2) `γ^r_j(1) = δ_{jr}`,
/// (3) `γ^r_j(x^i x^l) = Σ_k γ^r_k(x^i) γ^k_j(x^l)`, and
/// (4) `γ^r_j = Σ_{l ≤ j} γ^i_l ∘ γ^{r-i}_{j-l}` for `i < r`,
/// for `r ≤ max_r` and exponents up to `max_i`.
pub fn check_gamma_axioms(t: &GammaTable) -> Result<VerifyReport, VerifyError> {
    let f = t.field;
    let (max_r, max_i) = (t.max_r, t.max_i);
    let delta = |a: usize, b: usize| if a == b { f.one() } else { f.zero() };
    let fail = |k, i, j, lhs, rhs, detail: String| Some(Failure { k, i, j, lhs, rhs, detail: Some(detail) });

    let mut c1 = None;
    'outer1: for i in 0..=max_i {
        for j in 0..=i + 1 {
            let g = t.gamma(0, j, i)?;
            if g != delta(j, 0) {
                c1 = fail(0, i, j, g, delta(j, 0), "gamma^0".into());
                break 'outer1;
            }
        }
    }

    let mut c2 = None;
    'outer2: for r in 0..=max_r {
        for j in 0..=r + 1 {
            let g = t.gamma(r, j, 0)?;
            if g != delta(j, r) {
                c2 = fail(r, 0, j, g, delta(j, r), "gamma^r(1)".into());
                break 'outer2;
            }
        }
    }

    let mut c3 = None;
    'outer3: for r in 0..=max_r {
        for i in 0..=max_i {
            for l in 0..=max_i {
                for j in 0..=r + i + l {
                    let lhs = t.gamma(r, j, i + l)?;
                    let mut rhs = f.zero();
                    for k in 0..=r + i {
                        let a = t.gamma(r, k, i)?;
                        if !a.is_zero() {
                            rhs = rhs + a * t.gamma(k, j, l)?;
                        }
                    }
                    if lhs != rhs {
                        c3 = fail(r, i, j, lhs, rhs, format!("l={l}"));
                        break 'outer3;
                    }
                }
            }
        }
    }

    let mut c4 = None;
    'outer4: for r in 1..=max_r {
        for i in 0..r {
            for m in 0..=max_i {
                for j in 0..=r + m {
                    let lhs = t.gamma(r, j, m)?;
                    let mut rhs = f.zero();
                    for l in 0..=j {
                        if j - l > r - i + m {
                            continue;
                        }
                        let inner = t.gamma(r - i, j - l, m)?;
                        if !inner.is_zero() {
                            rhs = rhs + inner * t.gamma(i, l, r - i + m - (j - l))?;
                        }
                    }
                    if lhs != rhs {
                        c4 = fail(r, i, j, lhs, rhs, format!("m={m}"));
                        break 'outer4;
                    }
                }
            }
        }
    }

    let leaf = |name: &str, depth: usize, f: Option<Failure>| {
        VerifyReport::leaf(name, if f.is_some() { 0 } else { depth }, f.map_or(Status::Pass, Status::Fail))
    };
    Ok(VerifyReport::combine(
        "gamma",
        vec![leaf("(1)", max_i, c1), leaf("(2)", max_r, c2), leaf("(3)", max_r, c3), leaf("(4)", max_r, c4)],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_generic, build_ore};

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn quantum_plane_coefficients() {
        let t = gamma_table(&build_ore(&q("3"), &q("0"), 18).unwrap(), 6, 6).unwrap();
        for r in 0..=6 {
            for i in 0..=6 {
                assert_eq!(t.gamma(r, r, i).unwrap(), q("3").pow((r * i) as u32));
            }
        }
        assert!(check_gamma_axioms(&t).unwrap().passed());
    }

    #[test]
    fn perturbed_table_fails_three() {
        let m = build_generic(&q("2"), &q("-2"), 18).unwrap();
        let mut t = gamma_table(&m, 6, 6).unwrap();
        assert!(check_gamma_axioms(&t).unwrap().passed());
        let v = t.gamma(3, 2, 2).unwrap();
        t.set(3, 2, 2, v + q("1")).unwrap();
        let r = check_gamma_axioms(&t).unwrap();
        assert!(r.conditions[2].failure().is_some());
    }

    #[test]
    fn needs_window() {
        let m = build_ore(&q("2"), &q("1"), 17).unwrap();
        assert!(matches!(gamma_table(&m, 6, 6), Err(VerifyError::WindowExhausted { needed: 18, .. })));
    }
}
