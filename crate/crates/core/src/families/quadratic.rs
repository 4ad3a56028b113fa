//! `yx = bxy + cy^2` and `yx = x^2 + bxy + cy^2`.

use crate::algebra::{pq_values, Scalar};
use crate::bandmatrix::BandMatrix;

use super::{require_depth, FamilyError, ObstructionPoly};

/// Ore matrix: `M_{n,n} = b^n`, `M_{n,n+1} = c_n` with `c_0 = 0`, `c_{n+1} = b c_n + c`.
pub fn build_ore(b: &Scalar, c: &Scalar, depth: usize) -> Result<BandMatrix, FamilyError> {
    require_depth(depth)?;
    let field = b.field();
    let mut rows = Vec::with_capacity(depth);
    let (mut diag, mut sup) = (field.one(), field.zero());
    for n in 0..depth {
        let mut row = vec![field.zero(); n + 2];
        row[n] = diag.clone();
        row[n + 1] = sup.clone();
        rows.push(row);
        diag = &diag * b;
        sup = b * &sup + c;
    }
    Ok(BandMatrix::from_rows(rows, field)?)
}

/// Generic quadratic matrix with row 1 equal to `(1, b, c)`.
///
/// Row `k` solves `(1 - M_{k-1,k}) M_{k,*} = ov M_{k,*}` where
/// `ov M_{k,0} = Σ_{i<k} M_{k-1,i} M_{i,0}`,
/// `ov M_{k,s} = b M_{k-1,s-1} + Σ_{s-1 ≤ i < k} M_{k-1,i} M_{i,s}` for `1 ≤ s ≤ k`, and
/// `ov M_{k,k+1} = c + b M_{k-1,k}`.
pub fn build_generic(b: &Scalar, c: &Scalar, depth: usize) -> Result<BandMatrix, FamilyError> {
    require_depth(depth)?;
    let field = b.field();
    if c.is_one() {
        return Err(if (b + field.one()).is_zero() { FamilyError::Rerouted } else { FamilyError::Rejected { b: b.clone() } });
    }
    let mut rows: Vec<Vec<Scalar>> = vec![vec![field.one(), field.zero()]];
    if depth > 1 {
        rows.push(vec![field.one(), b.clone(), c.clone()]);
    }
    let at = |rows: &Vec<Vec<Scalar>>, i: usize, j: usize| rows[i].get(j).cloned().unwrap_or_else(|| field.zero());
    for k in 2..depth {
        let prev = &rows[k - 1];
        let denom = field.one() - &prev[k];
        if denom.is_zero() {
            let q = &pq_values(b, c, k)[k].1;
            debug_assert!(q.is_zero());
            return Err(FamilyError::Obstruction { poly: ObstructionPoly::Q, index: k, x: Box::new(b.clone()), y: Box::new(c.clone()) });
        }
        let mut ov = Vec::with_capacity(k + 2);
        ov.push((0..k).fold(field.zero(), |acc, i| acc + &prev[i] * at(&rows, i, 0)));
        for s in 1..=k {
            let sum = (s - 1..k).fold(field.zero(), |acc, i| acc + &prev[i] * at(&rows, i, s));
            ov.push(b * &prev[s - 1] + sum);
        }
        ov.push(c + &(b * &prev[k]));
        let inv = denom.inv()?;
        rows.push(ov.iter().map(|v| v * &inv).collect());
    }
    Ok(BandMatrix::from_rows(rows, field)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::bandmatrix::ShiftOp;

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Field::Rational.int(x)).collect()
    }

    #[test]
    fn ore_superdiagonal_closed_form() {
        let m = build_ore(&q("1"), &q("1"), 6).unwrap();
        assert_eq!(m.entry(3, 4).unwrap(), q("3"));
        let m = build_ore(&q("2"), &q("1"), 6).unwrap();
        assert_eq!(m.entry(3, 4).unwrap(), q("7"));
        for (b, c) in [("3", "2"), ("-1/2", "5"), ("1", "-3")] {
            let (b, c) = (q(b), q(c));
            let m = build_ore(&b, &c, 12).unwrap();
            for n in 0..12u32 {
                let closed = if b.is_one() {
                    Field::Rational.int(i64::from(n)) * &c
                } else {
                    (&c * &(b.pow(n) - q("1"))).checked_div(&(&b - &q("1"))).unwrap()
                };
                assert_eq!(m.entry(n as usize, n as usize + 1).unwrap(), closed);
                assert_eq!(m.entry(n as usize, n as usize).unwrap(), b.pow(n));
            }
        }
    }

    #[test]
    fn quantum_plane_is_diagonal() {
        let m = build_ore(&q("5"), &q("0"), 6).unwrap();
        for i in 0..6 {
            for j in 0..i + 2 {
                let expected = if i == j { q("5").pow(i as u32) } else { q("0") };
                assert_eq!(m.entry(i, j).unwrap(), expected);
            }
        }
    }

    #[test]
    fn ore_satisfies_its_relation() {
        // YM = bMY + cY^2
        let (b, c) = (q("2"), q("-3"));
        let m = build_ore(&b, &c, 15).unwrap();
        let lhs = m.shift(ShiftOp::Left(1)).unwrap();
        let rhs = m
            .shift(ShiftOp::Right(1))
            .unwrap()
            .scale(&b)
            .add(&BandMatrix::shift_power(Field::Rational, 15, 2).scale(&c))
            .unwrap();
        assert_eq!(lhs.eq_on_window(&rhs, lhs.valid_rows(), None).unwrap(), None);
    }

    #[test]
    fn generic_rows() {
        let m = build_generic(&q("2"), &q("-2"), 6).unwrap();
        assert_eq!(m.row(0).unwrap(), &ints(&[1, 0])[..]);
        assert_eq!(m.row(1).unwrap(), &ints(&[1, 2, -2])[..]);
        assert_eq!(m.row(2).unwrap(), &ints(&[1, 2, 0, -2])[..]);
    }

    #[test]
    fn generic_superdiagonal_is_c_p_over_q() {
        for (b, c) in [("2", "-2"), ("1/3", "2"), ("-5", "7/2")] {
            let (b, c) = (q(b), q(c));
            let m = build_generic(&b, &c, 16).unwrap();
            let pq = pq_values(&b, &c, 16);
            for (n, (p, qn)) in pq.iter().enumerate().take(16).skip(1) {
                let expected = (&c * p).checked_div(qn).unwrap();
                assert_eq!(m.entry(n, n + 1).unwrap(), expected, "n={n}");
            }
        }
    }

    #[test]
    fn generic_errors() {
        assert_eq!(
            build_generic(&q("5/3"), &q("1/9"), 24),
            Err(FamilyError::Obstruction { poly: ObstructionPoly::Q, index: 4, x: Box::new(q("5/3")), y: Box::new(q("1/9")) })
        );
        assert_eq!(build_generic(&q("0"), &q("1"), 24), Err(FamilyError::Rejected { b: q("0") }));
        assert_eq!(build_generic(&q("-1"), &q("1"), 24), Err(FamilyError::Rerouted));
        // The prefix before the obstruction row exists.
        assert_eq!(build_generic(&q("5/3"), &q("1/9"), 4).unwrap().valid_rows(), 4);
    }
}
