//! The obstruction polynomials `P_n, Q_n` in `(b, c)` and `R_k` in `(a, d)`, symbolically and
//! as scalar sequences.

use super::{BiPoly, Scalar};

/// `(P_n, Q_n)` in the variables `(b, c)`.
///
/// Starts from `P_1 = Q_1 = 1` and applies `P_{n+1} = b P_n + Q_n`, `Q_{n+1} = Q_n - c P_n`.
/// `n = 0` gives the backward extension `(0, 1)`.
#[must_use]
pub fn pq_polys(n: usize) -> (BiPoly, BiPoly) {
    if n == 0 {
        return (BiPoly::zero(), BiPoly::constant(1));
    }
    let b = BiPoly::x();
    let c = BiPoly::y();
    let mut p = BiPoly::constant(1);
    let mut q = BiPoly::constant(1);
    for _ in 1..n {
        let next_p = &(&b * &p) + &q;
        let next_q = &q - &(&c * &p);
        p = next_p;
        q = next_q;
    }
    (p, q)
}

/// `R_k(a, d) = (1-d)^k + d Σ_{j<k} (1-d)^j (-a)^{k-1-j}` in the variables `(a, d)`.
#[must_use]
pub fn r_poly(k: usize) -> BiPoly {
    let e = &BiPoly::constant(1) - &BiPoly::y();
    let minus_a = -&BiPoly::x();
    let k32 = k as u32;
    let mut sum = BiPoly::zero();
    for j in 0..k32 {
        sum = &sum + &(&e.pow(j) * &minus_a.pow(k32 - 1 - j));
    }
    &e.pow(k32) + &(&BiPoly::y() * &sum)
}

/// Values `(P_n(b, c), Q_n(b, c))` for `n = 0..=n_max`.
#[must_use]
pub fn pq_values(b: &Scalar, c: &Scalar, n_max: usize) -> Vec<(Scalar, Scalar)> {
    let field = b.field();
    let mut out = Vec::with_capacity(n_max + 1);
    out.push((field.zero(), field.one()));
    let (mut p, mut q) = (field.one(), field.one());
    for _ in 1..=n_max {
        out.push((p.clone(), q.clone()));
        let next_p = b * &p + &q;
        q = &q - &(c * &p);
        p = next_p;
    }
    out
}

/// The sequences `e_k = e^k`, `a_k = (-a)^k` and `d_k = d Σ_{j<k} e_j a_{k-1-j}`
/// with `e = 1 - d`, for `k = 0..=k_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AndaSequences {
    pub e: Vec<Scalar>,
    pub a: Vec<Scalar>,
    pub d: Vec<Scalar>,
}

impl AndaSequences {
    /// Fills the sequences using `d_{k+1} = e d_k + d a_k`.
    #[must_use]
    pub fn new(a: &Scalar, d: &Scalar, k_max: usize) -> Self {
        let field = a.field();
        let e = field.one() - d;
        let minus_a = -a;
        let mut es = vec![field.one()];
        let mut as_ = vec![field.one()];
        let mut ds = vec![field.zero()];
        for k in 0..k_max {
            ds.push(&e * &ds[k] + d * &as_[k]);
            es.push(&es[k] * &e);
            as_.push(&as_[k] * &minus_a);
        }
        AndaSequences { e: es, a: as_, d: ds }
    }

    /// `R_k = e_k + d_k`.
    #[must_use]
    pub fn r(&self, k: usize) -> Scalar {
        &self.e[k] + &self.d[k]
    }
}
