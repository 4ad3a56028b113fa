//! Exact scalars, bivariate integer polynomials and the obstruction recursions.

mod bipoly;
mod polys;
mod roots;
mod scalar;

use thiserror::Error;

pub use bipoly::{BiPoly, Monomial, Term};
pub use polys::{pq_polys, pq_values, r_poly, AndaSequences};
pub use roots::{find_q_root, find_r_root, RootCase, RootReport, Scope, DEFAULT_BOUND};
pub use scalar::{Field, Fp, Scalar, MAX_MODULUS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("(b, c) = (-1, 1) is governed by the x - y families, not by Q_n")]
    ParticularBranch,
    #[error("(a, d) = (0, 1) is excluded")]
    DegeneratePoint,
    #[error("closed form predicted a root at index {index} that exact evaluation rejects")]
    UnconfirmedRoot { index: usize },
    #[error("root index does not fit in usize")]
    IndexOverflow,
}
