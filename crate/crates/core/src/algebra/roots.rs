//! Exact detection of indices where `Q_n(b, c)` or `R_k(a, d)` vanishes.
//!
//! Over the rationals every case reachable from the closed forms is decided for all indices;
//! only irrational eigenvalues of the `Q` recursion fall back to a bounded search. Over `GF(p)`
//! only the field-independent cases are decided exactly.

use std::fmt;

use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::polys::{pq_values, AndaSequences};
use super::{AlgebraError, Scalar};

/// Default search bound.
pub const DEFAULT_BOUND: usize = 64;

/// Beyond this index a root found from a closed form is confirmed on the closed form itself
/// instead of by running the recursion.
const RECURSION_VERIFY_LIMIT: usize = 1024;

/// Which argument settled the root question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootCase {
    /// `c = 0`: every `c_n` vanishes.
    #[serde(rename = "c=0")]
    CZero,
    /// `b + c = 0`: `c_n = c` for all `n`.
    #[serde(rename = "b+c=0")]
    BPlusCZero,
    /// `b = -1`: `c_n` alternates between `c` and `0`.
    #[serde(rename = "b=-1")]
    BMinusOne,
    /// `c = (b-1)^2/4`: `Q_{n+1} = (n + 1 - nλ) λ^n` with `λ = (b+1)/2`.
    EqualEigenvalues,
    /// Distinct rational eigenvalues: `Q_n = 0` iff `(λ1/λ2)^n = (1-λ1)/(1-λ2)`.
    RationalEigenvalues,
    /// `d = 0`: `R_k = 1`.
    #[serde(rename = "d=0")]
    DZero,
    /// `a = 0`: `R_k = e^{k-1}`.
    #[serde(rename = "a=0")]
    AZero,
    /// `d = 1`: `R_k = (-a)^{k-1}`.
    #[serde(rename = "d=1")]
    EZero,
    /// `a = -1`: `R_k = 1`.
    #[serde(rename = "a=-1")]
    AMinusOne,
    /// `-a = 1 - d`: `R_k = e^{k-1}(e + kd)`.
    #[serde(rename = "-a=e")]
    MinusAEqualsE,
    /// `R_k = 0` iff `(1+a)/d = (-a/e)^k`, decided by magnitude or sign.
    PowerEquation,
    /// No closed form applies; the recursion was run up to the bound.
    BoundedSearch,
}

impl fmt::Display for RootCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).ok();
        match s.as_ref().and_then(|v| v.as_str()) {
            Some(s) => f.write_str(s),
            None => write!(f, "{self:?}"),
        }
    }
}

/// Whether a negative answer covers all indices or only those up to the bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "scope", content = "bound")]
pub enum Scope {
    Exhaustive,
    Bounded(usize),
}

/// Outcome of a root search: the least vanishing index, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootReport {
    pub index: Option<usize>,
    pub case: RootCase,
    #[serde(flatten)]
    pub scope: Scope,
}

impl RootReport {
    fn exact(index: Option<usize>, case: RootCase) -> Self {
        RootReport { index, case, scope: Scope::Exhaustive }
    }
}

/// Least `n` with `Q_n(b, c) = 0`.
///
/// Closed-form cases answer for every `n`, even past `bound`; otherwise the recursion is run
/// for `n ≤ bound`.
pub fn find_q_root(b: &Scalar, c: &Scalar, bound: usize) -> Result<RootReport, AlgebraError> {
    let field = b.field();
    if (b + field.one()).is_zero() && c.is_one() {
        return Err(AlgebraError::ParticularBranch);
    }
    if c.is_zero() {
        return Ok(RootReport::exact(None, RootCase::CZero));
    }
    if (b + c).is_zero() {
        return Ok(RootReport::exact(None, RootCase::BPlusCZero));
    }
    if (b + field.one()).is_zero() {
        return Ok(RootReport::exact(None, RootCase::BMinusOne));
    }
    if let (Some(b), Some(c)) = (b.as_rational(), c.as_rational()) {
        if let Some(report) = q_root_rational(b, c) {
            let report = report?;
            if let Some(n) = report.index {
                if n <= RECURSION_VERIFY_LIMIT {
                    confirm_q(&Scalar::Rat(b.clone()), &Scalar::Rat(c.clone()), n)?;
                }
            }
            return Ok(report);
        }
    }
    let values = pq_values(b, c, bound);
    let index = (1..=bound).find(|&n| values[n].1.is_zero());
    Ok(RootReport { index, case: RootCase::BoundedSearch, scope: Scope::Bounded(bound) })
}

/// Least `k` with `R_k(a, d) = 0`.
///
/// Over the rationals this is decided for every `k`; over `GF(p)` only the degenerate cases
/// are, and the rest is a search up to `bound`.
pub fn find_r_root(a: &Scalar, d: &Scalar, bound: usize) -> Result<RootReport, AlgebraError> {
    let field = a.field();
    if a.is_zero() && d.is_one() {
        return Err(AlgebraError::DegeneratePoint);
    }
    let e = field.one() - d;
    if d.is_zero() {
        return Ok(RootReport::exact(None, RootCase::DZero));
    }
    if a.is_zero() {
        return Ok(RootReport::exact(None, RootCase::AZero));
    }
    if e.is_zero() {
        return Ok(RootReport::exact(None, RootCase::EZero));
    }
    if (a + field.one()).is_zero() {
        return Ok(RootReport::exact(None, RootCase::AMinusOne));
    }
    if let (Some(a), Some(d)) = (a.as_rational(), d.as_rational()) {
        let report = r_root_rational(a, d);
        if let Some(k) = report.index {
            if k <= RECURSION_VERIFY_LIMIT {
                let seq = AndaSequences::new(&Scalar::Rat(a.clone()), &Scalar::Rat(d.clone()), k);
                if !seq.r(k).is_zero() {
                    return Err(AlgebraError::UnconfirmedRoot { index: k });
                }
            }
        }
        return Ok(report);
    }
    let seq = AndaSequences::new(a, d, bound);
    let index = (1..=bound).find(|&k| seq.r(k).is_zero());
    Ok(RootReport { index, case: RootCase::BoundedSearch, scope: Scope::Bounded(bound) })
}

fn confirm_q(b: &Scalar, c: &Scalar, n: usize) -> Result<(), AlgebraError> {
    if pq_values(b, c, n)[n].1.is_zero() {
        Ok(())
    } else {
        Err(AlgebraError::UnconfirmedRoot { index: n })
    }
}

/// Rational closed forms for `Q`; `None` when the eigenvalues are irrational.
fn q_root_rational(b: &BigRational, c: &BigRational) -> Option<Result<RootReport, AlgebraError>> {
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let disc = (b - &one) * (b - &one) - BigRational::from_integer(4.into()) * c;
    if disc.is_zero() {
        // Q_{n+1} = 0 iff b = 1 + 2/n.
        if b == &one {
            return Some(Ok(RootReport::exact(None, RootCase::EqualEigenvalues)));
        }
        let m = &two / (b - &one);
        let index = (m.is_integer() && m.is_positive())
            .then(|| m.to_integer().try_into().ok())
            .flatten()
            .map(|m: usize| m + 1);
        if m.is_integer() && m.is_positive() && index.is_none() {
            return Some(Err(AlgebraError::IndexOverflow));
        }
        return Some(Ok(RootReport::exact(index, RootCase::EqualEigenvalues)));
    }
    let s = rational_sqrt(&disc)?;
    let l1 = (b + &one + &s) / &two;
    let l2 = (b + &one - &s) / &two;
    let rho = &l1 / &l2;
    let target = (&one - &l1) / (&one - &l2);
    let index = solve_power(&rho, &target);
    Some(Ok(RootReport::exact(index, RootCase::RationalEigenvalues)))
}

fn r_root_rational(a: &BigRational, d: &BigRational) -> RootReport {
    let one = BigRational::one();
    let e = &one - d;
    if -a == e {
        // e + kd = 0, i.e. k = 1 - 1/d.
        let k = &one - d.recip();
        let index = (k.is_integer() && k > one).then(|| k.to_integer().try_into().ok()).flatten();
        return RootReport::exact(index, RootCase::MinusAEqualsE);
    }
    let rho = -a / &e;
    let target = (&one + a) / d;
    RootReport::exact(solve_power(&rho, &target), RootCase::PowerEquation)
}

/// Least `k ≥ 1` with `rho^k = target`, for `rho ∉ {0, 1}`.
fn solve_power(rho: &BigRational, target: &BigRational) -> Option<usize> {
    let one = BigRational::one();
    let r = rho.abs();
    let t = target.abs();
    if r == one {
        // rho = -1.
        return if t != one {
            None
        } else if target.is_negative() {
            Some(1)
        } else {
            Some(2)
        };
    }
    if t.is_zero() {
        return None;
    }
    let growing = r > one;
    let mut pow = r.clone();
    let mut k = 1usize;
    loop {
        if pow == t {
            break;
        }
        if (growing && pow > t) || (!growing && pow < t) {
            return None;
        }
        pow = &pow * &r;
        k += 1;
    }
    (&num::pow(rho.clone(), k) == target).then_some(k)
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}
