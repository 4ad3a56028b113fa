//! Sparse bivariate polynomials with integer coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Scalar;

/// Exponent pair `x^i y^j`, ordered so that iteration visits the leading term first:
/// higher total degree, then higher power of the first variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub u32, pub u32);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (other.0 + other.1, other.0).cmp(&(self.0 + self.1, self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in two variables whose names depend on context.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

/// One serialized term: exponents of the first and second variable and the coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub x: u32,
    pub y: u32,
    pub coeff: String,
}

impl BiPoly {
    #[must_use]
    pub fn zero() -> Self {
        Self::default()
    }

    #[must_use]
    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c · x^i · y^j`.
    #[must_use]
    pub fn monomial(c: i64, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial(i, j), BigInt::from(c));
        p
    }

    #[must_use]
    pub fn x() -> Self {
        Self::monomial(1, 1, 0)
    }

    #[must_use]
    pub fn y() -> Self {
        Self::monomial(1, 0, 1)
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `x^i y^j`.
    #[must_use]
    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&Monomial(i, j)).cloned().unwrap_or_default()
    }

    /// Terms with nonzero coefficient, leading term first.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &BigInt)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    #[must_use]
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.0 + m.1)
    }

    #[must_use]
    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(1), |acc, _| &acc * self)
    }

    /// Evaluates at `(x, y)`.
    #[must_use]
    pub fn eval(&self, x: &Scalar, y: &Scalar) -> Scalar {
        let field = x.field();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            acc = acc + field.bigint(c) * x.pow(m.0) * y.pow(m.1);
        }
        acc
    }

    /// Canonical term list, leading term first.
    #[must_use]
    pub fn to_terms(&self) -> Vec<Term> {
        self.terms
            .iter()
            .map(|(m, c)| Term { x: m.0, y: m.1, coeff: c.to_string() })
            .collect()
    }

    pub fn from_terms(terms: &[Term]) -> Result<Self, super::AlgebraError> {
        let mut p = Self::zero();
        for t in terms {
            let c: BigInt = t.coeff.parse().map_err(|_| super::AlgebraError::Parse {
                input: t.coeff.clone(),
                reason: "integer coefficient expected".into(),
            })?;
            p.add_term(Monomial(t.x, t.y), c);
        }
        Ok(p)
    }

    /// Human-readable form with the given variable names.
    #[must_use]
    pub fn format(&self, names: [&str; 2]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for (e, name) in [(m.0, names[0]), (m.1, names[1])] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() || !mag.is_one() {
                factors.insert(0, mag.to_string());
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(["x", "y"]))
    }
}

impl Serialize for BiPoly {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_terms().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<Term>::deserialize(deserializer)?;
        BiPoly::from_terms(&terms).map_err(serde::de::Error::custom)
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;

    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;

    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;

    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(Monomial(m.0 + n.0, m.1 + n.1), c * d);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;

    fn neg(self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}
