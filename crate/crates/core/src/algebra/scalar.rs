//! Exact field elements: arbitrary-precision rationals or residues modulo a prime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::AlgebraError;

/// Largest prime modulus accepted for `GF(p)` (exclusive).
pub const MAX_MODULUS: u64 = 1 << 31;

/// The coefficient field `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// `GF(p)`, checking that `p` is a prime below `2^31`.
    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        if p >= MAX_MODULUS || !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    #[must_use]
    pub fn zero(self) -> Scalar {
        self.int(0)
    }

    #[must_use]
    pub fn one(self) -> Scalar {
        self.int(1)
    }

    #[must_use]
    pub fn int(self, v: i64) -> Scalar {
        self.bigint(&BigInt::from(v))
    }

    #[must_use]
    pub fn bigint(self, v: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Mod(Fp { value: r.to_u32().unwrap_or(0), modulus: p })
            }
        }
    }

    /// `num / den` as an element of this field.
    pub fn ratio(self, num: i64, den: i64) -> Result<Scalar, AlgebraError> {
        self.int(num).checked_div(&self.int(den))
    }

    /// Image of a rational number; fails when the denominator vanishes in `K`.
    pub fn rational(self, q: &BigRational) -> Result<Scalar, AlgebraError> {
        match self {
            Field::Rational => Ok(Scalar::Rat(q.clone())),
            Field::Prime(_) => self.bigint(q.numer()).checked_div(&self.bigint(q.denom())),
        }
    }

    /// Parses a scalar literal in this field.
    ///
    /// Accepts `p`, `p/q` and, for prime fields, `k mod p` with a matching modulus.
    pub fn parse(self, s: &str) -> Result<Scalar, AlgebraError> {
        let t = s.trim();
        if let Some((v, m)) = t.split_once("mod") {
            let modulus: u64 = m
                .trim()
                .parse()
                .map_err(|_| parse_err(s, "bad modulus"))?;
            let value: BigInt = v.trim().parse().map_err(|_| parse_err(s, "bad residue"))?;
            return match self {
                Field::Prime(p) if u64::from(p) == modulus => Ok(self.bigint(&value)),
                _ => Err(parse_err(s, &format!("residue literal does not belong to {self}"))),
            };
        }
        let q = parse_rational(t).ok_or_else(|| parse_err(s, "expected p or p/q"))?;
        self.rational(&q)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "gf:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "rational" {
            return Ok(Field::Rational);
        }
        let p = t
            .strip_prefix("gf:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| AlgebraError::Parse {
                input: s.to_string(),
                reason: "expected `rational` or `gf:p`".into(),
            })?;
        Field::prime(p)
    }
}

/// A residue modulo a prime, stored in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    #[must_use]
    pub fn value(self) -> u32 {
        self.value
    }

    #[must_use]
    pub fn modulus(self) -> u32 {
        self.modulus
    }

    fn with(self, value: u64) -> Fp {
        Fp { value: (value % u64::from(self.modulus)) as u32, modulus: self.modulus }
    }

    fn pow(self, mut e: u64) -> Fp {
        let p = u64::from(self.modulus);
        let mut base = u64::from(self.value);
        let mut acc = 1 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        self.with(acc)
    }
}

/// An exact element of `K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod(Fp),
}

impl Scalar {
    #[must_use]
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod(x) => Field::Prime(x.modulus),
        }
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Mod(x) => x.value == 0,
        }
    }

    #[must_use]
    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_one(),
            Scalar::Mod(x) => x.value == 1,
        }
    }

    /// The underlying rational, if `K = Q`.
    #[must_use]
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(q) => Some(q),
            Scalar::Mod(_) => None,
        }
    }

    pub fn inv(&self) -> Result<Scalar, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(q) => Scalar::Rat(q.recip()),
            Scalar::Mod(x) => Scalar::Mod(x.pow(u64::from(x.modulus) - 2)),
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, AlgebraError> {
        Ok(self * &rhs.inv()?)
    }

    #[must_use]
    pub fn pow(&self, e: u32) -> Scalar {
        match self {
            Scalar::Rat(q) => Scalar::Rat(num::pow(q.clone(), e as usize)),
            Scalar::Mod(x) => Scalar::Mod(x.pow(u64::from(e))),
        }
    }

    fn expect_same(&self, rhs: &Scalar) -> u64 {
        match (self, rhs) {
            (Scalar::Mod(a), Scalar::Mod(b)) if a.modulus == b.modulus => u64::from(a.modulus),
            (Scalar::Rat(_), Scalar::Rat(_)) => 0,
            _ => panic!("arithmetic between {} and {}", self.field(), rhs.field()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rat(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Mod(x) => write!(f, "{} mod {}", x.value, x.modulus),
        }
    }
}

impl FromStr for Scalar {
    type Err = AlgebraError;

    /// Context-free parse: `k mod p` is a residue, anything else a rational.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once("mod") {
            Some((_, m)) => {
                let p: u64 = m.trim().parse().map_err(|_| parse_err(s, "bad modulus"))?;
                Field::prime(p)?.parse(s)
            }
            None => Field::Rational.parse(s),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        let p = self.expect_same(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod(a), Scalar::Mod(b)) => Scalar::Mod(a.with((u64::from(a.value) + u64::from(b.value)) % p)),
            _ => unreachable!(),
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        let p = self.expect_same(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod(a), Scalar::Mod(b)) => Scalar::Mod(a.with(u64::from(a.value) + p - u64::from(b.value))),
            _ => unreachable!(),
        }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        self.expect_same(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod(a), Scalar::Mod(b)) => Scalar::Mod(a.with(u64::from(a.value) * u64::from(b.value))),
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod(a) => Scalar::Mod(a.with(u64::from(a.modulus) - u64::from(a.value))),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

fn parse_err(input: &str, reason: &str) -> AlgebraError {
    AlgebraError::Parse { input: input.to_string(), reason: reason.to_string() }
}

fn parse_rational(t: &str) -> Option<BigRational> {
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}
