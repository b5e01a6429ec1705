use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{CoeffText, Field, Ring};

/// Arbitrary-precision rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
        Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_int(n: i64) -> Rational {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(n: BigInt) -> Rational {
        Rational(BigRational::from_integer(n))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Option<Rational> {
        (!self.0.is_zero()).then(|| Rational(self.0.recip()))
    }

    pub fn add(&self, rhs: &Rational) -> Rational {
        if self.is_integer() && rhs.is_integer() {
            return Rational::from_bigint(self.numer() + rhs.numer());
        }
        Rational(&self.0 + &rhs.0)
    }

    pub fn sub(&self, rhs: &Rational) -> Rational {
        if self.is_integer() && rhs.is_integer() {
            return Rational::from_bigint(self.numer() - rhs.numer());
        }
        Rational(&self.0 - &rhs.0)
    }

    pub fn mul(&self, rhs: &Rational) -> Rational {
        if self.is_integer() && rhs.is_integer() {
            return Rational::from_bigint(self.numer() * rhs.numer());
        }
        Rational(&self.0 * &rhs.0)
    }

    pub fn neg(&self) -> Rational {
        Rational(-&self.0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

/// The generalized binomial coefficient binom(m + 1/2, k).
pub fn half_binomial(m: u32, k: u32) -> Rational {
    let top = Rational::new(2 * i64::from(m) + 1, 2);
    let mut acc = Rational::from_int(1);
    for j in 0..k {
        acc = acc.mul(&top.sub(&Rational::from_int(j.into())));
        acc = acc.mul(&Rational::new(1, i64::from(j) + 1));
    }
    acc
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn add_assign(&mut self, rhs: &Self) {
        if self.is_integer() && rhs.is_integer() {
            self.0 = BigRational::from_integer(self.numer() + rhs.numer());
        } else {
            self.0 += &rhs.0;
        }
    }
    fn term_text(&self) -> CoeffText {
        let abs = self.abs();
        CoeffText {
            negative: self.is_negative(),
            unit: abs.is_one(),
            body: abs.to_string(),
        }
    }
    fn latex(&self) -> String {
        if self.0.is_integer() {
            self.0.numer().to_string()
        } else if self.is_negative() {
            format!("-\\frac{{{}}}{{{}}}", -self.0.numer(), self.0.denom())
        } else {
            format!("\\frac{{{}}}{{{}}}", self.0.numer(), self.0.denom())
        }
    }
    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
    fn from_json(v: &serde_json::Value) -> Option<Self> {
        v.as_str()?.parse().ok()
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        self.recip()
    }
}
