//! Exact scalar backends.
//!
//! Every polynomial in the crate is generic over a [`Ring`]. The concrete
//! backends are [`Rational`] (the ground field Q), [`RatFunc`] (normalized
//! univariate rational functions over Q in a named indeterminate) and
//! [`TowerScalar`] (the two-step quotient ring over Q(λ) housing the
//! conjugation constants a, b, c).

mod ratfunc;
mod rational;
mod tower;
mod unipoly;

use std::fmt;

pub use ratfunc::{Indeterminate, QLambda, QT, QZ, RatFunc, VarLambda, VarT, VarZ};
pub use rational::{half_binomial, Rational};
pub use tower::{TowerGen, TowerScalar, TowerSpec};
pub use unipoly::UniPoly;

/// How a coefficient renders in front of a monomial.
///
/// `body` is a string that can be followed by `*monomial` and parses back to
/// the magnitude of the coefficient; `unit` is set when the magnitude is one
/// and may be omitted in front of a non-constant monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffText {
    pub negative: bool,
    pub body: String,
    pub unit: bool,
}

/// A commutative ring with identity that contains Q.
pub trait Ring: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_int(n))
    }

    fn add_assign(&mut self, rhs: &Self) {
        *self = Ring::add(self, rhs);
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplication by a rational number.
    fn scale(&self, q: &Rational) -> Self {
        self.mul(&Self::from_rational(q))
    }

    fn term_text(&self) -> CoeffText;
    fn latex(&self) -> String;
    fn to_json(&self) -> serde_json::Value;
    fn from_json(v: &serde_json::Value) -> Option<Self>;
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

/// Wraps a multi-term rendering in parentheses so it is safe in a product.
pub(crate) fn paren_text(s: String) -> CoeffText {
    CoeffText {
        negative: false,
        body: format!("({s})"),
        unit: false,
    }
}
