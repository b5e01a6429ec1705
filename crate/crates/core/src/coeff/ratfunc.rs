use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;

use serde_json::{json, Value};

use super::{paren_text, CoeffText, Field, Rational, Ring, UniPoly};
use crate::error::AlgebraError;

/// A named transcendental indeterminate adjoined to Q.
pub trait Indeterminate: Copy + Send + Sync + fmt::Debug + 'static {
    const NAME: &'static str;
    const LATEX: &'static str;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarT;
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarLambda;
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarZ;

impl Indeterminate for VarT {
    const NAME: &'static str = "t";
    const LATEX: &'static str = "t";
}
impl Indeterminate for VarLambda {
    const NAME: &'static str = "lambda";
    const LATEX: &'static str = "\\lambda";
}
impl Indeterminate for VarZ {
    const NAME: &'static str = "z";
    const LATEX: &'static str = "z";
}

/// Q(t), the coefficient field of the degenerating families.
pub type QT = RatFunc<VarT>;
/// Q(λ), the base field of the conjugation tower.
pub type QLambda = RatFunc<VarLambda>;
/// Q(z), the field over which plane maps fixing z are factored.
pub type QZ = RatFunc<VarZ>;

/// A rational function `num / den` in the indeterminate `V`.
///
/// The representation is unique: `den` is monic and coprime to `num`, and
/// zero is `0 / 1`.
pub struct RatFunc<V> {
    num: UniPoly,
    den: UniPoly,
    _var: PhantomData<V>,
}

impl<V> Clone for RatFunc<V> {
    fn clone(&self) -> Self {
        RatFunc {
            num: self.num.clone(),
            den: self.den.clone(),
            _var: PhantomData,
        }
    }
}

impl<V> PartialEq for RatFunc<V> {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl<V> Eq for RatFunc<V> {}

impl<V> Hash for RatFunc<V> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl<V: Indeterminate> RatFunc<V> {
    /// Normalizes `num / den`.
    pub fn try_new(num: UniPoly, den: UniPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        Ok(Self::normalize(num, den))
    }

    fn raw(num: UniPoly, den: UniPoly) -> Self {
        RatFunc {
            num,
            den,
            _var: PhantomData,
        }
    }

    fn normalize(num: UniPoly, den: UniPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::raw(UniPoly::zero(), UniPoly::constant(Rational::from_int(1)));
        }
        if let Some((k, c)) = den.as_monomial() {
            let num = if c.is_one() {
                num
            } else {
                num.scale(&c.recip().expect("nonzero"))
            };
            let s = k.min(num.order().unwrap_or(0));
            let num = if s > 0 { num.shift_down(s) } else { num };
            return Self::raw(num, UniPoly::monomial(Rational::from_int(1), k - s));
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = den.leading().expect("nonzero").clone();
        if lc.is_one() {
            Self::raw(num, den)
        } else {
            let inv = lc.recip().expect("nonzero");
            Self::raw(num.scale(&inv), den.scale(&inv))
        }
    }

    pub fn from_poly(num: UniPoly) -> Self {
        Self::raw(num, UniPoly::constant(Rational::from_int(1)))
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        Self::from_poly(UniPoly::monomial(Rational::from_int(1), 1))
    }

    /// `c * v^k` for any integer `k`.
    pub fn monomial(c: Rational, k: i64) -> Self {
        let one = Rational::from_int(1);
        if k >= 0 {
            Self::normalize(UniPoly::monomial(c, k as usize), UniPoly::constant(one))
        } else {
            Self::normalize(UniPoly::constant(c), UniPoly::monomial(one, (-k) as usize))
        }
    }

    pub fn numer(&self) -> &UniPoly {
        &self.num
    }

    pub fn denom(&self) -> &UniPoly {
        &self.den
    }

    /// True when the denominator is one, i.e. the value lies in Q[v].
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a rational number when it is constant.
    pub fn as_rational(&self) -> Option<Rational> {
        (self.den.is_one() && self.num.degree().unwrap_or(0) == 0).then(|| self.num.coeff(0))
    }

    /// Specialization at `v = 0` is undefined exactly when `v` divides the denominator.
    pub fn has_pole_at_zero(&self) -> bool {
        self.den.coeff(0).is_zero()
    }

    pub fn eval(&self, at: &Rational) -> Option<Rational> {
        let d = self.den.eval(at);
        d.recip().map(|d| self.num.eval(at).mul(&d))
    }

    fn render(&self) -> String {
        if self.den.is_one() {
            self.num.render(V::NAME)
        } else {
            let num = self.num.render(V::NAME);
            let den = self.den.render(V::NAME);
            let num = if self.num.term_count() > 1 { format!("({num})") } else { num };
            let den = if self.den.term_count() > 1 || den.contains('*') { format!("({den})") } else { den };
            format!("{num}/{den}")
        }
    }

    fn terms_json(p: &UniPoly) -> Value {
        Value::Array(
            p.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| json!([k, c.to_string()]))
                .collect(),
        )
    }

    fn poly_from_json(v: &Value) -> Option<UniPoly> {
        let mut acc = UniPoly::zero();
        for entry in v.as_array()? {
            let pair = entry.as_array()?;
            let k = pair.first()?.as_u64()? as usize;
            let c: Rational = pair.get(1)?.as_str()?.parse().ok()?;
            acc = acc.add(&UniPoly::monomial(c, k));
        }
        Some(acc)
    }

    fn latex_poly(p: &UniPoly) -> String {
        let mut out = String::new();
        for (k, c) in p.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { "-" } else { "+" });
            }
            let abs = c.abs();
            let mono = match k {
                0 => String::new(),
                1 => V::LATEX.to_string(),
                _ => format!("{}^{{{}}}", V::LATEX, k),
            };
            if mono.is_empty() || !abs.is_one() {
                out.push_str(&Ring::latex(&abs));
            }
            out.push_str(&mono);
        }
        out
    }
}

impl<V: Indeterminate> fmt::Display for RatFunc<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<V: Indeterminate> fmt::Debug for RatFunc<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<V: Indeterminate> Ring for RatFunc<V> {
    fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }

    fn one() -> Self {
        Self::from_poly(UniPoly::constant(Rational::from_int(1)))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return Self::from_poly(self.num.add(&rhs.num));
            }
            return Self::normalize(self.num.add(&rhs.num), self.den.clone());
        }
        if let (Some((i, _)), Some((j, _))) = (self.den.as_monomial(), rhs.den.as_monomial()) {
            let k = i.max(j);
            let num = self.num.shift_up(k - i).add(&rhs.num.shift_up(k - j));
            return Self::normalize(num, self.den.shift_up(k - i));
        }
        Self::normalize(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(self.num.mul(&rhs.num));
        }
        Self::normalize(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    fn neg(&self) -> Self {
        Self::raw(self.num.neg(), self.den.clone())
    }

    fn from_rational(q: &Rational) -> Self {
        Self::from_poly(UniPoly::constant(q.clone()))
    }

    fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self::raw(self.num.scale(q), self.den.clone())
    }

    fn term_text(&self) -> CoeffText {
        if self.den.is_one() {
            return match self.num.as_monomial() {
                Some((0, c)) => Ring::term_text(c),
                Some((k, c)) => {
                    let mono = if k == 1 {
                        V::NAME.to_string()
                    } else {
                        format!("{}^{}", V::NAME, k)
                    };
                    let abs = c.abs();
                    CoeffText {
                        negative: c.is_negative(),
                        unit: false,
                        body: if abs.is_one() { mono } else { format!("{abs}*{mono}") },
                    }
                }
                None => paren_text(self.num.render(V::NAME)),
            };
        }
        if let (Some((0, c)), Some((k, _))) = (self.num.as_monomial(), self.den.as_monomial()) {
            // c / v^k with c = p/q renders as p/(q*v^k)
            let abs = c.abs();
            let mono = if k == 1 {
                V::NAME.to_string()
            } else {
                format!("{}^{}", V::NAME, k)
            };
            let den = if abs.denom() == &1.into() {
                mono
            } else {
                format!("({}*{})", abs.denom(), mono)
            };
            return CoeffText {
                negative: c.is_negative(),
                unit: false,
                body: format!("{}/{}", abs.numer(), den),
            };
        }
        paren_text(self.render())
    }

    fn latex(&self) -> String {
        if self.den.is_one() {
            Self::latex_poly(&self.num)
        } else {
            format!(
                "\\frac{{{}}}{{{}}}",
                Self::latex_poly(&self.num),
                Self::latex_poly(&self.den)
            )
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "var": V::NAME,
            "num": Self::terms_json(&self.num),
            "den": Self::terms_json(&self.den),
        })
    }

    fn from_json(v: &Value) -> Option<Self> {
        if v.get("var")?.as_str()? != V::NAME {
            return None;
        }
        let num = Self::poly_from_json(v.get("num")?)?;
        let den = Self::poly_from_json(v.get("den")?)?;
        Self::try_new(num, den).ok()
    }
}

impl<V: Indeterminate> Field for RatFunc<V> {
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Self::normalize(self.den.clone(), self.num.clone()))
    }
}
