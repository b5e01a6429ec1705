//! Sparse multivariate polynomials over any [`Ring`] backend.
//!
//! Terms are kept sorted in graded-lexicographic order with no zero
//! coefficients, so two polynomials are equal exactly when their term lists
//! are equal. Exponent vectors are packed into a single `u128`: the total
//! degree lives in the top 16 bits and each variable gets a 16-bit field in
//! declaration order, which makes integer comparison coincide with the
//! graded-lex order and monomial multiplication a single addition.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::coeff::{Indeterminate, RatFunc, Rational, Ring};
use crate::error::{AlgebraError, Result};

pub const MAX_VARS: usize = 7;
const FIELD_BITS: u32 = 16;
const FIELD_MASK: u128 = 0xffff;
const TOTAL_SHIFT: u32 = 112;

/// A packed exponent vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(u128);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    fn shift(i: usize) -> u32 {
        TOTAL_SHIFT - FIELD_BITS * (i as u32 + 1)
    }

    pub fn from_exponents(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables");
        let total: u32 = exps.iter().sum();
        assert!(total <= 0xffff, "degree overflow");
        let mut packed = u128::from(total) << TOTAL_SHIFT;
        for (i, &e) in exps.iter().enumerate() {
            packed |= u128::from(e) << Self::shift(i);
        }
        Monomial(packed)
    }

    pub fn var(i: usize) -> Monomial {
        Monomial((1u128 << TOTAL_SHIFT) | (1u128 << Self::shift(i)))
    }

    pub fn exp(self, i: usize) -> u32 {
        ((self.0 >> Self::shift(i)) & FIELD_MASK) as u32
    }

    pub fn degree(self) -> u32 {
        (self.0 >> TOTAL_SHIFT) as u32
    }

    pub fn exponents(self, n: usize) -> Vec<u32> {
        (0..n).map(|i| self.exp(i)).collect()
    }

    pub fn degree_in(self, vars: &[usize]) -> u32 {
        vars.iter().map(|&i| self.exp(i)).sum()
    }

    pub fn mul(self, rhs: Monomial) -> Monomial {
        let total = self.degree() + rhs.degree();
        assert!(total <= 0xffff, "degree overflow");
        Monomial(self.0 + rhs.0)
    }

    /// `self / rhs` when `rhs` divides `self`.
    pub fn div(self, rhs: Monomial, n: usize) -> Option<Monomial> {
        (0..n)
            .all(|i| self.exp(i) >= rhs.exp(i))
            .then(|| Monomial(self.0 - rhs.0))
    }

    fn with_exp(self, i: usize, e: u32) -> Monomial {
        let mut exps = self.exponents(MAX_VARS);
        exps[i] = e;
        Monomial::from_exponents(&exps)
    }

    pub fn render(self, vars: &[String]) -> String {
        let parts: Vec<String> = vars
            .iter()
            .enumerate()
            .filter_map(|(i, v)| match self.exp(i) {
                0 => None,
                1 => Some(v.clone()),
                e => Some(format!("{v}^{e}")),
            })
            .collect();
        parts.join("*")
    }

    fn latex(self, vars: &[String]) -> String {
        vars.iter()
            .enumerate()
            .filter_map(|(i, v)| {
                let v = if v == "lambda" { "\\lambda" } else { v.as_str() };
                match self.exp(i) {
                    0 => None,
                    1 => Some(v.to_string()),
                    e => Some(format!("{v}^{{{e}}}")),
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Shared, ordered variable declaration.
pub type Vars = Arc<[String]>;

pub fn vars(names: &[&str]) -> Vars {
    assert!(names.len() <= MAX_VARS, "at most {MAX_VARS} variables");
    names.iter().map(|s| s.to_string()).collect()
}

/// The ring operations exposed through [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly<C> {
    vars: Vars,
    /// Ascending graded-lex order, no zero coefficients.
    terms: Vec<(Monomial, C)>,
}

impl<C: Ring> MultiPoly<C> {
    pub fn zero(vars: Vars) -> Self {
        MultiPoly {
            vars,
            terms: Vec::new(),
        }
    }

    pub fn constant(vars: Vars, c: C) -> Self {
        Self::term(vars, c, Monomial::ONE)
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, C::one())
    }

    pub fn term(vars: Vars, c: C, m: Monomial) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        MultiPoly { vars, terms }
    }

    pub fn var(vars: Vars, i: usize) -> Self {
        assert!(i < vars.len(), "variable index out of range");
        Self::term(vars, C::one(), Monomial::var(i))
    }

    /// Looks a variable up by name.
    pub fn var_named(vars: Vars, name: &str) -> Option<Self> {
        let i = vars.iter().position(|v| v == name)?;
        Some(Self::var(vars, i))
    }

    /// Builds from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(vars: Vars, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut acc: HashMap<Monomial, C> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(x) => x.add_assign(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(vars, acc)
    }

    fn from_map(vars: Vars, acc: HashMap<Monomial, C>) -> Self {
        let mut terms: Vec<(Monomial, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|(m, _)| *m);
        MultiPoly { vars, terms }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn coeff(&self, m: Monomial) -> C {
        self.terms
            .binary_search_by_key(&m, |(k, _)| *k)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| C::zero())
    }

    pub fn is_one_poly(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, c)] if *m == Monomial::ONE && c.is_one())
    }

    /// The constant term.
    pub fn constant_term(&self) -> C {
        self.coeff(Monomial::ONE)
    }

    /// The scalar value when the polynomial has degree at most zero.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => Some(C::zero()),
            [(m, c)] if *m == Monomial::ONE => Some(c.clone()),
            _ => None,
        }
    }

    pub fn same_context(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.same_context(other) {
            Ok(())
        } else {
            Err(AlgebraError::MixedContext(format!(
                "{:?} vs {:?}",
                self.vars, other.vars
            )))
        }
    }

    fn assert_context(&self, other: &Self) {
        if let Err(e) = self.check(other) {
            panic!("{e}");
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_context(rhs);
        self.merge(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.assert_context(rhs);
        self.merge(rhs, true)
    }

    fn merge(&self, rhs: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &rhs.terms);
        while i < a.len() || j < b.len() {
            let take_left = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_right = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_left {
                out.push(a[i].clone());
                i += 1;
            } else if take_right {
                let c = if negate { b[j].1.neg() } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate {
                    a[i].1.sub(&b[j].1)
                } else {
                    a[i].1.add(&b[j].1)
                };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.assert_context(rhs);
        self.mul_bounded(rhs, None)
    }

    /// Product with every term of total degree above `cap` dropped.
    pub fn mul_truncated(&self, rhs: &Self, cap: u32) -> Self {
        self.assert_context(rhs);
        self.mul_bounded(rhs, Some(cap))
    }

    fn mul_bounded(&self, rhs: &Self, cap: Option<u32>) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.vars.clone());
        }
        let (small, big) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return big.mul_term_bounded(c, *m, cap);
        }
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(small.len() * big.len() / 2 + 1);
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                if let Some(cap) = cap {
                    // terms are sorted by total degree first
                    if ma.degree() + mb.degree() > cap {
                        break;
                    }
                }
                let m = ma.mul(*mb);
                let p = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(x) => x.add_assign(&p),
                    None => {
                        acc.insert(m, p);
                    }
                }
            }
        }
        Self::from_map(self.vars.clone(), acc)
    }

    fn mul_term_bounded(&self, c: &C, m: Monomial, cap: Option<u32>) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| cap.is_none_or(|cap| k.degree() + m.degree() <= cap))
            .map(|(k, x)| (k.mul(m), x.mul(c)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Multiplication by `c * m`.
    pub fn mul_term(&self, c: &C, m: Monomial) -> Self {
        self.mul_term_bounded(c, m, None)
    }

    pub fn scale(&self, c: &C) -> Self {
        self.mul_term(c, Monomial::ONE)
    }

    pub fn pow(&self, e: u32) -> Self {
        self.pow_bounded(e, None)
    }

    fn pow_bounded(&self, mut e: u32, cap: Option<u32>) -> Self {
        let mut acc = Self::one(self.vars.clone());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_bounded(&base, cap);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_bounded(&base, cap);
            }
        }
        acc
    }

    /// Drops every term of total degree above `cap`.
    pub fn truncate(&self, cap: u32) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= cap)
                .cloned()
                .collect(),
        }
    }

    /// Total degree over all variables; `None` encodes the degree of zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.last().map(|(m, _)| m.degree())
    }

    /// Degree counting only the variables at the given positions.
    pub fn degree_in(&self, vars: &[usize]) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree_in(vars)).max()
    }

    /// Degree in the variables with the given names (unknown names are ignored).
    pub fn degree_in_named(&self, names: &[&str]) -> Option<u32> {
        self.degree_in(&self.indices_of(names))
    }

    pub fn indices_of(&self, names: &[&str]) -> Vec<usize> {
        names
            .iter()
            .filter_map(|n| self.vars.iter().position(|v| v == n))
            .collect()
    }

    /// Sum of the terms of maximal degree in `vars`.
    pub fn leading_form(&self, vars: &[usize]) -> Result<Self> {
        let d = self.degree_in(vars).ok_or(AlgebraError::ZeroPolynomial)?;
        Ok(MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree_in(vars) == d)
                .cloned()
                .collect(),
        })
    }

    /// The greatest term in graded-lex order.
    pub fn leading_term(&self) -> Option<&(Monomial, C)> {
        self.terms.last()
    }

    pub fn derivative(&self, i: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(i) > 0)
            .map(|(m, c)| {
                let e = m.exp(i);
                (m.with_exp(i, e - 1), c.mul(&C::from_int(e.into())))
            });
        Self::from_terms(self.vars.clone(), terms)
    }

    /// True when no term involves variable `i`.
    pub fn is_free_of(&self, i: usize) -> bool {
        self.terms.iter().all(|(m, _)| m.exp(i) == 0)
    }

    /// Applies the ring homomorphism sending variable `i` to `images[i]`.
    ///
    /// The images may live in a different polynomial ring (all in the same one).
    pub fn substitute(&self, images: &[MultiPoly<C>]) -> Result<MultiPoly<C>> {
        self.substitute_bounded(images, None)
    }

    /// [`substitute`](Self::substitute) with all terms above total degree `cap` discarded.
    pub fn substitute_truncated(&self, images: &[MultiPoly<C>], cap: u32) -> Result<MultiPoly<C>> {
        self.substitute_bounded(images, Some(cap))
    }

    fn substitute_bounded(&self, images: &[MultiPoly<C>], cap: Option<u32>) -> Result<MultiPoly<C>> {
        if images.len() != self.nvars() {
            return Err(AlgebraError::MixedContext(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars()
            )));
        }
        let target = match images.first() {
            Some(f) => f.vars.clone(),
            None => return Ok(self.clone()),
        };
        if let Some(bad) = images.iter().find(|f| !f.same_context(&images[0])) {
            return Err(AlgebraError::MixedContext(format!(
                "images in {:?} and {:?}",
                target, bad.vars
            )));
        }
        // Group terms lexicographically so each distinct exponent prefix costs
        // one multiplication by a cached power of an image.
        let mut order: Vec<&(Monomial, C)> = self.terms.iter().collect();
        let n = self.nvars();
        order.sort_unstable_by(|a, b| {
            (0..n)
                .map(|i| a.0.exp(i))
                .cmp((0..n).map(|i| b.0.exp(i)))
        });
        let mut powers = PowerCache::new(images, cap);
        Ok(eval_group(&order, 0, n, &target, &mut powers, cap))
    }

    /// Sets variable `i` to zero and removes it from the declaration.
    pub fn eliminate_at_zero(&self, i: usize) -> Self {
        let n = self.nvars();
        let rest: Vars = self
            .vars
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let terms: Vec<(Monomial, C)> = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(i) == 0)
            .map(|(m, c)| {
                let exps: Vec<u32> = (0..n).filter(|&j| j != i).map(|j| m.exp(j)).collect();
                (Monomial::from_exponents(&exps), c.clone())
            })
            .collect();
        Self::from_terms(rest, terms)
    }

    /// Renders the greatest term of `self - other`, or `None` when equal.
    pub fn first_difference(&self, other: &Self) -> Option<String> {
        let diff = if self.same_context(other) {
            self.sub(other)
        } else {
            return Some(format!("different rings {:?} / {:?}", self.vars, other.vars));
        };
        diff.terms.last().map(|(m, c)| {
            MultiPoly::term(self.vars.clone(), c.clone(), *m).render()
        })
    }

    /// Maps every coefficient, dropping those that become zero.
    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn try_map_coeffs<D: Ring, E>(
        &self,
        f: impl Fn(Monomial, &C) -> std::result::Result<D, E>,
    ) -> std::result::Result<MultiPoly<D>, E> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let d = f(*m, c)?;
            if !d.is_zero() {
                terms.push((*m, d));
            }
        }
        Ok(MultiPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Reinterprets the polynomial in another variable declaration; every
    /// variable with a nonzero exponent must exist there by name.
    pub fn rebase(&self, target: &Vars) -> Result<Self> {
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|w| w == v))
            .collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0; target.len()];
            for (i, slot) in map.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    let j = slot.ok_or_else(|| {
                        AlgebraError::MixedContext(format!("variable {} missing", self.vars[i]))
                    })?;
                    exps[j] += e;
                }
            }
            terms.push((Monomial::from_exponents(&exps), c.clone()));
        }
        Ok(Self::from_terms(target.clone(), terms))
    }

    pub fn to_json(&self) -> Value {
        let n = self.nvars();
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| json!([m.exponents(n), c.to_json()]))
            .collect();
        json!({"vars": &*self.vars, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Option<Self> {
        let names: Vec<&str> = v
            .get("vars")?
            .as_array()?
            .iter()
            .map(Value::as_str)
            .collect::<Option<_>>()?;
        let vs = vars(&names);
        let mut terms = Vec::new();
        for t in v.get("terms")?.as_array()? {
            let t = t.as_array()?;
            let exps: Vec<u32> = t
                .first()?
                .as_array()?
                .iter()
                .map(|e| e.as_u64().map(|e| e as u32))
                .collect::<Option<_>>()?;
            if exps.len() != names.len() {
                return None;
            }
            terms.push((Monomial::from_exponents(&exps), C::from_json(t.get(1)?)?));
        }
        Some(Self::from_terms(vs, terms))
    }

    /// Canonical infix text, highest graded-lex term first.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let t = c.term_text();
            let mono = m.render(&self.vars);
            let body = if mono.is_empty() {
                t.body
            } else if t.unit {
                mono
            } else {
                format!("{}*{}", t.body, mono)
            };
            if out.is_empty() {
                if t.negative {
                    out.push('-');
                }
            } else {
                out.push_str(if t.negative { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }

    pub fn latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let t = c.term_text();
            let mono = m.latex(&self.vars);
            let mag = if t.negative { c.neg() } else { c.clone() };
            let mut coeff = mag.latex();
            if t.body.starts_with('(') {
                coeff = format!("\\left({coeff}\\right)");
            }
            if !out.is_empty() || t.negative {
                out.push_str(if t.negative { "-" } else { "+" });
            }
            if mono.is_empty() {
                out.push_str(&coeff);
            } else {
                if !t.unit {
                    out.push_str(&coeff);
                }
                out.push_str(&mono);
            }
        }
        out
    }
}

/// The spec-level arithmetic entry point with context checking.
pub fn arith<C: Ring>(op: ArithOp, p: &MultiPoly<C>, q: &MultiPoly<C>) -> Result<MultiPoly<C>> {
    p.check(q)?;
    Ok(match op {
        ArithOp::Add => p.merge(q, false),
        ArithOp::Sub => p.merge(q, true),
        ArithOp::Mul => p.mul_bounded(q, None),
    })
}

struct PowerCache<'a, C> {
    images: &'a [MultiPoly<C>],
    cap: Option<u32>,
    powers: Vec<Vec<MultiPoly<C>>>,
}

impl<'a, C: Ring> PowerCache<'a, C> {
    fn new(images: &'a [MultiPoly<C>], cap: Option<u32>) -> Self {
        PowerCache {
            images,
            cap,
            powers: images
                .iter()
                .map(|f| vec![MultiPoly::one(f.vars.clone())])
                .collect(),
        }
    }

    fn get(&mut self, i: usize, e: u32) -> &MultiPoly<C> {
        let e = e as usize;
        while self.powers[i].len() <= e {
            let last = self.powers[i].last().expect("power 0 present");
            let next = last.mul_bounded(&self.images[i], self.cap);
            self.powers[i].push(next);
        }
        &self.powers[i][e]
    }
}

fn eval_group<C: Ring>(
    terms: &[&(Monomial, C)],
    var: usize,
    n: usize,
    target: &Vars,
    powers: &mut PowerCache<'_, C>,
    cap: Option<u32>,
) -> MultiPoly<C> {
    if var == n {
        let mut c = C::zero();
        for (_, x) in terms {
            c.add_assign(x);
        }
        return MultiPoly::constant(target.clone(), c);
    }
    let mut acc = MultiPoly::zero(target.clone());
    let mut start = 0;
    while start < terms.len() {
        let e = terms[start].0.exp(var);
        let end = start + terms[start..].iter().take_while(|t| t.0.exp(var) == e).count();
        let inner = eval_group(&terms[start..end], var + 1, n, target, powers, cap);
        let part = if e == 0 {
            inner
        } else {
            powers.get(var, e).mul_bounded(&inner, cap)
        };
        acc = acc.merge(&part, false);
        start = end;
    }
    acc
}

impl<C: Ring> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<C: Ring> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self.render(), self.vars)
    }
}

impl MultiPoly<Rational> {
    /// Embeds a rational polynomial into any backend.
    pub fn lift<C: Ring>(&self) -> MultiPoly<C> {
        self.map_coeffs(C::from_rational)
    }

    /// Moves variable `i` into the coefficients: `Q[.., v, ..]` becomes `Q(v)[..]`.
    pub fn absorb_var<V: Indeterminate>(&self, i: usize) -> MultiPoly<RatFunc<V>> {
        let n = self.nvars();
        let rest: Vars = self
            .vars
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let terms = self.terms.iter().map(|(m, c)| {
            let exps: Vec<u32> = (0..n).filter(|&j| j != i).map(|j| m.exp(j)).collect();
            (
                Monomial::from_exponents(&exps),
                RatFunc::monomial(c.clone(), m.exp(i).into()),
            )
        });
        MultiPoly::from_terms(rest, terms)
    }
}

impl<V: Indeterminate> MultiPoly<RatFunc<V>> {
    /// Inverse of [`MultiPoly::absorb_var`] with the indeterminate appended as
    /// the last variable; `None` when some coefficient is not in `Q[v]`.
    pub fn expand_indeterminate(&self) -> Option<MultiPoly<Rational>> {
        let n = self.nvars();
        let mut names: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        names.push(V::NAME);
        let target = vars(&names);
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            if !c.is_polynomial() {
                return None;
            }
            let mut exps = m.exponents(n);
            exps.push(0);
            for (k, a) in c.numer().coeffs().iter().enumerate() {
                if !a.is_zero() {
                    exps[n] = k as u32;
                    terms.push((Monomial::from_exponents(&exps), a.clone()));
                }
            }
        }
        Some(MultiPoly::from_terms(target, terms))
    }

    /// Evaluates every coefficient at `v = at`; the error carries the first
    /// monomial whose coefficient has a pole there.
    pub fn specialize(&self, at: &Rational) -> std::result::Result<MultiPoly<Rational>, Monomial> {
        self.try_map_coeffs(|m, c| {
            if at.is_zero() {
                if c.has_pole_at_zero() {
                    return Err(m);
                }
                Ok(c.numer().coeff(0).mul(&c.denom().coeff(0).recip().expect("no pole")))
            } else {
                c.eval(at).ok_or(m)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = MultiPoly<Rational>;

    fn xyz() -> (P, P, P) {
        let v = vars(&["x", "y", "z"]);
        (P::var(v.clone(), 0), P::var(v.clone(), 1), P::var(v, 2))
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn nagata() -> (P, P) {
        let (x, y, z) = xyz();
        let w = y.pow(2).add(&z.mul(&x));
        let f1 = x
            .sub(&y.mul(&w).scale(&q(2, 1)))
            .sub(&z.mul(&w.pow(2)));
        let f2 = y.add(&z.mul(&w));
        (f1, f2)
    }

    #[test]
    fn monomial_packing_orders_graded_lex() {
        let a = Monomial::from_exponents(&[2, 0, 0]);
        let b = Monomial::from_exponents(&[0, 1, 2]);
        let c = Monomial::from_exponents(&[1, 1, 1]);
        assert!(a < b, "lower total degree first");
        assert!(b < c, "then lex with x largest");
        assert_eq!(a.mul(b).exponents(3), vec![2, 1, 2]);
        assert_eq!(c.degree(), 3);
    }

    #[test]
    fn arithmetic_examples() {
        let (x, y, z) = xyz();
        let w = y.pow(2).add(&z.mul(&x));
        assert_eq!(w.mul(&z).add(&y), nagata().1);
        assert!(w.mul(&P::zero(w.vars().clone())).is_zero());
        let u = vars(&["U"]);
        let p1 = P::one(u.clone()).add(&P::var(u.clone(), 0).scale(&q(3, 2)));
        let expect = P::from_terms(
            u,
            [
                (Monomial::from_exponents(&[0]), q(1, 1)),
                (Monomial::from_exponents(&[1]), q(3, 1)),
                (Monomial::from_exponents(&[2]), q(9, 4)),
            ],
        );
        assert_eq!(p1.pow(2), expect);
    }

    #[test]
    fn mixed_context_is_rejected() {
        let (x, _, _) = xyz();
        let u = P::var(vars(&["U"]), 0);
        assert!(matches!(arith(ArithOp::Add, &x, &u), Err(AlgebraError::MixedContext(_))));
        assert!(x.substitute(std::slice::from_ref(&u)).is_err());
    }

    #[test]
    fn substitution_examples() {
        let (x, y, z) = xyz();
        let p = x.add(&y.pow(2));
        let id = [x.clone(), y.clone(), z.clone()];
        assert_eq!(p.substitute(&id).unwrap(), p);
        let inv = [x.sub(&y.pow(2)), y.clone(), z.clone()];
        assert_eq!(p.substitute(&inv).unwrap(), x);
    }

    #[test]
    fn degrees_and_leading_forms_of_nagata() {
        let (f1, f2) = nagata();
        assert_eq!(f1.degree(), Some(5));
        assert_eq!(f1.degree_in(&[0, 1]), Some(4));
        let (_, y, z) = xyz();
        assert_eq!(f1.leading_form(&[0, 1]).unwrap(), z.mul(&y.pow(4)).neg());
        assert_eq!(f2.leading_form(&[0, 1]).unwrap(), z.mul(&y.pow(2)));
        let c = P::constant(f1.vars().clone(), q(7, 1));
        assert_eq!(c.degree(), Some(0));
        assert_eq!(P::zero(f1.vars().clone()).degree(), None);
        assert_eq!(
            P::zero(f1.vars().clone()).leading_form(&[0]),
            Err(AlgebraError::ZeroPolynomial)
        );
        let h = y.pow(2).add(&z.mul(&y));
        assert_eq!(h.leading_form(&[0, 1, 2]).unwrap(), h);
    }

    #[test]
    fn render_is_canonical() {
        let (f1, _) = nagata();
        assert_eq!(
            f1.render(),
            "-x^2*z^3 - 2*x*y^2*z^2 - y^4*z - 2*x*y*z - 2*y^3 + x"
        );
        let v = f1.to_json();
        assert_eq!(P::from_json(&v), Some(f1));
    }

    #[test]
    fn truncated_substitution_matches_full_then_truncate() {
        let (x, y, z) = xyz();
        let p = x.pow(3).add(&y.mul(&z)).add(&x);
        let images = [x.add(&y.pow(2)), y.add(&z.pow(3)), z.clone()];
        let full = p.substitute(&images).unwrap();
        assert_eq!(p.substitute_truncated(&images, 4).unwrap(), full.truncate(4));
    }
}
