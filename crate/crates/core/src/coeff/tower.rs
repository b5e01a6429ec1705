use std::fmt;

use serde_json::{json, Value};

use super::{half_binomial, paren_text, CoeffText, QLambda, Rational, Ring};

/// Parameters of the quotient ring
/// `Q(λ)[b, c] / (b^{m+1} + 1/β, c^{2m+1} + λ b / 4)` with `β = binom(m + 1/2, m + 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerSpec {
    pub m: u32,
    pub beta: Rational,
}

impl TowerSpec {
    pub fn new(m: u32) -> TowerSpec {
        assert!(m >= 1, "tower requires m >= 1");
        TowerSpec {
            m,
            beta: half_binomial(m, m + 1),
        }
    }

    /// The value of `b^{m+1}` in the quotient: `-1/β`.
    pub fn b_power_value(&self) -> Rational {
        self.beta.recip().expect("beta is nonzero").neg()
    }
}

/// Named units of the tower. `A` is produced as the inverse of `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TowerGen {
    A,
    B,
    C,
}

/// Element `Σ coeff[i][j] b^i c^j` with `0 ≤ i ≤ M`, `0 ≤ j ≤ 2M`, always
/// fully reduced, so structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TowerScalar<const M: usize> {
    coeffs: Vec<QLambda>,
}

impl<const M: usize> TowerScalar<M> {
    const WIDTH: usize = 2 * M + 1;
    const LEN: usize = (M + 1) * (2 * M + 1);

    pub fn spec() -> TowerSpec {
        TowerSpec::new(M as u32)
    }

    fn empty() -> Self {
        assert!(M >= 1, "tower requires m >= 1");
        TowerScalar {
            coeffs: vec![QLambda::zero(); Self::LEN],
        }
    }

    pub fn from_base(x: QLambda) -> Self {
        let mut out = Self::empty();
        out.coeffs[0] = x;
        out
    }

    pub fn lambda() -> Self {
        Self::from_base(QLambda::var())
    }

    /// `x * b^i * c^j`, reduced.
    pub fn monomial(x: QLambda, i: usize, j: usize) -> Self {
        let mut out = Self::empty();
        out.accumulate(i, j, x);
        out
    }

    pub fn gen(g: TowerGen) -> Self {
        match g {
            TowerGen::A => Self::unit_inverse(TowerGen::C),
            TowerGen::B => Self::monomial(QLambda::one(), 1, 0),
            TowerGen::C => Self::monomial(QLambda::one(), 0, 1),
        }
    }

    /// Closed-form inverses of the units: `b⁻¹ = -β b^m`, `c⁻¹ = -4/(λ b) · c^{2m}`,
    /// and `a = c⁻¹`.
    pub fn unit_inverse(g: TowerGen) -> Self {
        let beta = Self::spec().beta;
        let b_inv = Self::monomial(QLambda::from_rational(&beta.neg()), M, 0);
        match g {
            TowerGen::B => b_inv,
            TowerGen::A | TowerGen::C => {
                let minus_four_over_lambda = QLambda::monomial(Rational::from_int(-4), -1);
                Self::monomial(minus_four_over_lambda, 0, 2 * M).mul(&b_inv)
            }
        }
    }

    pub fn coeff(&self, i: usize, j: usize) -> &QLambda {
        &self.coeffs[i * Self::WIDTH + j]
    }

    /// Adds `x b^i c^j` after reducing the exponents by the two relations.
    fn accumulate(&mut self, mut i: usize, mut j: usize, mut x: QLambda) {
        let width = Self::WIDTH;
        while j >= width {
            j -= width;
            i += 1;
            x = x.mul(&QLambda::monomial(Rational::new(-1, 4), 1));
        }
        if i > M {
            let b_pow = Self::spec().b_power_value();
            while i > M {
                i -= M + 1;
                x = x.scale(&b_pow);
            }
        }
        self.coeffs[i * width + j].add_assign(&x);
    }

    /// The base-field value when all tower generators have cancelled.
    pub fn as_base(&self) -> Option<&QLambda> {
        self.coeffs[1..]
            .iter()
            .all(QLambda::is_zero)
            .then(|| &self.coeffs[0])
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &QLambda)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| (k / Self::WIDTH, k % Self::WIDTH, x))
    }

    fn render(&self) -> String {
        let parts: Vec<String> = self
            .terms()
            .map(|(i, j, x)| {
                let mut gens = Vec::new();
                match i {
                    0 => {}
                    1 => gens.push("b".to_string()),
                    _ => gens.push(format!("b^{i}")),
                }
                match j {
                    0 => {}
                    1 => gens.push("c".to_string()),
                    _ => gens.push(format!("c^{j}")),
                }
                let t = x.term_text();
                let sign = if t.negative { "-" } else { "" };
                if gens.is_empty() {
                    format!("{sign}{}", t.body)
                } else if t.unit {
                    format!("{sign}{}", gens.join("*"))
                } else {
                    format!("{sign}{}*{}", t.body, gens.join("*"))
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    }
}

impl<const M: usize> fmt::Display for TowerScalar<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<const M: usize> fmt::Debug for TowerScalar<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<const M: usize> Ring for TowerScalar<M> {
    fn zero() -> Self {
        Self::empty()
    }

    fn one() -> Self {
        Self::from_base(QLambda::one())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QLambda::is_zero)
    }

    fn add(&self, rhs: &Self) -> Self {
        TowerScalar {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        TowerScalar {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::empty();
        for (i1, j1, x) in self.terms() {
            for (i2, j2, y) in rhs.terms() {
                out.accumulate(i1 + i2, j1 + j2, x.mul(y));
            }
        }
        out
    }

    fn neg(&self) -> Self {
        TowerScalar {
            coeffs: self.coeffs.iter().map(QLambda::neg).collect(),
        }
    }

    fn from_rational(q: &Rational) -> Self {
        Self::from_base(QLambda::from_rational(q))
    }

    fn add_assign(&mut self, rhs: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                a.add_assign(b);
            }
        }
    }

    fn scale(&self, q: &Rational) -> Self {
        TowerScalar {
            coeffs: self.coeffs.iter().map(|x| x.scale(q)).collect(),
        }
    }

    fn term_text(&self) -> CoeffText {
        match self.as_base() {
            Some(x) => x.term_text(),
            None => {
                let mut terms = self.terms();
                match (terms.next(), terms.next()) {
                    (Some(_), None) if !self.render().starts_with('-') => CoeffText {
                        negative: false,
                        unit: false,
                        body: self.render(),
                    },
                    _ => paren_text(self.render()),
                }
            }
        }
    }

    fn latex(&self) -> String {
        let parts: Vec<String> = self
            .terms()
            .map(|(i, j, x)| {
                let mut s = format!("\\left({}\\right)", x.latex());
                if i > 0 {
                    s.push_str(&format!("b^{{{i}}}"));
                }
                if j > 0 {
                    s.push_str(&format!("c^{{{j}}}"));
                }
                s
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self
            .terms()
            .map(|(i, j, x)| json!([i, j, x.to_json()]))
            .collect();
        json!({"m": M, "coeffs": coeffs})
    }

    fn from_json(v: &Value) -> Option<Self> {
        if v.get("m")?.as_u64()? != M as u64 {
            return None;
        }
        let mut out = Self::empty();
        for entry in v.get("coeffs")?.as_array()? {
            let e = entry.as_array()?;
            let i = e.first()?.as_u64()? as usize;
            let j = e.get(1)?.as_u64()? as usize;
            let x = QLambda::from_json(e.get(2)?)?;
            out.accumulate(i, j, x);
        }
        Some(out)
    }
}
