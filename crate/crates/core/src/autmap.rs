//! Polynomial maps of affine n-space: composition, Jacobians, degrees,
//! inversion and specialization of a coefficient indeterminate.

use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::coeff::{Field, Indeterminate, RatFunc, Rational, Ring};
use crate::error::{AlgebraError, Result};
use crate::multipoly::{Monomial, MultiPoly, Vars};

/// An endomorphism `(f_1, …, f_n)` of affine n-space, acting on the variables
/// `x_1, …, x_n` of its components.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMap<C> {
    components: Vec<MultiPoly<C>>,
}

impl<C: Ring> PolyMap<C> {
    pub fn new(components: Vec<MultiPoly<C>>) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| AlgebraError::MixedContext("empty map".into()))?;
        if first.nvars() != components.len() {
            return Err(AlgebraError::MixedContext(format!(
                "{} components over {} variables",
                components.len(),
                first.nvars()
            )));
        }
        if components.iter().any(|f| !f.same_context(first)) {
            return Err(AlgebraError::MixedContext("components over different variables".into()));
        }
        Ok(PolyMap { components })
    }

    pub fn identity(vars: Vars) -> Self {
        PolyMap {
            components: (0..vars.len()).map(|i| MultiPoly::var(vars.clone(), i)).collect(),
        }
    }

    pub fn vars(&self) -> &Vars {
        self.components[0].vars()
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MultiPoly<C>] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &MultiPoly<C> {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<MultiPoly<C>> {
        self.components
    }

    pub fn is_identity(&self) -> bool {
        self.components
            .iter()
            .enumerate()
            .all(|(i, f)| *f == MultiPoly::var(f.vars().clone(), i))
    }

    /// `self ∘ inner`, i.e. `(g_1(f), …, g_n(f))` with `g = self`.
    pub fn compose(&self, inner: &PolyMap<C>) -> Result<PolyMap<C>> {
        compose(self, inner)
    }

    /// Pullback `f*(p) = p(f_1, …, f_n)`.
    pub fn pullback(&self, p: &MultiPoly<C>) -> Result<MultiPoly<C>> {
        p.substitute(&self.components)
    }

    /// `deg(f) = max deg(f_i)`; `None` only for the zero map.
    pub fn degree(&self) -> Option<u32> {
        self.components.iter().filter_map(MultiPoly::degree).max()
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D + Copy) -> PolyMap<D> {
        PolyMap {
            components: self.components.iter().map(|p| p.map_coeffs(f)).collect(),
        }
    }

    /// Constant terms `f(0)`.
    pub fn translation(&self) -> Vec<C> {
        self.components.iter().map(MultiPoly::constant_term).collect()
    }

    /// Matrix of the degree-one coefficients, row i = component i.
    pub fn linear_part(&self) -> Vec<Vec<C>> {
        let n = self.dim();
        self.components
            .iter()
            .map(|f| (0..n).map(|j| f.coeff(Monomial::var(j))).collect())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vars": &**self.vars(),
            "components": self.components.iter().map(MultiPoly::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Option<Self> {
        let comps = v
            .get("components")?
            .as_array()?
            .iter()
            .map(MultiPoly::from_json)
            .collect::<Option<Vec<_>>>()?;
        PolyMap::new(comps).ok()
    }

    pub fn latex(&self) -> String {
        let parts: Vec<String> = self.components.iter().map(MultiPoly::latex).collect();
        format!("\\left({}\\right)", parts.join(",\\ "))
    }
}

impl PolyMap<Rational> {
    pub fn lift<C: Ring>(&self) -> PolyMap<C> {
        PolyMap {
            components: self.components.iter().map(MultiPoly::lift).collect(),
        }
    }
}

impl<C: Ring> fmt::Display for PolyMap<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(MultiPoly::render).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl<C: Ring> fmt::Debug for PolyMap<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `g ∘ f = (g_1(f_1, …, f_n), …, g_n(f_1, …, f_n))`, components in parallel.
pub fn compose<C: Ring>(g: &PolyMap<C>, f: &PolyMap<C>) -> Result<PolyMap<C>> {
    if g.dim() != f.dim() || !g.components[0].same_context(&f.components[0]) {
        return Err(AlgebraError::MixedContext(format!(
            "cannot compose maps over {:?} and {:?}",
            g.vars(),
            f.vars()
        )));
    }
    let components = g
        .components
        .par_iter()
        .map(|gi| gi.substitute(&f.components))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyMap { components })
}

/// Composition with every term above total degree `cap` discarded.
pub fn compose_truncated<C: Ring>(g: &PolyMap<C>, f: &PolyMap<C>, cap: u32) -> Result<PolyMap<C>> {
    let components = g
        .components
        .par_iter()
        .map(|gi| gi.substitute_truncated(&f.components, cap))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyMap { components })
}

/// Σ deg(f_i).
pub fn sdeg<C: Ring>(f: &PolyMap<C>) -> u32 {
    f.components.iter().filter_map(MultiPoly::degree).sum()
}

/// Determinant of the matrix of partial derivatives.
pub fn jacobian_det<C: Ring>(f: &PolyMap<C>) -> MultiPoly<C> {
    let n = f.dim();
    let matrix: Vec<Vec<MultiPoly<C>>> = f
        .components
        .iter()
        .map(|fi| (0..n).map(|j| fi.derivative(j)).collect())
        .collect();
    let cols: Vec<usize> = (0..n).collect();
    det_expand(&matrix, 0, &cols, f.vars())
}

fn det_expand<C: Ring>(m: &[Vec<MultiPoly<C>>], row: usize, cols: &[usize], vars: &Vars) -> MultiPoly<C> {
    if cols.is_empty() {
        return MultiPoly::one(vars.clone());
    }
    let mut acc = MultiPoly::zero(vars.clone());
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_expand(m, row + 1, &rest, vars);
        let term = entry.mul(&minor);
        acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Inverse of a square matrix over a field by Gauss–Jordan elimination.
pub fn invert_matrix<C: Field>(a: &[Vec<C>]) -> Option<Vec<Vec<C>>> {
    let n = a.len();
    let mut m: Vec<Vec<C>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { C::one() } else { C::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].inv()?;
        for x in m[col].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x = x.sub(&factor.mul(p));
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// The affine map `x ↦ A x + b`.
pub fn affine_map<C: Ring>(vars: Vars, matrix: &[Vec<C>], translation: &[C]) -> PolyMap<C> {
    let n = vars.len();
    let components = (0..n)
        .map(|i| {
            let mut terms: Vec<(Monomial, C)> = (0..n)
                .map(|j| (Monomial::var(j), matrix[i][j].clone()))
                .collect();
            terms.push((Monomial::ONE, translation[i].clone()));
            MultiPoly::from_terms(vars.clone(), terms)
        })
        .collect();
    PolyMap { components }
}

/// Compositional inverse by jet iteration.
///
/// After moving `f(0)` to the origin and splitting off the linear part `A`,
/// iterates `g ← A⁻¹(x − N(g))` raising the truncation degree by one each
/// round (`N` is the part of order ≥ 2). Whenever a round adds no term of the
/// current degree the candidate is checked by exact recomposition. The cap
/// defaults to the Gabber bound `deg(f)^(n−1)`.
pub fn inverse<C: Field>(f: &PolyMap<C>, degree_cap: Option<u32>) -> Result<PolyMap<C>> {
    let n = f.dim();
    let vars = f.vars().clone();
    let d = f.degree().unwrap_or(1).max(1);
    let cap = degree_cap.unwrap_or_else(|| d.saturating_pow(n as u32 - 1)).max(1);

    let b = f.translation();
    let f0 = PolyMap {
        components: f
            .components
            .iter()
            .zip(&b)
            .map(|(fi, bi)| fi.sub(&MultiPoly::constant(vars.clone(), bi.clone())))
            .collect(),
    };
    let a = f0.linear_part();
    let a_inv = invert_matrix(&a).ok_or(AlgebraError::NotInvertibleLinearPart)?;
    let zero = vec![C::zero(); n];
    let linear = affine_map(vars.clone(), &a, &zero);
    let nonlinear = PolyMap {
        components: f0
            .components
            .iter()
            .zip(&linear.components)
            .map(|(p, l)| p.sub(l))
            .collect(),
    };
    let a_inv_map = affine_map(vars.clone(), &a_inv, &zero);
    let id = PolyMap::identity(vars.clone());

    let mut g = a_inv_map.clone();
    let finish = |g0: &PolyMap<C>| -> Result<Option<PolyMap<C>>> {
        if compose(&f0, g0)?.is_identity() {
            let shift: Vec<C> = b.iter().map(Ring::neg).collect();
            let undo = affine_map(vars.clone(), &identity_matrix(n), &shift);
            Ok(Some(compose(g0, &undo)?))
        } else {
            Ok(None)
        }
    };
    if nonlinear.components.iter().all(MultiPoly::is_zero) {
        if let Some(inv) = finish(&g)? {
            return Ok(inv);
        }
    }
    for deg in 2..=cap + 1 {
        let ng = compose_truncated(&nonlinear, &g, deg)?;
        let rhs = PolyMap {
            components: id
                .components
                .iter()
                .zip(&ng.components)
                .map(|(x, y)| x.sub(y))
                .collect(),
        };
        let next = compose_truncated(&a_inv_map, &rhs, deg)?;
        let stalled = next.degree().unwrap_or(0) < deg;
        g = next;
        if stalled || deg > cap {
            if let Some(inv) = finish(&g)? {
                return Ok(inv);
            }
            if deg > cap {
                break;
            }
        }
    }
    Err(AlgebraError::CapExceeded { cap: cap as usize })
}

fn identity_matrix<C: Ring>(n: usize) -> Vec<Vec<C>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { C::one() } else { C::zero() }).collect())
        .collect()
}

/// Evaluates the coefficient indeterminate at `at`.
pub fn specialize<V: Indeterminate>(f: &PolyMap<RatFunc<V>>, at: &Rational) -> Result<PolyMap<Rational>> {
    let components = f
        .components
        .iter()
        .enumerate()
        .map(|(i, p)| {
            p.specialize(at).map_err(|m| {
                let monomial = m.render(p.vars());
                if at.is_zero() {
                    AlgebraError::PoleAtZero { component: i + 1, monomial }
                } else {
                    AlgebraError::Pole {
                        at: at.to_string(),
                        component: i + 1,
                        monomial,
                    }
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyMap { components })
}

/// Specialization at `t = 0`, failing on the first coefficient with a pole there.
pub fn specialize_t<V: Indeterminate>(f: &PolyMap<RatFunc<V>>) -> Result<PolyMap<Rational>> {
    specialize(f, &Rational::from_int(0))
}

/// A generator of the tame subgroup.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GeneratorFactor<C: Ring> {
    /// `x ↦ A x + b`
    Affine { matrix: Vec<Vec<C>>, translation: Vec<C> },
    /// `x_i ↦ x_i + P` with `P` free of `x_i`; `index` is zero-based.
    Elementary { index: usize, poly: MultiPoly<C> },
    /// `f_i ∈ R[x_i, …, x_n]` for every i.
    Triangular { components: Vec<MultiPoly<C>> },
}

impl<C: Ring> GeneratorFactor<C> {
    pub fn elementary(index: usize, poly: MultiPoly<C>) -> Result<Self> {
        if index >= poly.nvars() || !poly.is_free_of(index) {
            return Err(AlgebraError::MalformedFactor(format!(
                "elementary polynomial {poly} depends on its own variable"
            )));
        }
        Ok(GeneratorFactor::Elementary { index, poly })
    }

    pub fn triangular(components: Vec<MultiPoly<C>>) -> Result<Self> {
        for (i, f) in components.iter().enumerate() {
            if (0..i).any(|j| !f.is_free_of(j)) {
                return Err(AlgebraError::MalformedFactor(format!(
                    "component {} of a triangular map involves earlier variables",
                    i + 1
                )));
            }
        }
        PolyMap::new(components.clone())?;
        Ok(GeneratorFactor::Triangular { components })
    }

    pub fn affine(matrix: Vec<Vec<C>>, translation: Vec<C>) -> Self {
        GeneratorFactor::Affine { matrix, translation }
    }

    pub fn to_map(&self, vars: &Vars) -> PolyMap<C> {
        match self {
            GeneratorFactor::Affine { matrix, translation } => affine_map(vars.clone(), matrix, translation),
            GeneratorFactor::Elementary { index, poly } => {
                let mut id = PolyMap::identity(vars.clone());
                id.components[*index] = id.components[*index].add(poly);
                id
            }
            GeneratorFactor::Triangular { components } => PolyMap {
                components: components.clone(),
            },
        }
    }

    pub fn is_affine(&self) -> bool {
        match self {
            GeneratorFactor::Affine { .. } => true,
            GeneratorFactor::Elementary { poly, .. } => poly.degree().unwrap_or(0) <= 1,
            GeneratorFactor::Triangular { components } => {
                components.iter().all(|f| f.degree().unwrap_or(0) <= 1)
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let row = |r: &Vec<C>| r.iter().map(Ring::to_json).collect::<Vec<_>>();
        match self {
            GeneratorFactor::Affine { matrix, translation } => json!({
                "kind": "affine",
                "matrix": matrix.iter().map(row).collect::<Vec<_>>(),
                "translation": row(translation),
            }),
            GeneratorFactor::Elementary { index, poly } => json!({
                "kind": "elementary",
                "index": index + 1,
                "poly": poly.to_json(),
            }),
            GeneratorFactor::Triangular { components } => json!({
                "kind": "triangular",
                "components": components.iter().map(MultiPoly::to_json).collect::<Vec<_>>(),
            }),
        }
    }
}

impl<C: Field> GeneratorFactor<C> {
    pub fn inverse(&self, vars: &Vars) -> Result<Self> {
        match self {
            GeneratorFactor::Affine { matrix, translation } => {
                let inv = invert_matrix(matrix).ok_or(AlgebraError::NotInvertibleLinearPart)?;
                let shift = inv
                    .iter()
                    .map(|row| {
                        row.iter()
                            .zip(translation)
                            .fold(C::zero(), |acc, (a, b)| acc.sub(&a.mul(b)))
                    })
                    .collect();
                Ok(GeneratorFactor::Affine {
                    matrix: inv,
                    translation: shift,
                })
            }
            GeneratorFactor::Elementary { index, poly } => Ok(GeneratorFactor::Elementary {
                index: *index,
                poly: poly.neg(),
            }),
            GeneratorFactor::Triangular { components } => {
                let n = components.len();
                let mut images: Vec<MultiPoly<C>> =
                    (0..n).map(|i| MultiPoly::var(vars.clone(), i)).collect();
                let mut inv = images.clone();
                for i in (0..n).rev() {
                    let f = &components[i];
                    let xi = Monomial::var(i);
                    let lead = f.coeff(xi);
                    let rest = f.sub(&MultiPoly::term(vars.clone(), lead.clone(), xi));
                    if !rest.is_free_of(i) || f.degree_in(&[i]) != Some(1) {
                        return Err(AlgebraError::NotInvertibleLinearPart);
                    }
                    let unit = lead.inv().ok_or(AlgebraError::NotInvertibleLinearPart)?;
                    let h = rest.substitute(&images)?;
                    let gi = MultiPoly::var(vars.clone(), i).sub(&h).scale(&unit);
                    inv[i] = gi.clone();
                    images[i] = gi;
                }
                Ok(GeneratorFactor::Triangular { components: inv })
            }
        }
    }
}

/// A composition `factors[0] ∘ factors[1] ∘ …` of tame generators together
/// with the map it represents.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactoredWord<C: Ring> {
    vars: Vars,
    factors: Vec<GeneratorFactor<C>>,
    map: PolyMap<C>,
}

impl<C: Ring> FactoredWord<C> {
    pub fn new(vars: Vars, factors: Vec<GeneratorFactor<C>>) -> Result<Self> {
        let mut map = PolyMap::identity(vars.clone());
        for factor in factors.iter().rev() {
            map = compose(&factor.to_map(&vars), &map)?;
        }
        Ok(FactoredWord { vars, factors, map })
    }

    /// Builds the word and checks that it recomposes to `expected`.
    pub fn certify(vars: Vars, factors: Vec<GeneratorFactor<C>>, expected: &PolyMap<C>) -> Result<Self> {
        let word = Self::new(vars, factors)?;
        if word.map != *expected {
            return Err(AlgebraError::MalformedFactor(
                "word does not recompose to the given map".into(),
            ));
        }
        Ok(word)
    }

    pub fn factors(&self) -> &[GeneratorFactor<C>] {
        &self.factors
    }

    pub fn map(&self) -> &PolyMap<C> {
        &self.map
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.factors.iter().map(GeneratorFactor::to_json).collect())
    }
}

impl<C: Field> FactoredWord<C> {
    /// Factor-wise inverse: reversed order, each generator inverted.
    pub fn inverse(&self) -> Result<Self> {
        let factors = self
            .factors
            .iter()
            .rev()
            .map(|f| f.inverse(&self.vars))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.vars.clone(), factors)
    }
}

/// Inverse preferring the attached word, falling back to jet iteration.
pub fn inverse_with_word<C: Field>(
    f: &PolyMap<C>,
    word: Option<&FactoredWord<C>>,
    degree_cap: Option<u32>,
) -> Result<PolyMap<C>> {
    match word {
        Some(w) if w.map() == f => Ok(w.inverse()?.map),
        _ => inverse(f, degree_cap),
    }
}
