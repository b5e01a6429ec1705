//! Plane automorphisms: Jung–van der Kulk factorization, length, and the
//! tameness test for automorphisms of `A²` over `Q[z]`.
//!
//! An automorphism `(f₁, f₂)` over a field K reduces to an affine map by
//! repeatedly subtracting `c·lo^r` from the component of higher degree. Over
//! `K = Q(z)` the reduced word is unique up to `Aff₂ ∩ B₂`, so `(f₁, f₂)` is
//! tame over `Q[z]` exactly when every `c` produced along the way lies in `Q[z]`.

use serde_json::{json, Value};

use crate::autmap::{FactoredWord, GeneratorFactor, PolyMap};
use crate::coeff::{Field, Indeterminate, RatFunc, Rational, Ring, VarZ, QZ};
use crate::error::{AlgebraError, Result};
use crate::multipoly::{vars, Monomial, MultiPoly, Vars};

/// `(f₁, f₂)` in the variables x, y.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneMap<K: Ring> {
    map: PolyMap<K>,
}

impl<K: Ring> PlaneMap<K> {
    pub fn new(f1: MultiPoly<K>, f2: MultiPoly<K>) -> Result<Self> {
        Self::from_map(PolyMap::new(vec![f1, f2])?)
    }

    pub fn from_map(map: PolyMap<K>) -> Result<Self> {
        if map.dim() != 2 {
            return Err(AlgebraError::MixedContext(format!(
                "plane map needs two variables, got {}",
                map.dim()
            )));
        }
        Ok(PlaneMap { map })
    }

    pub fn map(&self) -> &PolyMap<K> {
        &self.map
    }

    pub fn vars(&self) -> &Vars {
        self.map.vars()
    }

    pub fn component(&self, i: usize) -> &MultiPoly<K> {
        self.map.component(i)
    }
}

impl PlaneMap<QZ> {
    /// `(f₁, f₂)` given in `Q[x, y, z]`, with z moved into the coefficients.
    pub fn from_xyz(f1: &MultiPoly<Rational>, f2: &MultiPoly<Rational>) -> Result<Self> {
        let z = f1
            .vars()
            .iter()
            .position(|v| v == "z")
            .ok_or_else(|| AlgebraError::MixedContext("no variable z".into()))?;
        if !f1.same_context(f2) || f1.nvars() != 3 {
            return Err(AlgebraError::MixedContext("expected two polynomials in x, y, z".into()));
        }
        Self::new(f1.absorb_var::<VarZ>(z), f2.absorb_var::<VarZ>(z))
    }
}

/// Scalars over which [`vdk_reduce`] runs. For `Q(z)` the linear steps
/// between components of equal degree use Euclidean quotients in `Q[z]`, so a
/// map with coefficients in `Q[z]` that is tame over `Q[z]` is reduced by
/// elementaries over `Q[z]` only.
pub trait ReductionScalar: Field {
    /// `self / by`, or its polynomial quotient when both lie in a polynomial ring.
    fn quotient(&self, by: &Self) -> Self;
    /// Euclidean size used to choose which of two equal-degree components to reduce.
    fn size(&self) -> usize;
}

impl ReductionScalar for Rational {
    fn quotient(&self, by: &Self) -> Self {
        self.div(by).expect("nonzero divisor")
    }

    fn size(&self) -> usize {
        0
    }
}

impl<V: Indeterminate> ReductionScalar for RatFunc<V> {
    fn quotient(&self, by: &Self) -> Self {
        if self.is_polynomial() && by.is_polynomial() {
            RatFunc::from_poly(self.numer().div_rem(by.numer()).0)
        } else {
            self.div(by).expect("nonzero divisor")
        }
    }

    fn size(&self) -> usize {
        if self.is_polynomial() {
            self.numer().degree().unwrap_or(0)
        } else {
            0
        }
    }
}

/// One subtraction `hi ← hi − c·lo^r`, or the terminal affine map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep<K: Ring> {
    pub c: K,
    pub degs: [u32; 2],
}

/// The factor word of [`vdk_factor`] together with the data of each step.
#[derive(Debug, Clone)]
pub struct Reduction<K: Ring> {
    pub word: FactoredWord<K>,
    pub steps: Vec<ReductionStep<K>>,
}

fn nonconstant_degree<K: Ring>(p: &MultiPoly<K>, which: usize) -> Result<u32> {
    match p.degree() {
        Some(d) if d > 0 => Ok(d),
        _ => Err(AlgebraError::NotPlaneAutomorphism(format!(
            "component {} became constant",
            which + 1
        ))),
    }
}

/// Factors a plane automorphism as `e₁ ∘ e₂ ∘ … ∘ e_k ∘ a`, elementaries
/// followed by one affine map, with the recomposition checked.
pub fn vdk_factor<K: ReductionScalar>(f: &PlaneMap<K>) -> Result<FactoredWord<K>> {
    Ok(vdk_reduce(f)?.word)
}

pub fn vdk_reduce<K: ReductionScalar>(f: &PlaneMap<K>) -> Result<Reduction<K>> {
    let v = f.vars().clone();
    let mut cur = [f.component(0).clone(), f.component(1).clone()];
    let mut factors = Vec::new();
    let mut steps = Vec::new();
    // powers of cur[lo], valid while that component is unchanged
    let mut cache: Option<(usize, Vec<MultiPoly<K>>)> = None;
    loop {
        let degs = [
            nonconstant_degree(&cur[0], 0)?,
            nonconstant_degree(&cur[1], 1)?,
        ];
        if degs[0] <= 1 && degs[1] <= 1 {
            let (matrix, translation) = affine_parts(&cur);
            let det = matrix[0][0].mul(&matrix[1][1]).sub(&matrix[0][1].mul(&matrix[1][0]));
            if det.is_zero() {
                return Err(AlgebraError::NotPlaneAutomorphism("singular linear part".into()));
            }
            steps.push(ReductionStep { c: det, degs });
            factors.push(GeneratorFactor::affine(matrix, translation));
            break;
        }
        let lead = |p: &MultiPoly<K>| p.leading_term().map(|(_, c)| c.clone()).expect("nonzero");
        let (hi, lo) = if degs[0] == degs[1] {
            if lead(&cur[0]).size() >= lead(&cur[1]).size() {
                (0, 1)
            } else {
                (1, 0)
            }
        } else if degs[0] > degs[1] {
            (0, 1)
        } else {
            (1, 0)
        };
        if degs[hi] % degs[lo] != 0 {
            return Err(AlgebraError::NotPlaneAutomorphism(format!(
                "degree {} is not a multiple of {}",
                degs[hi], degs[lo]
            )));
        }
        let r = (degs[hi] / degs[lo]) as usize;
        if cache.as_ref().map(|(i, _)| *i) != Some(lo) {
            cache = Some((lo, vec![MultiPoly::one(v.clone()), cur[lo].clone()]));
        }
        let powers = &mut cache.as_mut().expect("set above").1;
        while powers.len() <= r {
            let next = powers.last().expect("nonempty").mul(&cur[lo]);
            powers.push(next);
        }
        let lo_pow = &powers[r];
        let ratio = lead(&cur[hi])
            .div(&lead(lo_pow))
            .expect("leading coefficient is nonzero");
        let lf_hi = cur[hi].leading_form(&[0, 1])?;
        if lf_hi != lo_pow.leading_form(&[0, 1])?.scale(&ratio) {
            return Err(AlgebraError::NotPlaneAutomorphism(format!(
                "leading forms of degree {} and {} are not proportional",
                degs[hi], degs[lo]
            )));
        }
        let c = if r == 1 {
            lead(&cur[hi]).quotient(&lead(lo_pow))
        } else {
            ratio
        };
        let reduced = cur[hi].sub(&lo_pow.scale(&c));
        let elem = MultiPoly::var(v.clone(), lo).pow(r as u32).scale(&c);
        factors.push(GeneratorFactor::elementary(hi, elem)?);
        steps.push(ReductionStep { c, degs });
        cur[hi] = reduced;
        if cache.as_ref().map(|(i, _)| *i) == Some(hi) {
            cache = None;
        }
    }
    let word = FactoredWord::certify(v, factors, f.map())?;
    Ok(Reduction { word, steps })
}

fn affine_parts<K: Ring>(cur: &[MultiPoly<K>; 2]) -> (Vec<Vec<K>>, Vec<K>) {
    let matrix = cur
        .iter()
        .map(|p| vec![p.coeff(Monomial::var(0)), p.coeff(Monomial::var(1))])
        .collect();
    let translation = cur.iter().map(|p| p.constant_term()).collect();
    (matrix, translation)
}

/// Minimal number of triangular factors: the number of maximal blocks of
/// non-affine elementaries of one orientation in the reduced word, where an
/// affine factor continues a block only if it preserves that orientation.
pub fn length<K: ReductionScalar>(f: &PlaneMap<K>) -> Result<usize> {
    Ok(word_length(&vdk_factor(f)?))
}

pub fn word_length<K: Ring>(word: &FactoredWord<K>) -> usize {
    let mut count = 0;
    let mut block: Option<usize> = None;
    for factor in word.factors() {
        match factor {
            GeneratorFactor::Elementary { index, .. } if !factor.is_affine() => {
                if block != Some(*index) {
                    count += 1;
                    block = Some(*index);
                }
            }
            _ => {
                if let Some(i) = block {
                    if !preserves_orientation(factor, i, word.vars()) {
                        block = None;
                    }
                }
            }
        }
    }
    count
}

/// Whether an affine factor lies in the triangular group whose elementaries
/// move variable `i`, i.e. the other variable is mapped into itself.
fn preserves_orientation<K: Ring>(factor: &GeneratorFactor<K>, i: usize, v: &Vars) -> bool {
    let other = 1 - i;
    factor.to_map(v).component(other).is_free_of(i)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WildCertificate {
    /// One-based index of the reduction step.
    pub step: usize,
    pub c: QZ,
    pub degs: [u32; 2],
}

#[derive(Debug, Clone)]
pub enum TamenessVerdict {
    Tame(FactoredWord<QZ>),
    Wild(WildCertificate),
}

impl TamenessVerdict {
    pub fn is_tame(&self) -> bool {
        matches!(self, TamenessVerdict::Tame(_))
    }

    pub fn outcome(&self) -> &'static str {
        match self {
            TamenessVerdict::Tame(_) => "tame",
            TamenessVerdict::Wild(_) => "wild",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            TamenessVerdict::Tame(word) => json!({
                "outcome": "tame",
                "word": word.factors().iter().map(GeneratorFactor::to_json).collect::<Vec<_>>(),
            }),
            TamenessVerdict::Wild(cert) => json!({
                "outcome": "wild",
                "certificate": {
                    "step": cert.step,
                    "c": cert.c.to_json(),
                    "degs": cert.degs,
                },
            }),
        }
    }
}

/// Decides whether `(f₁, f₂) ∈ GA₂(Q[z])` lies in `TA₂(Q[z])`.
///
/// The Jacobian determinant of the input equals that of the terminal affine
/// factor, so the requirement that it be a nonzero rational is checked there.
pub fn tame_check_over_kz(f: &PlaneMap<QZ>) -> Result<TamenessVerdict> {
    for (i, p) in f.map().components().iter().enumerate() {
        if let Some((m, c)) = p.terms().iter().find(|(_, c)| !c.is_polynomial()) {
            return Err(AlgebraError::NotIntegralInput(format!(
                "component {} has coefficient {c} at {}",
                i + 1,
                m.render(p.vars())
            )));
        }
    }
    let reduction = vdk_reduce(f)?;
    let (affine_step, elementary_steps) = reduction.steps.split_last().expect("affine step");
    for (k, step) in elementary_steps.iter().enumerate() {
        if !step.c.is_polynomial() {
            return Ok(TamenessVerdict::Wild(WildCertificate {
                step: k + 1,
                c: step.c.clone(),
                degs: step.degs,
            }));
        }
    }
    if let Some(GeneratorFactor::Affine { matrix, translation }) = reduction.word.factors().last() {
        if let Some(c) = matrix
            .iter()
            .flatten()
            .chain(translation)
            .find(|c| !c.is_polynomial())
        {
            return Ok(TamenessVerdict::Wild(WildCertificate {
                step: reduction.steps.len(),
                c: c.clone(),
                degs: affine_step.degs,
            }));
        }
    }
    if affine_step.c.as_rational().is_none_or(|d| d.is_zero()) {
        return Err(AlgebraError::NotPlaneAutomorphism(format!(
            "linear part has determinant {}",
            affine_step.c
        )));
    }
    Ok(TamenessVerdict::Tame(reduction.word))
}

/// Nagata's pair `(x − 2yΔ − zΔ², y + zΔ)`, `Δ = xz + y²`, over `Q[z]`.
pub fn nagata_pair() -> PlaneMap<QZ> {
    let v = vars(&["x", "y"]);
    let x = MultiPoly::<QZ>::var(v.clone(), 0);
    let y = MultiPoly::<QZ>::var(v, 1);
    let z = QZ::var();
    let delta = x.scale(&z).add(&y.pow(2));
    let f1 = x
        .sub(&y.mul(&delta).scale(&QZ::from_int(2)))
        .sub(&delta.pow(2).scale(&z));
    let f2 = y.add(&delta.scale(&z));
    PlaneMap::new(f1, f2).expect("same ring")
}
