//! Tame families degenerating to wild automorphisms.
//!
//! For `m ≥ 1` the triangular maps
//!
//! ```text
//! F_t = (x, y, z + t^{m+1}(t x² − y^{2m+1}))
//! G_t = (x + Σ_{k=0}^{m} binom(m+1/2, k) t^{k−m−1} y^k z^{2m+1−2k}, y + z²/t, z)
//! ```
//!
//! give `σ_t = G_t⁻¹ ∘ F_t ∘ G_t`, whose coefficients lie in `Q[t]` although
//! the factors have poles at `t = 0`. Its value `σ̃` at `t = 0` is wild. After
//! conjugating by `Ψ_λ = (a x, b y, c z)` the limit shares its last two
//! components with `φ_λ = exp(λδ)` (for `n = 2m + 1`), and a triangular
//! correction `(d x + P(y, z), y, z)` turns it into `φ_λ` exactly.

use std::time::Instant;

use serde_json::{json, Value};

use crate::autmap::{self, FactoredWord, GeneratorFactor, PolyMap};
use crate::coeff::{half_binomial, QLambda, Rational, Ring, TowerGen, TowerScalar, QT};
use crate::error::{AlgebraError, Result};
use crate::lnd::{self, DEFAULT_EXP_CAP};
use crate::multipoly::{vars, Monomial, MultiPoly, Vars};

/// `m`, with `n = 2m + 1` derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegenerationParams {
    pub m: u32,
}

impl DegenerationParams {
    pub fn new(m: u32) -> Self {
        assert!(m >= 1, "m must be positive");
        DegenerationParams { m }
    }

    pub fn n(&self) -> u32 {
        2 * self.m + 1
    }

    pub fn beta(&self) -> Rational {
        half_binomial(self.m, self.m + 1)
    }
}

fn xyz() -> Vars {
    vars(&["x", "y", "z"])
}

/// `P_m(U) = Σ_{k=0}^{m} binom(m+1/2, k) U^k`, the order-m truncation of `(1+U)^{m+1/2}`.
pub fn pm_poly(m: u32) -> MultiPoly<Rational> {
    let u = vars(&["U"]);
    MultiPoly::from_terms(
        u,
        (0..=m).map(|k| (Monomial::from_exponents(&[k]), half_binomial(m, k))),
    )
}

/// The triangular generators of the family.
#[derive(Debug, Clone)]
pub struct Generators {
    pub f_t: PolyMap<QT>,
    pub g_t: PolyMap<QT>,
    pub g_t_inverse: PolyMap<QT>,
    f_factor: GeneratorFactor<QT>,
    g_factor: GeneratorFactor<QT>,
    g_inv_factor: GeneratorFactor<QT>,
}

impl Generators {
    /// The three-factor word `G_t⁻¹ ∘ F_t ∘ G_t`.
    pub fn sigma_word(&self) -> Result<FactoredWord<QT>> {
        FactoredWord::new(
            xyz(),
            vec![
                self.g_inv_factor.clone(),
                self.f_factor.clone(),
                self.g_factor.clone(),
            ],
        )
    }
}

pub fn build_generators(params: DegenerationParams) -> Result<Generators> {
    let m = params.m;
    let v = xyz();
    let x = MultiPoly::<QT>::var(v.clone(), 0);
    let y = MultiPoly::<QT>::var(v.clone(), 1);
    let z = MultiPoly::<QT>::var(v.clone(), 2);
    let t = |k: i64| QT::monomial(Rational::from_int(1), k);
    let mi = i64::from(m);

    // z^{2m+1}/t^{m+1} · P_m(ty/z²), expanded
    let mut shift = MultiPoly::zero(v.clone());
    for k in 0..=m {
        let c = QT::from_rational(&half_binomial(m, k)).mul(&t(i64::from(k) - mi - 1));
        shift = shift.add(&y.pow(k).mul(&z.pow(2 * m + 1 - 2 * k)).scale(&c));
    }
    // z^{2m+1}/t^{m+1} · P_m((ty − z²)/z²) = t^{−m−1} Σ_k binom(m+1/2, k) (ty − z²)^k z^{2m+1−2k}
    let ty_minus_z2 = y.scale(&t(1)).sub(&z.pow(2));
    let mut inv_shift = MultiPoly::zero(v.clone());
    for k in 0..=m {
        let c = QT::from_rational(&half_binomial(m, k));
        inv_shift = inv_shift.add(&ty_minus_z2.pow(k).mul(&z.pow(2 * m + 1 - 2 * k)).scale(&c));
    }
    let inv_shift = inv_shift.scale(&t(-mi - 1));
    let z2_over_t = z.pow(2).scale(&t(-1));

    let g_factor = GeneratorFactor::triangular(vec![x.add(&shift), y.add(&z2_over_t), z.clone()])?;
    let g_inv_factor =
        GeneratorFactor::triangular(vec![x.sub(&inv_shift), y.sub(&z2_over_t), z.clone()])?;
    let f_poly = x
        .pow(2)
        .scale(&t(1))
        .sub(&y.pow(2 * m + 1))
        .scale(&t(mi + 1));
    let f_factor = GeneratorFactor::elementary(2, f_poly)?;

    let g_t = g_factor.to_map(&v);
    let g_t_inverse = g_inv_factor.to_map(&v);
    let f_t = f_factor.to_map(&v);
    if !autmap::compose(&g_t, &g_t_inverse)?.is_identity() {
        return Err(AlgebraError::MalformedFactor("G_t ∘ G_t⁻¹ is not the identity".into()));
    }
    Ok(Generators {
        f_t,
        g_t,
        g_t_inverse,
        f_factor,
        g_factor,
        g_inv_factor,
    })
}

/// `σ_t` together with its defining word.
#[derive(Debug, Clone)]
pub struct Sigma {
    pub params: DegenerationParams,
    pub word: FactoredWord<QT>,
}

impl Sigma {
    pub fn map(&self) -> &PolyMap<QT> {
        self.word.map()
    }

    /// `σ̃ = σ_t |_{t=0}`.
    pub fn limit(&self) -> Result<PolyMap<Rational>> {
        autmap::specialize_t(self.map())
    }

    /// `σ_t⁻¹ = G_t⁻¹ ∘ F_t⁻¹ ∘ G_t`, from the word.
    pub fn inverse(&self) -> Result<PolyMap<QT>> {
        Ok(self.word.inverse()?.map().clone())
    }
}

/// First coefficient that is not a polynomial in t, if any.
pub fn non_polynomial_coefficient(f: &PolyMap<QT>) -> Option<(usize, String)> {
    f.components().iter().enumerate().find_map(|(i, p)| {
        p.terms()
            .iter()
            .find(|(_, c)| !c.is_polynomial())
            .map(|(m, _)| (i + 1, m.render(p.vars())))
    })
}

/// `σ_t` without the polynomiality certificate.
pub fn build_sigma_unchecked(params: DegenerationParams) -> Result<Sigma> {
    let gens = build_generators(params)?;
    Ok(Sigma {
        params,
        word: gens.sigma_word()?,
    })
}

/// `σ_t = G_t⁻¹ ∘ F_t ∘ G_t`, certified to have all coefficients in `Q[t]`.
pub fn build_sigma(params: DegenerationParams) -> Result<Sigma> {
    let sigma = build_sigma_unchecked(params)?;
    if let Some((component, monomial)) = non_polynomial_coefficient(sigma.map()) {
        return Err(AlgebraError::NotPolynomialInT { component, monomial });
    }
    Ok(sigma)
}

/// `y − 4 z^{2m+1}(x z − binom(m+1/2, m+1) y^{m+1})`.
pub fn expected_limit_y(params: DegenerationParams) -> MultiPoly<Rational> {
    let v = xyz();
    let x = MultiPoly::<Rational>::var(v.clone(), 0);
    let y = MultiPoly::<Rational>::var(v.clone(), 1);
    let z = MultiPoly::<Rational>::var(v, 2);
    let inner = x.mul(&z).sub(&y.pow(params.m + 1).scale(&params.beta()));
    y.sub(&z.pow(params.n()).mul(&inner).scale(&Rational::from_int(4)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assertion {
    pub id: &'static str,
    pub pass: bool,
    pub witness: Option<String>,
}

impl Assertion {
    fn new(id: &'static str, witness: Option<String>) -> Self {
        Assertion {
            id,
            pass: witness.is_none(),
            witness,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub m: u32,
    pub assertions: Vec<Assertion>,
    pub elapsed_ms: u128,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "assertions": self.assertions.iter().map(|a| json!({
                "id": a.id,
                "pass": a.pass,
                "witness": a.witness,
            })).collect::<Vec<_>>(),
            "elapsed_ms": self.elapsed_ms as u64,
        })
    }
}

/// `(P_m(U)², (1+U)^{2m+1})` as polynomials in U.
fn pm_square_and_binomial(m: u32) -> (MultiPoly<Rational>, MultiPoly<Rational>) {
    let p = pm_poly(m);
    let u = p.vars().clone();
    let one_plus_u = MultiPoly::one(u.clone()).add(&MultiPoly::var(u, 0));
    (p.pow(2), one_plus_u.pow(2 * m + 1))
}

/// `P_m(U)² ≡ (1+U)^{2m+1} mod U^{m+1}`; `None` when it holds.
pub fn check_pm_congruence(m: u32) -> Option<String> {
    let (sq, bin) = pm_square_and_binomial(m);
    sq.truncate(m).first_difference(&bin.truncate(m))
}

/// `P_m(U)² ≡ (1+U)^{2m+1} − 2 binom(m+1/2, m+1) U^{m+1} mod U^{m+2}`.
pub fn check_pm_refined_congruence(m: u32) -> Option<String> {
    let (sq, bin) = pm_square_and_binomial(m);
    let u = sq.vars().clone();
    let correction = MultiPoly::term(
        u,
        half_binomial(m, m + 1).scale(&Rational::from_int(2)),
        Monomial::from_exponents(&[m + 1]),
    );
    sq.truncate(m + 1)
        .first_difference(&bin.sub(&correction).truncate(m + 1))
}

/// Runs the six exact checks for the given `m`.
pub fn verify_assertions(params: DegenerationParams) -> VerificationReport {
    let start = Instant::now();
    let m = params.m;
    let mut assertions = Vec::with_capacity(6);
    let err = |e: AlgebraError| Some(e.to_string());

    let sigma = build_sigma_unchecked(params);
    let limit = match &sigma {
        Ok(s) => {
            let w = non_polynomial_coefficient(s.map())
                .map(|(c, mono)| format!("component {c}, monomial {mono}"));
            assertions.push(Assertion::new("polynomial-in-t", w));
            s.limit()
        }
        Err(e) => {
            assertions.push(Assertion::new("polynomial-in-t", err(e.clone())));
            Err(e.clone())
        }
    };
    let z = MultiPoly::<Rational>::var(xyz(), 2);
    match &limit {
        Ok(l) => {
            assertions.push(Assertion::new("z-mod-t", l.component(2).first_difference(&z)));
            assertions.push(Assertion::new(
                "y-mod-t",
                l.component(1).first_difference(&expected_limit_y(params)),
            ));
        }
        Err(e) => {
            assertions.push(Assertion::new("z-mod-t", err(e.clone())));
            assertions.push(Assertion::new("y-mod-t", err(e.clone())));
        }
    }
    assertions.push(Assertion::new("pm-congruence", check_pm_congruence(m)));
    assertions.push(Assertion::new("pm-refined-congruence", check_pm_refined_congruence(m)));
    let limit_check = match &limit {
        Ok(l) => {
            if let Some(w) = l.component(2).first_difference(&z) {
                Some(format!("limit moves z: {w}"))
            } else {
                match autmap::inverse(l, None) {
                    Ok(inv) => match autmap::compose(l, &inv) {
                        Ok(id) if id.is_identity() => None,
                        Ok(_) => Some("recomposition is not the identity".into()),
                        Err(e) => err(e),
                    },
                    Err(e) => err(e),
                }
            }
        }
        Err(e) => err(e.clone()),
    };
    assertions.push(Assertion::new("limit-automorphism", limit_check));
    VerificationReport {
        m,
        assertions,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// Polynomial map of `A^4_{x,y,z,t}` fixing t, from a map over `Q(t)` whose
/// coefficients are polynomial in t.
fn extend_by_t(f: &PolyMap<QT>) -> Result<PolyMap<Rational>> {
    let mut components = Vec::with_capacity(4);
    for (i, p) in f.components().iter().enumerate() {
        let q = p.expand_indeterminate().ok_or_else(|| {
            let (component, monomial) = non_polynomial_coefficient(f).unwrap_or((i + 1, String::new()));
            AlgebraError::NotPolynomialInT { component, monomial }
        })?;
        components.push(q);
    }
    let ring = components[0].vars().clone();
    components.push(MultiPoly::var(ring, 3));
    PolyMap::new(components)
}

/// `Ψ_λ = (a x, b y, c z)` and its inverse over the tower, on the first three
/// variables of `ring` (any further variables are fixed).
fn psi_pair<const M: usize>(ring: &Vars) -> (PolyMap<TowerScalar<M>>, PolyMap<TowerScalar<M>>) {
    let a = TowerScalar::<M>::gen(TowerGen::A);
    let b = TowerScalar::<M>::gen(TowerGen::B);
    let c = TowerScalar::<M>::gen(TowerGen::C);
    let a_inv = c.clone();
    let b_inv = TowerScalar::<M>::unit_inverse(TowerGen::B);
    let c_inv = a.clone();
    let diag = |scales: [TowerScalar<M>; 3]| {
        let comps = (0..ring.len())
            .map(|i| {
                let x = MultiPoly::var(ring.clone(), i);
                if i < 3 {
                    x.scale(&scales[i])
                } else {
                    x
                }
            })
            .collect();
        PolyMap::new(comps).expect("diagonal map")
    };
    (diag([a, b, c]), diag([a_inv, b_inv, c_inv]))
}

/// `Ψ⁻¹ ∘ f ∘ Ψ` over the tower.
fn conjugate<const M: usize>(f: &PolyMap<Rational>) -> Result<PolyMap<TowerScalar<M>>> {
    let (psi, psi_inv) = psi_pair::<M>(f.vars());
    let lifted: PolyMap<TowerScalar<M>> = f.lift();
    autmap::compose(&psi_inv, &autmap::compose(&lifted, &psi)?)
}

/// `y + λ (x z + y^{m+1}) z^{2m+1}` over the tower.
fn expected_alpha_y<const M: usize>() -> MultiPoly<TowerScalar<M>> {
    let m = M as u32;
    let v = xyz();
    let x = MultiPoly::<TowerScalar<M>>::var(v.clone(), 0);
    let y = MultiPoly::<TowerScalar<M>>::var(v.clone(), 1);
    let z = MultiPoly::<TowerScalar<M>>::var(v, 2);
    let inner = x.mul(&z).add(&y.pow(m + 1));
    y.add(&inner.mul(&z.pow(2 * m + 1)).scale(&TowerScalar::lambda()))
}

/// `α_t = Ψ⁻¹ ∘ σ_t ∘ Ψ` on `(x, y, z, t)` and its limit `α` on `(x, y, z)`.
#[derive(Debug, Clone)]
pub struct Alpha<const M: usize> {
    pub sigma: Sigma,
    pub alpha_t: PolyMap<TowerScalar<M>>,
    pub alpha: PolyMap<TowerScalar<M>>,
}

fn first_non_base<const M: usize>(p: &MultiPoly<TowerScalar<M>>) -> Option<String> {
    p.terms()
        .iter()
        .find(|(_, c)| c.as_base().is_none())
        .map(|(m, _)| m.render(p.vars()))
}

fn at_t_zero<const M: usize>(f: &PolyMap<TowerScalar<M>>) -> Result<PolyMap<TowerScalar<M>>> {
    PolyMap::new(
        f.components()[..3]
            .iter()
            .map(|p| p.eliminate_at_zero(3))
            .collect(),
    )
}

pub fn build_alpha<const M: usize>() -> Result<Alpha<M>> {
    let params = DegenerationParams::new(M as u32);
    let sigma = build_sigma(params)?;
    let sigma4 = extend_by_t(sigma.map())?;
    let alpha_t = conjugate::<M>(&sigma4)?;
    let alpha = at_t_zero(&alpha_t)?;
    for i in [1, 2] {
        if let Some(monomial) = first_non_base(alpha.component(i)) {
            return Err(AlgebraError::ResidualTowerGenerators {
                component: i + 1,
                monomial,
            });
        }
    }
    let expected = [
        expected_alpha_y::<M>(),
        MultiPoly::var(xyz(), 2),
    ];
    for (i, e) in [1, 2].into_iter().zip(expected) {
        if let Some(w) = alpha.component(i).first_difference(&e) {
            return Err(AlgebraError::ShapeViolation(format!(
                "component {} of alpha differs from exp(λδ) at {w}",
                i + 1
            )));
        }
    }
    Ok(Alpha {
        sigma,
        alpha_t,
        alpha,
    })
}

/// The triangular correction `f = (d x + P(y, z), y, z)`.
#[derive(Debug, Clone)]
pub struct CorrectionMap<const M: usize> {
    pub d: TowerScalar<M>,
    pub p: MultiPoly<TowerScalar<M>>,
}

impl<const M: usize> CorrectionMap<M> {
    pub fn to_map(&self) -> PolyMap<TowerScalar<M>> {
        let v = self.p.vars().clone();
        let x = MultiPoly::var(v.clone(), 0);
        PolyMap::new(vec![
            x.scale(&self.d).add(&self.p),
            MultiPoly::var(v.clone(), 1),
            MultiPoly::var(v, 2),
        ])
        .expect("triangular map")
    }

    /// True when every coefficient of `P` lies in `Q(λ)`.
    pub fn p_is_lambda_rational(&self) -> bool {
        first_non_base(&self.p).is_none()
    }
}

/// `φ_λ = exp(λδ)` for `δ = make_delta(m, 2m+1)` with symbolic λ.
pub fn phi_lambda(params: DegenerationParams) -> Result<PolyMap<QLambda>> {
    let delta = lnd::make_delta::<QLambda>(params.m, params.n());
    lnd::exp_lnd(&delta, &QLambda::var(), DEFAULT_EXP_CAP)
}

/// Outcome of the correction step: `f`, and the check `f ∘ α = φ_λ`.
#[derive(Debug, Clone)]
pub struct CorrectionOutcome<const M: usize> {
    pub correction: CorrectionMap<M>,
    pub phi: PolyMap<TowerScalar<M>>,
    pub recomposes: bool,
}

/// Computes `g = φ_λ ∘ α⁻¹` (with `α⁻¹ = Ψ⁻¹ ∘ σ̃⁻¹ ∘ Ψ`, `σ̃⁻¹` the t = 0 value of
/// the word inverse of `σ_t`), reads off `(d, P)` and checks `f ∘ α = φ_λ`.
pub fn correction_map<const M: usize>(alpha: &Alpha<M>) -> Result<CorrectionOutcome<M>> {
    let params = alpha.sigma.params;
    let sigma_inv_t = alpha.sigma.inverse()?;
    if let Some((component, monomial)) = non_polynomial_coefficient(&sigma_inv_t) {
        return Err(AlgebraError::NotPolynomialInT { component, monomial });
    }
    let sigma_inv = autmap::specialize_t(&sigma_inv_t)?;
    let alpha_inv = conjugate::<M>(&sigma_inv)?;
    let phi: PolyMap<TowerScalar<M>> = phi_lambda(params)?.map_coeffs(|c| TowerScalar::from_base(c.clone()));
    let g = autmap::compose(&phi, &alpha_inv)?;

    let v = g.vars().clone();
    for i in [1, 2] {
        if let Some(w) = g.component(i).first_difference(&MultiPoly::var(v.clone(), i)) {
            return Err(AlgebraError::ShapeViolation(format!("component {} differs at {w}", i + 1)));
        }
    }
    let g1 = g.component(0);
    let x = Monomial::var(0);
    let d = g1.coeff(x);
    if d.is_zero() {
        return Err(AlgebraError::ShapeViolation("no linear x term".into()));
    }
    let p = g1.sub(&MultiPoly::term(v.clone(), d.clone(), x));
    if !p.is_free_of(0) {
        return Err(AlgebraError::ShapeViolation(format!(
            "first component involves x beyond the linear term: {}",
            p.terms()
                .iter()
                .rev()
                .find(|(m, _)| m.exp(0) > 0)
                .map(|(m, _)| m.render(&v))
                .unwrap_or_default()
        )));
    }
    if d.as_base().is_none() {
        return Err(AlgebraError::ResidualTowerGenerators {
            component: 1,
            monomial: "x".into(),
        });
    }
    let correction = CorrectionMap { d, p };
    let recomposes = autmap::compose(&correction.to_map(), &alpha.alpha)? == phi;
    Ok(CorrectionOutcome {
        correction,
        phi,
        recomposes,
    })
}

/// The family `t ↦ exp(tδ) ∘ σ` of a tame map `σ`.
#[derive(Debug, Clone)]
pub struct DenseFamily {
    pub family: PolyMap<QT>,
    pub limit: PolyMap<Rational>,
    pub limit_matches: bool,
}

impl DenseFamily {
    pub fn member_at(&self, t: &Rational) -> Result<PolyMap<Rational>> {
        autmap::specialize(&self.family, t)
    }
}

/// Builds `exp(tδ) ∘ σ` for `δ = make_delta(m, n)` and checks that its value
/// at `t = 0` is `σ`.
pub fn wild_dense_family(sigma: &FactoredWord<Rational>, m: u32, n: u32) -> Result<DenseFamily> {
    let delta = lnd::make_delta::<QT>(m, n);
    let phi_t = lnd::exp_lnd(&delta, &QT::var(), DEFAULT_EXP_CAP)?;
    let family = autmap::compose(&phi_t, &sigma.map().lift())?;
    let limit = autmap::specialize_t(&family)?;
    let limit_matches = limit == *sigma.map();
    Ok(DenseFamily {
        family,
        limit,
        limit_matches,
    })
}
