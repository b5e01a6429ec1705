//! Derivations of polynomial rings and the exponentials of locally nilpotent ones.

use crate::autmap::PolyMap;
use crate::coeff::{Rational, Ring};
use crate::error::{AlgebraError, Result};
use crate::multipoly::{vars, MultiPoly, Vars};

pub const DEFAULT_EXP_CAP: usize = 64;

/// A derivation given by the images of the variables, extended by Leibniz.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Derivation<C: Ring> {
    images: Vec<MultiPoly<C>>,
}

impl<C: Ring> Derivation<C> {
    pub fn new(images: Vec<MultiPoly<C>>) -> Result<Self> {
        let first = images
            .first()
            .ok_or_else(|| AlgebraError::MixedContext("empty derivation".into()))?;
        if first.nvars() != images.len() || images.iter().any(|p| !p.same_context(first)) {
            return Err(AlgebraError::MixedContext(
                "derivation images must share the ambient ring".into(),
            ));
        }
        Ok(Derivation { images })
    }

    pub fn vars(&self) -> &Vars {
        self.images[0].vars()
    }

    pub fn image(&self, i: usize) -> &MultiPoly<C> {
        &self.images[i]
    }

    /// `δ(p) = Σ ∂p/∂x_i · δ(x_i)`.
    pub fn apply(&self, p: &MultiPoly<C>) -> Result<MultiPoly<C>> {
        if !p.same_context(&self.images[0]) {
            return Err(AlgebraError::MixedContext(format!(
                "derivation over {:?} applied to polynomial over {:?}",
                self.vars(),
                p.vars()
            )));
        }
        let mut acc = MultiPoly::zero(self.vars().clone());
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() || p.is_free_of(i) {
                continue;
            }
            acc = acc.add(&p.derivative(i).mul(img));
        }
        Ok(acc)
    }
}

/// `Δ = z x + y^{m+1}` in a ring whose first three variables are x, y, z.
pub fn delta_kernel_element<C: Ring>(m: u32, ring: &Vars) -> MultiPoly<C> {
    let x = MultiPoly::<C>::var(ring.clone(), 0);
    let y = MultiPoly::<C>::var(ring.clone(), 1);
    let z = MultiPoly::<C>::var(ring.clone(), 2);
    z.mul(&x).add(&y.pow(m + 1))
}

/// `δ = Δ (z^n ∂/∂y − (m+1) y^m z^{n−1} ∂/∂x)` on `Q[x, y, z]`.
pub fn make_delta<C: Ring>(m: u32, n: u32) -> Derivation<C> {
    make_delta_in(m, n, &vars(&["x", "y", "z"]))
}

/// [`make_delta`] on a ring whose first three variables are x, y, z; any further
/// variables are constants of the derivation.
pub fn make_delta_in<C: Ring>(m: u32, n: u32, ring: &Vars) -> Derivation<C> {
    assert!(m >= 1 && n >= 1, "make_delta requires m, n >= 1");
    assert!(ring.len() >= 3, "ring must contain x, y, z");
    let delta = delta_kernel_element::<C>(m, ring);
    let y = MultiPoly::<C>::var(ring.clone(), 1);
    let z = MultiPoly::<C>::var(ring.clone(), 2);
    let dx = y
        .pow(m)
        .mul(&z.pow(n - 1))
        .mul(&delta)
        .scale(&C::from_int(-(i64::from(m) + 1)));
    let dy = z.pow(n).mul(&delta);
    let mut images = vec![dx, dy];
    images.extend((2..ring.len()).map(|_| MultiPoly::zero(ring.clone())));
    Derivation { images }
}

/// `exp(λδ)` for a scalar `λ`.
pub fn exp_lnd<C: Ring>(delta: &Derivation<C>, lambda: &C, cap: usize) -> Result<PolyMap<C>> {
    let scale = MultiPoly::constant(delta.vars().clone(), lambda.clone());
    exp_lnd_scaled(delta, &scale, cap)
}

/// `exp(λδ)` where `λ` is any ring element killed by `δ` (for instance
/// another variable of the ring), so `λδ` is again locally nilpotent.
///
/// Component i is `Σ_j λ^j δ^j(x_i) / j!`, stopping when `δ^j(x_i)` vanishes.
pub fn exp_lnd_scaled<C: Ring>(
    delta: &Derivation<C>,
    lambda: &MultiPoly<C>,
    cap: usize,
) -> Result<PolyMap<C>> {
    if !delta.apply(lambda)?.is_zero() {
        return Err(AlgebraError::ScaleNotConstant);
    }
    let ring = delta.vars().clone();
    let components = (0..ring.len())
        .map(|i| {
            let mut term = MultiPoly::<C>::var(ring.clone(), i);
            let mut acc = term.clone();
            let mut lambda_pow = MultiPoly::one(ring.clone());
            let mut factorial = Rational::from_int(1);
            for j in 1.. {
                term = delta.apply(&term)?;
                if term.is_zero() {
                    break;
                }
                if j > cap {
                    return Err(AlgebraError::NotNilpotentWithinCap {
                        var: ring[i].clone(),
                        cap,
                    });
                }
                lambda_pow = lambda_pow.mul(lambda);
                factorial = factorial.mul(&Rational::from_int(j as i64));
                let inv = C::from_rational(&factorial.recip().expect("nonzero"));
                acc = acc.add(&term.mul(&lambda_pow).scale(&inv));
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    PolyMap::new(components)
}

/// The closed form
/// `(x − Σ_{k=1}^{m+1} binom(m+1, k) λ^k Δ^k y^{m+1−k} z^{nk−1}, y + λ Δ z^n, z)`,
/// kept independent of the series evaluation in [`exp_lnd_scaled`].
pub fn phi_closed_form<C: Ring>(m: u32, n: u32, lambda: &MultiPoly<C>) -> PolyMap<C> {
    let ring = lambda.vars().clone();
    let x = MultiPoly::<C>::var(ring.clone(), 0);
    let y = MultiPoly::<C>::var(ring.clone(), 1);
    let z = MultiPoly::<C>::var(ring.clone(), 2);
    let delta = delta_kernel_element::<C>(m, &ring);
    let mut first = x;
    let mut binom = 1i64;
    for k in 1..=m + 1 {
        binom = binom * i64::from(m + 2 - k) / i64::from(k);
        let term = lambda
            .pow(k)
            .mul(&delta.pow(k))
            .mul(&y.pow(m + 1 - k))
            .mul(&z.pow(n * k - 1))
            .scale(&C::from_int(binom));
        first = first.sub(&term);
    }
    let second = y.add(&lambda.mul(&delta).mul(&z.pow(n)));
    let mut components = vec![first, second, z];
    components.extend((3..ring.len()).map(|i| MultiPoly::var(ring.clone(), i)));
    PolyMap::new(components).expect("closed form components share the ring")
}
