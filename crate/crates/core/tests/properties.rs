use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tamelimits::autmap::{self, PolyMap};
use tamelimits::coeff::{Field, QLambda, Rational, RatFunc, Ring, TowerGen, TowerScalar, UniPoly, VarT, QT};
use tamelimits::lnd;
use tamelimits::multipoly::{vars, Monomial, MultiPoly, Vars};
use tamelimits::sampling::{random_space_word, WordShape};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
}

fn unipoly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(rational(), 0..=max_deg + 1).prop_map(UniPoly::from_coeffs)
}

fn ratfunc() -> impl Strategy<Value = QT> {
    let lead = rational().prop_filter("nonzero", |c| !c.is_zero());
    (unipoly(3), prop::collection::vec(rational(), 0..=2), lead).prop_map(|(n, mut d, c)| {
        d.push(c);
        RatFunc::try_new(n, UniPoly::from_coeffs(d)).unwrap()
    })
}

fn tower2() -> impl Strategy<Value = TowerScalar<2>> {
    prop::collection::vec((0usize..=2, 0usize..=4, -5i64..=5, -1i64..=1), 0..5).prop_map(|terms| {
        terms.into_iter().fold(TowerScalar::zero(), |acc, (i, j, c, k)| {
            acc.add(&TowerScalar::monomial(QLambda::monomial(Rational::from_int(c), k), i, j))
        })
    })
}

fn xyz() -> Vars {
    vars(&["x", "y", "z"])
}

fn poly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly<Rational>> {
    prop::collection::vec(((0..=max_deg, 0..=max_deg, 0..=max_deg), -6i64..=6), 0..=max_terms).prop_map(
        move |terms| {
            MultiPoly::from_terms(
                xyz(),
                terms
                    .into_iter()
                    .filter(|((a, b, c), _)| a + b + c <= max_deg)
                    .map(|((a, b, c), k)| (Monomial::from_exponents(&[a, b, c]), Rational::from_int(k))),
            )
        },
    )
}

fn nonzero_poly(max_deg: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly<Rational>> {
    poly(max_deg, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn ring_laws<C: Ring>(a: &C, b: &C, c: &C) {
    assert_eq!(a.add(b), b.add(a));
    assert_eq!(a.mul(b), b.mul(a));
    assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    assert_eq!(a.add(&C::zero()), *a);
    assert_eq!(a.mul(&C::one()), *a);
    assert!(a.sub(a).is_zero());
    assert!(a.add(&a.neg()).is_zero());
}

fn field_laws<C: Field>(a: &C, b: &C) {
    if !a.is_zero() {
        assert!(a.mul(&a.inv().unwrap()).is_one());
        assert_eq!(b.div(a).unwrap().mul(a), *b);
    } else {
        assert!(a.inv().is_none());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        ring_laws(&a, &b, &c);
        field_laws(&a, &b);
    }

    #[test]
    fn ratfunc_field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        ring_laws(&a, &b, &c);
        field_laws(&a, &b);
    }

    #[test]
    fn ratfunc_normalization_idempotent(n in unipoly(4), d in unipoly(3)) {
        prop_assume!(!d.is_zero());
        let x = RatFunc::<VarT>::try_new(n, d).unwrap();
        let again = RatFunc::<VarT>::try_new(x.numer().clone(), x.denom().clone()).unwrap();
        prop_assert_eq!(&again, &x);
        prop_assert!(x.denom().leading().unwrap().is_one());
        prop_assert!(x.numer().gcd(x.denom()).is_one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn tower_ring_axioms(a in tower2(), b in tower2(), c in tower2()) {
        ring_laws(&a, &b, &c);
    }

    #[test]
    fn tower_units_invert(a in tower2()) {
        for g in [TowerGen::B, TowerGen::C] {
            let u = TowerScalar::<2>::gen(g);
            let v = TowerScalar::<2>::unit_inverse(g);
            prop_assert_eq!(a.mul(&u).mul(&v), a.clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn substitution_is_a_homomorphism(
        p in poly(3, 6),
        q in poly(3, 6),
        f in prop::collection::vec(poly(2, 4), 3),
    ) {
        let s = |r: &MultiPoly<Rational>| r.substitute(&f).unwrap();
        prop_assert_eq!(s(&p.mul(&q)), s(&p).mul(&s(&q)));
        prop_assert_eq!(s(&p.add(&q)), s(&p).add(&s(&q)));
        prop_assert_eq!(s(&MultiPoly::one(xyz())), MultiPoly::one(xyz()));
    }

    #[test]
    fn degree_and_leading_form_are_multiplicative(p in nonzero_poly(4, 6), q in nonzero_poly(4, 6)) {
        let all = [0, 1, 2];
        prop_assert_eq!(p.mul(&q).degree().unwrap(), p.degree().unwrap() + q.degree().unwrap());
        prop_assert_eq!(
            p.mul(&q).leading_form(&all).unwrap(),
            p.leading_form(&all).unwrap().mul(&q.leading_form(&all).unwrap())
        );
        prop_assert_eq!(p.mul(&q).degree_in(&[1]), Some(p.degree_in(&[1]).unwrap() + q.degree_in(&[1]).unwrap()));
    }

    #[test]
    fn degree_is_multiplicative_over_qt(
        a in ratfunc().prop_filter("nonzero", |a| !a.is_zero()),
        b in ratfunc().prop_filter("nonzero", |b| !b.is_zero()),
        p in nonzero_poly(3, 4),
        q in nonzero_poly(3, 4),
    ) {
        let p: MultiPoly<QT> = p.lift().scale(&a);
        let q: MultiPoly<QT> = q.lift().scale(&b);
        prop_assert_eq!(p.mul(&q).degree().unwrap(), p.degree().unwrap() + q.degree().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn exp_is_a_ring_homomorphism(p in poly(2, 4), q in poly(2, 4), k in -3i64..=3) {
        let phi = lnd::exp_lnd(&lnd::make_delta::<Rational>(1, 1), &Rational::from_int(k), 64).unwrap();
        prop_assert_eq!(phi.pullback(&p.mul(&q)).unwrap(), phi.pullback(&p).unwrap().mul(&phi.pullback(&q).unwrap()));
    }
}

fn words(seed: u64, n: usize, shape: &WordShape) -> Vec<PolyMap<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_space_word(&mut rng, shape).map().clone()).collect()
}

const CHAIN_SHAPE: WordShape = WordShape {
    max_factors: 3,
    max_degree: 3,
    height: 3,
    degree_budget: 4,
    z_degree: 0,
};

const INVERSE_SHAPE: WordShape = WordShape {
    max_factors: 5,
    max_degree: 3,
    height: 3,
    degree_budget: 6,
    z_degree: 0,
};

#[test]
fn compose_is_associative() {
    let w = words(1, 60, &WordShape::SPACE);
    for t in w.chunks(3) {
        let left = autmap::compose(&autmap::compose(&t[0], &t[1]).unwrap(), &t[2]).unwrap();
        let right = autmap::compose(&t[0], &autmap::compose(&t[1], &t[2]).unwrap()).unwrap();
        assert_eq!(left, right);
    }
}

fn random_poly(rng: &mut ChaCha8Rng) -> MultiPoly<Rational> {
    use rand::Rng;
    let terms: Vec<_> = (0..rng.gen_range(1..6))
        .map(|_| {
            let e = [rng.gen_range(0..3), rng.gen_range(0..3), rng.gen_range(0..3)];
            (Monomial::from_exponents(&e), Rational::from_int(rng.gen_range(-5..=5)))
        })
        .collect();
    MultiPoly::from_terms(xyz(), terms)
}

#[test]
fn pullback_reverses_composition() {
    let w = words(2, 40, &WordShape::SPACE);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for pair in w.chunks(2) {
        let (g, f) = (&pair[0], &pair[1]);
        let p = random_poly(&mut rng);
        let gf = autmap::compose(g, f).unwrap();
        assert_eq!(gf.pullback(&p).unwrap(), f.pullback(&g.pullback(&p).unwrap()).unwrap());
    }
}

#[test]
fn inverse_roundtrip_and_gabber_bound() {
    for f in words(3, 100, &INVERSE_SHAPE) {
        let inv = autmap::inverse(&f, None).unwrap();
        assert!(autmap::compose(&f, &inv).unwrap().is_identity());
        assert!(autmap::compose(&inv, &f).unwrap().is_identity());
        let d = f.degree().unwrap();
        assert!(inv.degree().unwrap() <= d * d);
    }
}

#[test]
fn jacobian_chain_rule() {
    let w = words(4, 100, &CHAIN_SHAPE);
    for pair in w.chunks(2) {
        let (g, f) = (&pair[0], &pair[1]);
        let lhs = autmap::jacobian_det(&autmap::compose(g, f).unwrap());
        let rhs = autmap::jacobian_det(g).substitute(f.components()).unwrap().mul(&autmap::jacobian_det(f));
        assert_eq!(lhs, rhs);
        assert!(lhs.as_constant().is_some());
    }
}

#[test]
fn exp_group_law_symbolic() {
    let ring = vars(&["x", "y", "z", "lambda", "mu"]);
    let lam = MultiPoly::<Rational>::var(ring.clone(), 3);
    let mu = MultiPoly::<Rational>::var(ring.clone(), 4);
    for (m, n) in [(1, 1), (1, 3)] {
        let d = lnd::make_delta_in::<Rational>(m, n, &ring);
        let a = lnd::exp_lnd_scaled(&d, &lam, 64).unwrap();
        let b = lnd::exp_lnd_scaled(&d, &mu, 64).unwrap();
        let ab = lnd::exp_lnd_scaled(&d, &lam.add(&mu), 64).unwrap();
        assert_eq!(autmap::compose(&a, &b).unwrap(), ab, "(m, n) = ({m}, {n})");
    }
}

#[test]
fn exp_fixes_kernel_and_matches_closed_form() {
    let ring = vars(&["x", "y", "z", "lambda"]);
    let lam = MultiPoly::<Rational>::var(ring.clone(), 3);
    for (m, n) in [(1, 1), (1, 3), (2, 5), (3, 7), (2, 2)] {
        let d = lnd::make_delta_in::<Rational>(m, n, &ring);
        let phi = lnd::exp_lnd_scaled(&d, &lam, 64).unwrap();
        assert_eq!(phi, lnd::phi_closed_form(m, n, &lam), "(m, n) = ({m}, {n})");
        let k = lnd::delta_kernel_element::<Rational>(m, &ring);
        assert_eq!(phi.pullback(&k).unwrap(), k);
        assert!(autmap::jacobian_det(&phi).is_one_poly());
    }
}

#[test]
fn nagata_display() {
    let phi = lnd::exp_lnd(&lnd::make_delta::<Rational>(1, 1), &Rational::from_int(1), 64).unwrap();
    let v = xyz();
    let (x, y, z) = (
        MultiPoly::<Rational>::var(v.clone(), 0),
        MultiPoly::<Rational>::var(v.clone(), 1),
        MultiPoly::<Rational>::var(v, 2),
    );
    let delta = x.mul(&z).add(&y.pow(2));
    let two = Rational::from_int(2);
    assert_eq!(phi.component(0), &x.sub(&y.mul(&delta).scale(&two)).sub(&z.mul(&delta.pow(2))));
    assert_eq!(phi.component(1), &y.add(&z.mul(&delta)));
    assert_eq!(phi.component(2), &z);
    assert_eq!(autmap::sdeg(&phi), 9);
}
