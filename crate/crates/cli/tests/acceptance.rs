//! Acceptance criteria 1–11, each with its time limit. Prints one line per
//! criterion and exits nonzero if any fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tamelimits::autmap::{self, PolyMap};
use tamelimits::coeff::{Field, QLambda, Rational, RatFunc, Ring, TowerScalar, UniPoly, VarT, QT, QZ};
use tamelimits::degeneration::{self, build_alpha, build_sigma, correction_map, DegenerationParams};
use tamelimits::lnd;
use tamelimits::multipoly::{vars, Monomial, MultiPoly};
use tamelimits::plane::{self, PlaneMap, TamenessVerdict};
use tamelimits::sampling::{random_plane_word, random_space_word, WordShape};
use tamelimits::subounds::{bound_report, su_inequality_bound, SUBoundInput};
use tamelimits_cli::command::DEFAULT_SEED;
use tamelimits_cli::parse_map;
use tamelimits_cli::run_command;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn cli(args: &[&str]) -> String {
    let out = run_command(std::iter::once("tamelimits").chain(args.iter().copied()));
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.stdout
}

const SIGMA_M1: [&str; 3] = [
    "t^7*x^6/2 + 9*t^6*x^5*y*z/2 - 3*t^6*x^4*y^3/2 + 3*t^5*x^5*z^3 + 99*t^5*x^4*y^2*z^2/8 \
     - 9*t^5*x^3*y^4*z + 3*t^5*x^2*y^6/2 + 18*t^4*x^4*y*z^4 + 3*t^4*x^4*z/2 + 3*t^4*x^3*y^3*z^3/4 \
     - 45*t^4*x^2*y^5*z^2/4 + 9*t^4*x*y^7*z/2 - t^4*y^9/2 + 6*t^3*x^4*z^6 + 45*t^3*x^3*y^2*z^5/2 \
     + 9*t^3*x^3*y*z^2 - 873*t^3*x^2*y^4*z^4/32 - 3*t^3*x^2*y^3*z + 39*t^3*x*y^6*z^3/4 \
     - 9*t^3*y^8*z^2/8 + 18*t^2*x^3*y*z^7 + 6*t^2*x^3*z^4 - 39*t^2*x^2*y^3*z^6/2 \
     + 45*t^2*x^2*y^2*z^3/4 - 3*t^2*x^2*y/2 + 225*t^2*x*y^5*z^5/32 - 9*t^2*x*y^4*z^2 \
     - 27*t^2*y^7*z^4/32 + 3*t^2*y^6*z/2 + 4*t*x^3*z^9 - 9*t*x^2*y^2*z^8/2 + 18*t*x^2*y*z^5 \
     + 27*t*x*y^4*z^7/16 - 51*t*x*y^3*z^4/4 - 9*t*x*y^2*z/2 - 27*t*y^6*z^6/128 + 9*t*y^5*z^3/4 \
     + 3*t*y^4/2 + 6*x^2*z^7 - 9*x*y^2*z^6/2 - 3*x*y*z^3 + x + 27*y^4*z^5/32 + 9*y^3*z^2/8",
    "-t^5*x^4 - 6*t^4*x^3*y*z + 2*t^4*x^2*y^3 - 4*t^3*x^3*z^3 - 15*t^3*x^2*y^2*z^2/2 \
     + 6*t^3*x*y^4*z - t^3*y^6 - 12*t^2*x^2*y*z^4 - 2*t^2*x^2*z + 17*t^2*x*y^3*z^3/2 \
     - 3*t^2*y^5*z^2/2 - 4*t*x^2*z^6 + 3*t*x*y^2*z^5 - 6*t*x*y*z^2 - 9*t*y^4*z^4/16 + 2*t*y^3*z \
     - 4*x*z^4 + 3*y^2*z^3/2 + y",
    "t^3*x^2 + 3*t^2*x*y*z - t^2*y^3 + 2*t*x*z^3 - 3*t*y^2*z^2/4 + z",
];

fn sigma_reproduction() -> Check {
    let oracle: PolyMap<QT> = parse_map(&format!("({})", SIGMA_M1.join(", "))).map_err(|e| e.to_string())?;
    let printed = cli(&["sigma", "--m", "1"]);
    let ours: PolyMap<QT> = parse_map(printed.trim()).map_err(|e| e.to_string())?;
    for i in 0..3 {
        if let Some(w) = ours.component(i).first_difference(oracle.component(i)) {
            return Err(format!("component {} differs at {w}", i + 1));
        }
    }
    ensure!(ours.components().iter().all(|p| p.terms().iter().all(|(_, c)| c.is_polynomial())), "coefficient outside Q[t]");
    Ok(())
}

/// `binom(m + 1/2, m + 1)` as a falling product.
fn half_binom(m: u32) -> Rational {
    let top = Rational::new(2 * m as i64 + 1, 2);
    (0..=m).fold(Rational::from_int(1), |acc, i| {
        acc.mul(&top.sub(&Rational::from_int(i as i64))).mul(&Rational::new(1, i as i64 + 1))
    })
}

fn theorem_suite() -> Check {
    let v = vars(&["x", "y", "z"]);
    let (x, y, z) = (
        MultiPoly::<Rational>::var(v.clone(), 0),
        MultiPoly::<Rational>::var(v.clone(), 1),
        MultiPoly::<Rational>::var(v, 2),
    );
    for m in 1..=3u32 {
        let report = degeneration::verify_assertions(DegenerationParams::new(m));
        ensure!(report.assertions.len() == 6, "m = {m}: {} assertions", report.assertions.len());
        for a in &report.assertions {
            ensure!(a.pass, "m = {m}: {} failed: {:?}", a.id, a.witness);
        }
        let limit = build_sigma(DegenerationParams::new(m)).map_err(|e| e.to_string())?.limit().map_err(|e| e.to_string())?;
        let inner = x.mul(&z).sub(&y.pow(m + 1).scale(&half_binom(m)));
        let expected_y = y.sub(&z.pow(2 * m + 1).mul(&inner).scale(&Rational::from_int(4)));
        ensure!(*limit.component(1) == expected_y, "m = {m}: Y(0) = {}", limit.component(1));
        ensure!(*limit.component(2) == z, "m = {m}: Z(0) = {}", limit.component(2));
    }
    Ok(())
}

const SIGMA_TILDE_EXPANDED: &str =
    "(x+9/8*y^3*z^2-3*x*y*z^3+27/32*y^4*z^5-9/2*x*y^2*z^6+6*x^2*z^7, y+3/2*y^2*z^3-4*x*z^4, z)";
const SIGMA_TILDE_FACTORED: &str =
    "(x+3/4*z^2*y*(3/2*y^2-4*x*z)+3/8*z^5*(3/2*y^2-4*x*z)^2, y+z^3*(3/2*y^2-4*x*z), z)";

fn sigma_tilde_example() -> Check {
    let limit = build_sigma(DegenerationParams::new(1)).map_err(|e| e.to_string())?.limit().map_err(|e| e.to_string())?;
    let printed: PolyMap<Rational> = parse_map(cli(&["limit", "--m", "1"]).trim()).map_err(|e| e.to_string())?;
    ensure!(printed == limit, "printed limit differs from computed one");
    for display in [SIGMA_TILDE_EXPANDED, SIGMA_TILDE_FACTORED] {
        let f: PolyMap<Rational> = parse_map(display).map_err(|e| e.to_string())?;
        ensure!(f == limit, "limit {limit} differs from {display}");
    }
    Ok(())
}

fn nagata_exponential() -> Check {
    let phi = lnd::exp_lnd(&lnd::make_delta::<Rational>(1, 1), &Rational::from_int(1), lnd::DEFAULT_EXP_CAP)
        .map_err(|e| e.to_string())?;
    let nagata: PolyMap<Rational> =
        parse_map("(x-2*y*(y^2+z*x)-z*(y^2+z*x)^2, y+z*(y^2+z*x), z)").map_err(|e| e.to_string())?;
    ensure!(phi == nagata, "exp(δ) = {phi}");
    let ring = vars(&["x", "y", "z", "lambda", "mu"]);
    let lam = MultiPoly::<Rational>::var(ring.clone(), 3);
    let mu = MultiPoly::<Rational>::var(ring.clone(), 4);
    for (m, n) in [(1, 1), (1, 3)] {
        let d = lnd::make_delta_in::<Rational>(m, n, &ring);
        let exp = |s: &MultiPoly<Rational>| lnd::exp_lnd_scaled(&d, s, lnd::DEFAULT_EXP_CAP).map_err(|e| e.to_string());
        let lhs = autmap::compose(&exp(&lam)?, &exp(&mu)?).map_err(|e| e.to_string())?;
        ensure!(lhs == exp(&lam.add(&mu))?, "group law fails for (m, n) = ({m}, {n})");
    }
    Ok(())
}

fn wild_certificate(f: &PlaneMap<QZ>) -> Result<QZ, String> {
    match plane::tame_check_over_kz(f).map_err(|e| e.to_string())? {
        TamenessVerdict::Wild(cert) => Ok(cert.c),
        TamenessVerdict::Tame(_) => Err("reported tame".into()),
    }
}

fn wildness_certification() -> Check {
    let nagata: PolyMap<Rational> =
        parse_map("(x-2*y*(y^2+z*x)-z*(y^2+z*x)^2, y+z*(y^2+z*x), z)").map_err(|e| e.to_string())?;
    let f = PlaneMap::from_xyz(nagata.component(0), nagata.component(1)).map_err(|e| e.to_string())?;
    let c = wild_certificate(&f)?;
    ensure!(*c.denom() == UniPoly::monomial(Rational::from_int(1), 1), "Nagata certificate {c}");
    let s: PolyMap<Rational> = parse_map(SIGMA_TILDE_EXPANDED).map_err(|e| e.to_string())?;
    let f = PlaneMap::from_xyz(s.component(0), s.component(1)).map_err(|e| e.to_string())?;
    let c = wild_certificate(&f)?;
    ensure!(!c.is_polynomial(), "σ̃ certificate {c} is integral");
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for k in 0..50 {
        let word = random_plane_word(&mut rng, &WordShape::PLANE);
        let f = PlaneMap::from_map(word.map().clone()).map_err(|e| e.to_string())?;
        match plane::tame_check_over_kz(&f).map_err(|e| e.to_string())? {
            TamenessVerdict::Tame(w) => ensure!(w.map() == word.map(), "word {k} does not recompose"),
            TamenessVerdict::Wild(cert) => return Err(format!("word {k} reported wild: {cert:?}")),
        }
    }
    Ok(())
}

fn pipeline() -> Check {
    let alpha = build_alpha::<1>().map_err(|e| e.to_string())?;
    let lift = |f: &PolyMap<QLambda>| f.map_coeffs(|c| TowerScalar::<1>::from_base(c.clone()));
    let expected: PolyMap<QLambda> = parse_map("(x, y+lambda*(x*z+y^2)*z^3, z)").map_err(|e| e.to_string())?;
    let expected = lift(&expected);
    for i in [1, 2] {
        ensure!(alpha.alpha.component(i) == expected.component(i), "alpha component {} = {}", i + 1, alpha.alpha.component(i));
        ensure!(
            alpha.alpha.component(i).terms().iter().all(|(_, c)| c.as_base().is_some()),
            "tower generators left in component {}",
            i + 1
        );
    }
    let out = correction_map(&alpha).map_err(|e| e.to_string())?;
    let phi = lnd::exp_lnd(&lnd::make_delta::<QLambda>(1, 3), &QLambda::var(), lnd::DEFAULT_EXP_CAP)
        .map_err(|e| e.to_string())?;
    let composed = autmap::compose(&out.correction.to_map(), &alpha.alpha).map_err(|e| e.to_string())?;
    ensure!(out.recomposes && composed == lift(&phi), "f∘α = {composed}");
    Ok(())
}

fn gabber_bound() -> Check {
    let s: PolyMap<Rational> = parse_map(SIGMA_TILDE_EXPANDED).map_err(|e| e.to_string())?;
    let d = s.degree().unwrap_or(0);
    ensure!(d == 9, "deg σ̃ = {d}");
    let inv = autmap::inverse(&s, None).map_err(|e| e.to_string())?;
    ensure!(autmap::compose(&s, &inv).map_err(|e| e.to_string())?.is_identity(), "σ̃∘σ̃⁻¹ ≠ id");
    ensure!(autmap::compose(&inv, &s).map_err(|e| e.to_string())?.is_identity(), "σ̃⁻¹∘σ̃ ≠ id");
    let di = inv.degree().unwrap_or(0);
    ensure!(di <= d * d, "deg σ̃⁻¹ = {di}");
    Ok(())
}

fn pm_congruences() -> Check {
    let u = vars(&["U"]);
    let mono = |k: u32| Monomial::from_exponents(&[k]);
    for m in 1..=8u32 {
        let top = Rational::new(2 * m as i64 + 1, 2);
        let mut c = Rational::from_int(1);
        let mut series = vec![c.clone()];
        for k in 0..=m {
            c = c.mul(&top.sub(&Rational::from_int(k as i64))).mul(&Rational::new(1, k as i64 + 1));
            series.push(c.clone());
        }
        let p = MultiPoly::from_terms(u.clone(), (0..=m).map(|k| (mono(k), series[k as usize].clone())));
        ensure!(degeneration::pm_poly(m) == p, "P_{m} = {}", degeneration::pm_poly(m));
        let one_plus_u = MultiPoly::one(u.clone()).add(&MultiPoly::var(u.clone(), 0));
        let diff = p.pow(2).sub(&one_plus_u.pow(2 * m + 1));
        for k in 0..=m {
            ensure!(diff.coeff(mono(k)).is_zero(), "m = {m}: U^{k} coefficient {}", diff.coeff(mono(k)));
        }
        let beta = series[m as usize + 1].clone();
        ensure!(
            diff.coeff(mono(m + 1)) == beta.scale(&Rational::from_int(-2)),
            "m = {m}: U^{} coefficient {}",
            m + 1,
            diff.coeff(mono(m + 1))
        );
        ensure!(degeneration::check_pm_congruence(m).is_none(), "m = {m}: congruence");
        ensure!(degeneration::check_pm_refined_congruence(m).is_none(), "m = {m}: refined congruence");
    }
    Ok(())
}

fn bounds_tables() -> Check {
    for d in 1..=100u64 {
        let r = bound_report(d);
        ensure!(
            (r.reduction_count, r.elem_degree_bound, r.general_degree_bound) == (3 * d - 3, 2 * d * (d + 1), 4 * d * (2 * d + 1)),
            "d = {d}: {r:?}"
        );
    }
    let worked = SUBoundInput { d1: 2, d2: 3, deg_p_x1: 4, deg_p_x2: 5, deg_bracket: 2 };
    ensure!(su_inequality_bound(&worked) == Ok(9), "worked value {:?}", su_inequality_bound(&worked));
    let mut points = 0;
    for (d1, d2) in [(2, 3), (3, 5), (4, 6), (2, 7), (5, 8)] {
        for deg_bracket in [2, 3, 7, 11] {
            for deg_p_x1 in 0..25 {
                for deg_p_x2 in 0..20 {
                    let input = SUBoundInput { d1, d2, deg_p_x1, deg_p_x2, deg_bracket };
                    let k = input.derive().map_err(|e| e.to_string())?;
                    let b = su_inequality_bound(&input).map_err(|e| e.to_string())?;
                    ensure!(b >= k.q && b >= k.q1, "{input:?}: bound {b}");
                    points += 1;
                }
            }
        }
    }
    ensure!(points >= 10_000, "only {points} grid points");
    Ok(())
}

fn dense_demo() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for k in 0..10 {
        let word = random_space_word(&mut rng, &WordShape::SPACE);
        let family = degeneration::wild_dense_family(&word, 1, 1).map_err(|e| e.to_string())?;
        ensure!(family.limit_matches && family.limit == *word.map(), "sample {k}: limit {}", family.limit);
    }
    Ok(())
}

fn rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-20..=20), rng.gen_range(1..=12))
}

fn ratfunc(rng: &mut ChaCha8Rng) -> QT {
    let num = UniPoly::from_coeffs((0..=rng.gen_range(0..=3)).map(|_| rational(rng)).collect());
    let mut den: Vec<Rational> = (0..rng.gen_range(0..=2)).map(|_| rational(rng)).collect();
    den.push(Rational::from_int(rng.gen_range(1..=5)));
    RatFunc::<VarT>::try_new(num, UniPoly::from_coeffs(den)).expect("nonzero denominator")
}

fn tower(rng: &mut ChaCha8Rng) -> TowerScalar<2> {
    (0..rng.gen_range(0..5)).fold(TowerScalar::zero(), |acc, _| {
        let c = QLambda::monomial(Rational::from_int(rng.gen_range(-5..=5)), rng.gen_range(-1..=1));
        acc.add(&TowerScalar::monomial(c, rng.gen_range(0..=2), rng.gen_range(0..=4)))
    })
}

fn ring_laws<C: Ring>(a: &C, b: &C, c: &C) -> Check {
    ensure!(a.add(b) == b.add(a) && a.mul(b) == b.mul(a), "commutativity fails on {a}, {b}");
    ensure!(a.add(b).add(c) == a.add(&b.add(c)), "additive associativity fails");
    ensure!(a.mul(b).mul(c) == a.mul(&b.mul(c)), "multiplicative associativity fails");
    ensure!(a.mul(&b.add(c)) == a.mul(b).add(&a.mul(c)), "distributivity fails on {a}, {b}, {c}");
    ensure!(a.add(&a.neg()).is_zero() && a.mul(&C::one()) == *a, "identities fail on {a}");
    Ok(())
}

fn field_laws<C: Field>(a: &C, b: &C) -> Check {
    if a.is_zero() {
        ensure!(a.inv().is_none(), "zero is invertible");
    } else {
        ensure!(a.mul(&a.inv().expect("unit")).is_one(), "a·a⁻¹ ≠ 1 for {a}");
        ensure!(b.div(a).expect("unit").mul(a) == *b, "(b/a)·a ≠ b");
    }
    Ok(())
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: u32, terms: usize) -> MultiPoly<Rational> {
    let v = vars(&["x", "y", "z"]);
    let ts: Vec<(Monomial, Rational)> = (0..rng.gen_range(0..=terms))
        .map(|_| {
            let a = rng.gen_range(0..=max_deg);
            let b = rng.gen_range(0..=max_deg - a);
            let c = rng.gen_range(0..=max_deg - a - b);
            (Monomial::from_exponents(&[a, b, c]), Rational::from_int(rng.gen_range(-6..=6)))
        })
        .collect();
    MultiPoly::from_terms(v, ts)
}

fn random_qt_map(rng: &mut ChaCha8Rng) -> PolyMap<QT> {
    let v = vars(&["x", "y", "z"]);
    let comps = (0..3)
        .map(|_| {
            let ts: Vec<(Monomial, QT)> = (0..rng.gen_range(0..=5))
                .map(|_| {
                    let e = [rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(0..=3)];
                    (Monomial::from_exponents(&e), ratfunc(rng))
                })
                .collect();
            MultiPoly::from_terms(v.clone(), ts)
        })
        .collect();
    PolyMap::new(comps).expect("shared ring")
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

fn property_suites() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..1000 {
        let (a, b, c) = (rational(&mut rng), rational(&mut rng), rational(&mut rng));
        ring_laws(&a, &b, &c)?;
        field_laws(&a, &b)?;
        let (a, b, c) = (ratfunc(&mut rng), ratfunc(&mut rng), ratfunc(&mut rng));
        ring_laws(&a, &b, &c)?;
        field_laws(&a, &b)?;
    }
    for _ in 0..300 {
        ring_laws(&tower(&mut rng), &tower(&mut rng), &tower(&mut rng))?;
    }
    for _ in 0..500 {
        let (p, q) = (random_poly(&mut rng, 3, 6), random_poly(&mut rng, 3, 6));
        let f: Vec<_> = (0..3).map(|_| random_poly(&mut rng, 2, 4)).collect();
        let s = |r: &MultiPoly<Rational>| r.substitute(&f).expect("same ring");
        ensure!(s(&p.mul(&q)) == s(&p).mul(&s(&q)), "substitution not multiplicative on {p}, {q}");
        ensure!(s(&p.add(&q)) == s(&p).add(&s(&q)), "substitution not additive on {p}, {q}");
    }
    for _ in 0..50 {
        let g = random_space_word(&mut rng, &CHAIN_SHAPE).map().clone();
        let f = random_space_word(&mut rng, &CHAIN_SHAPE).map().clone();
        let lhs = autmap::jacobian_det(&autmap::compose(&g, &f).map_err(|e| e.to_string())?);
        let rhs = autmap::jacobian_det(&g)
            .substitute(f.components())
            .map_err(|e| e.to_string())?
            .mul(&autmap::jacobian_det(&f));
        ensure!(lhs == rhs, "Jacobian chain rule fails for {g} and {f}");
    }
    for _ in 0..100 {
        let f = random_space_word(&mut rng, &INVERSE_SHAPE).map().clone();
        let inv = autmap::inverse(&f, None).map_err(|e| e.to_string())?;
        ensure!(autmap::compose(&f, &inv).map_err(|e| e.to_string())?.is_identity(), "inverse of {f} fails");
        ensure!(autmap::compose(&inv, &f).map_err(|e| e.to_string())?.is_identity(), "inverse of {f} fails");
    }
    for k in 0..100 {
        let word = random_plane_word(&mut rng, &WordShape::PLANE);
        let f = PlaneMap::from_map(word.map().clone()).map_err(|e| e.to_string())?;
        let factored = plane::vdk_factor(&f).map_err(|e| e.to_string())?;
        ensure!(factored.map() == word.map(), "factorization {k} does not recompose");
    }
    for _ in 0..100 {
        let f = random_qt_map(&mut rng);
        let back: PolyMap<QT> = parse_map(&f.to_string()).map_err(|e| format!("{f}: {e}"))?;
        ensure!(back == f, "print/parse fixpoint fails on {f}");
    }
    Ok(())
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    check: fn() -> Check,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "sigma_t reproduction", limit: secs(1), check: sigma_reproduction },
        Criterion { id: 2, name: "six assertions for m = 1, 2, 3", limit: secs(30), check: theorem_suite },
        Criterion { id: 3, name: "limit equals both printed forms", limit: secs(1), check: sigma_tilde_example },
        Criterion { id: 4, name: "Nagata as exponential, group law", limit: secs(5), check: nagata_exponential },
        Criterion { id: 5, name: "wildness certification", limit: secs(60), check: wildness_certification },
        Criterion { id: 6, name: "alpha and correction pipeline", limit: secs(60), check: pipeline },
        Criterion { id: 7, name: "inverse within the Gabber bound", limit: secs(10), check: gabber_bound },
        Criterion { id: 8, name: "P_m congruences", limit: secs(1), check: pm_congruences },
        Criterion { id: 9, name: "bounds tables", limit: secs(5), check: bounds_tables },
        Criterion { id: 10, name: "dense family limits", limit: secs(10), check: dense_demo },
        Criterion { id: 11, name: "property suites", limit: secs(120), check: property_suites },
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(c.check))
            .unwrap_or_else(|p| {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
                Err(msg.unwrap_or_else(|| "panic".into()))
            });
        let elapsed = start.elapsed();
        let verdict = match result {
            Ok(()) if elapsed <= c.limit => "PASS".to_string(),
            Ok(()) => format!("FAIL: exceeded {} s", c.limit.as_secs()),
            Err(e) => format!("FAIL: {e}"),
        };
        if verdict != "PASS" {
            failures += 1;
        }
        println!(
            "criterion {:>2} {:<36} {} ({:.3} s, limit {} s)",
            c.id,
            c.name,
            verdict,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
