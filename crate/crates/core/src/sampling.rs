//! Seeded random tame words for property tests and demos.

use rand::Rng;

use crate::autmap::{FactoredWord, GeneratorFactor};
use crate::coeff::{Rational, Ring, UniPoly, QZ};
use crate::multipoly::{vars, Monomial, MultiPoly};

/// Size limits of a random word.
#[derive(Debug, Clone, Copy)]
pub struct WordShape {
    pub max_factors: usize,
    pub max_degree: u32,
    pub height: i64,
    /// Upper bound on the product of the elementary degrees, which bounds the
    /// degree of the composed map.
    pub degree_budget: u32,
    /// Largest power of z in a coefficient (plane words only).
    pub z_degree: u32,
}

impl WordShape {
    pub const PLANE: WordShape = WordShape {
        max_factors: 6,
        max_degree: 4,
        height: 3,
        degree_budget: 32,
        z_degree: 1,
    };

    pub const SPACE: WordShape = WordShape {
        max_factors: 4,
        max_degree: 3,
        height: 3,
        degree_budget: 6,
        z_degree: 0,
    };
}

fn int<R: Rng>(rng: &mut R, h: i64) -> Rational {
    Rational::from_int(rng.gen_range(-h..=h))
}

fn nonzero_int<R: Rng>(rng: &mut R, h: i64) -> Rational {
    loop {
        let k = rng.gen_range(-h..=h);
        if k != 0 {
            return Rational::from_int(k);
        }
    }
}

fn z_poly<R: Rng>(rng: &mut R, shape: &WordShape) -> QZ {
    let coeffs = (0..=shape.z_degree).map(|_| int(rng, shape.height)).collect();
    QZ::from_poly(UniPoly::from_coeffs(coeffs))
}

fn nonzero_z_poly<R: Rng>(rng: &mut R, shape: &WordShape) -> QZ {
    loop {
        let c = z_poly(rng, shape);
        if !c.is_zero() {
            return c;
        }
    }
}

/// A unimodular integer matrix as a product of two elementary matrices,
/// optionally followed by the swap.
fn unimodular<R: Rng>(rng: &mut R, h: i64) -> [[Rational; 2]; 2] {
    let a = int(rng, h);
    let b = int(rng, h);
    let one = Rational::from_int(1);
    let m = [[one.add(&a.mul(&b)), a], [b, one]];
    if rng.gen_bool(0.5) {
        [m[1].clone(), m[0].clone()]
    } else {
        m
    }
}

fn degree_for<R: Rng>(rng: &mut R, shape: &WordShape, used: u32) -> u32 {
    let room = (shape.degree_budget / used).clamp(1, shape.max_degree);
    rng.gen_range(1..=room)
}

/// A word of elementaries and affine maps over `Q[z]` in x, y with integer
/// coefficients bounded by `shape.height`.
pub fn random_plane_word<R: Rng>(rng: &mut R, shape: &WordShape) -> FactoredWord<QZ> {
    let v = vars(&["x", "y"]);
    let len = rng.gen_range(1..=shape.max_factors);
    let mut used = 1u32;
    let mut factors = Vec::with_capacity(len);
    for _ in 0..len {
        if rng.gen_range(0..4) == 0 {
            let m = unimodular(rng, shape.height);
            let matrix = m
                .iter()
                .map(|row| row.iter().map(QZ::from_rational).collect())
                .collect();
            let translation = (0..2).map(|_| z_poly(rng, shape)).collect();
            factors.push(GeneratorFactor::affine(matrix, translation));
        } else {
            let index = rng.gen_range(0..2);
            let other = 1 - index;
            let d = degree_for(rng, shape, used);
            used *= d;
            let power = |k: u32| {
                let mut e = [0u32; 2];
                e[other] = k;
                Monomial::from_exponents(&e)
            };
            let mut terms: Vec<(Monomial, QZ)> = (0..d).map(|k| (power(k), z_poly(rng, shape))).collect();
            terms.push((power(d), nonzero_z_poly(rng, shape)));
            let poly = MultiPoly::from_terms(v.clone(), terms);
            factors.push(GeneratorFactor::elementary(index, poly).expect("free of own variable"));
        }
    }
    FactoredWord::new(v, factors).expect("factors share the ring")
}

/// A tame word over Q in x, y, z.
pub fn random_space_word<R: Rng>(rng: &mut R, shape: &WordShape) -> FactoredWord<Rational> {
    let v = vars(&["x", "y", "z"]);
    let len = rng.gen_range(1..=shape.max_factors);
    let mut used = 1u32;
    let mut factors = Vec::with_capacity(len);
    for _ in 0..len {
        if rng.gen_range(0..4) == 0 {
            let perm = match rng.gen_range(0..3) {
                0 => [0, 1, 2],
                1 => [1, 2, 0],
                _ => [2, 0, 1],
            };
            let matrix = (0..3)
                .map(|i| {
                    (0..3)
                        .map(|j| {
                            if perm[i] == j {
                                nonzero_int(rng, 1)
                            } else if j > perm[i] {
                                int(rng, 1)
                            } else {
                                Rational::from_int(0)
                            }
                        })
                        .collect()
                })
                .collect();
            let translation = (0..3).map(|_| int(rng, shape.height)).collect();
            factors.push(GeneratorFactor::affine(matrix, translation));
        } else {
            let index = rng.gen_range(0..3);
            let others: Vec<usize> = (0..3).filter(|&i| i != index).collect();
            let d = degree_for(rng, shape, used);
            used *= d;
            let mut terms = Vec::new();
            for a in 0..=d {
                for b in 0..=d - a {
                    if rng.gen_bool(0.5) || a + b == d && terms.is_empty() {
                        let mut e = [0u32; 3];
                        e[others[0]] = a;
                        e[others[1]] = b;
                        terms.push((Monomial::from_exponents(&e), nonzero_int(rng, shape.height)));
                    }
                }
            }
            let poly = MultiPoly::from_terms(v.clone(), terms);
            factors.push(GeneratorFactor::elementary(index, poly).expect("free of own variable"));
        }
    }
    FactoredWord::new(v, factors).expect("factors share the ring")
}
