//! Degree and factor-count bounds for tame automorphisms fixing z.
//!
//! An automorphism of degree `d` over `C[z]` reduces to an affine one in at
//! most `3d − 3` elementary reductions; the polynomials met along the way have
//! degree at most `2d(d+1)` and the elementary factors degree at most
//! `4d(2d+1)`.

use num_integer::Integer;
use serde_json::{json, Value};

use crate::error::{AlgebraError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundReport {
    pub d: u64,
    pub reduction_count: u64,
    pub elem_degree_bound: u64,
    pub general_degree_bound: u64,
    pub factor_count: u64,
}

impl BoundReport {
    /// `k(d) = max(2d(d+1), 4d(2d+1))`.
    pub fn k(&self) -> u64 {
        self.elem_degree_bound.max(self.general_degree_bound)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "reduction_count": self.reduction_count,
            "elem_degree_bound": self.elem_degree_bound,
            "general_degree_bound": self.general_degree_bound,
            "k": self.k(),
            "factor_count": self.factor_count,
        })
    }
}

/// The bounds for degree `d ≥ 1`. `factor_count = 9(3d − 3) + 1`: each
/// reduction contributes at most nine factors, plus one terminal affine map.
pub fn bound_report(d: u64) -> BoundReport {
    assert!(d >= 1, "degree must be positive");
    let reductions = 3 * d - 3;
    BoundReport {
        d,
        reduction_count: reductions,
        elem_degree_bound: 2 * d * (d + 1),
        general_degree_bound: 4 * d * (2 * d + 1),
        factor_count: 9 * reductions + 1,
    }
}

/// Data of a `*`-reduced pair `(f₁, f₂)` and a polynomial `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SUBoundInput {
    pub d1: u64,
    pub d2: u64,
    pub deg_p_x1: u64,
    pub deg_p_x2: u64,
    pub deg_bracket: u64,
}

/// Quantities derived from an [`SUBoundInput`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SUDerived {
    pub p: u64,
    pub s: u64,
    pub q: u64,
    pub r: u64,
    pub q1: u64,
    pub r1: u64,
    pub n: u64,
}

impl SUBoundInput {
    pub fn derive(&self) -> Result<SUDerived> {
        let bad = |msg: String| Err(AlgebraError::InvalidStarReducedData(msg));
        if self.d1 == 0 || self.d1 >= self.d2 {
            return bad(format!("need 0 < d1 < d2, got d1 = {}, d2 = {}", self.d1, self.d2));
        }
        if self.deg_bracket == 0 {
            return bad("deg[f1, f2] must be positive".into());
        }
        let g = self.d1.gcd(&self.d2);
        let (p, s) = (self.d1 / g, self.d2 / g);
        let n = (self.d1 * self.d2 / g + self.deg_bracket)
            .checked_sub(self.d1 + self.d2)
            .filter(|&n| n >= 2);
        let Some(n) = n else {
            return bad(format!(
                "N = {}·{}/{} − {} − {} + {} is below 2",
                self.d1, self.d2, g, self.d1, self.d2, self.deg_bracket
            ));
        };
        let (q, r) = self.deg_p_x2.div_rem(&p);
        let (q1, r1) = self.deg_p_x1.div_rem(&s);
        Ok(SUDerived { p, s, q, r, q1, r1, n })
    }
}

/// `max(qN + d₂r, q₁N + d₁r₁)`, a lower bound for `deg P(f₁, f₂)`.
pub fn su_inequality_bound(input: &SUBoundInput) -> Result<u64> {
    let k = input.derive()?;
    Ok((k.q * k.n + input.d2 * k.r).max(k.q1 * k.n + input.d1 * k.r1))
}
