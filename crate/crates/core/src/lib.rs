//! Exact computations on the polynomial automorphism group of affine space.
//!
//! The crate builds the exponentials of the locally nilpotent derivations
//! `δ = Δ (z^n ∂/∂y − (m+1) y^m z^{n−1} ∂/∂x)`, the degenerating tame families
//! `σ_t = G_t⁻¹ ∘ F_t ∘ G_t` whose limits at `t = 0` are wild, the conjugation
//! and correction pipeline exhibiting `exp(λδ)` (for `n = 2m + 1`) as a limit of
//! tame automorphisms, and a tameness certifier for plane automorphisms over
//! `Q[z]`. All arithmetic is exact.

pub mod autmap;
pub mod coeff;
pub mod degeneration;
pub mod error;
pub mod lnd;
pub mod multipoly;
pub mod plane;
pub mod sampling;
pub mod subounds;

pub use error::{AlgebraError, Result};
