use thiserror::Error;

/// Errors raised by the algebraic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("operands live in different rings: {0}")]
    MixedContext(String),
    #[error("leading form of the zero polynomial")]
    ZeroPolynomial,
    #[error("linear part is not invertible")]
    NotInvertibleLinearPart,
    #[error("no inverse of degree at most {cap}: not an automorphism within the Gabber bound")]
    CapExceeded { cap: usize },
    #[error("pole at t = 0 in component {component}, monomial {monomial}")]
    PoleAtZero { component: usize, monomial: String },
    #[error("pole at {at} in component {component}, monomial {monomial}")]
    Pole { at: String, component: usize, monomial: String },
    #[error("derivation is not nilpotent on {var} within {cap} iterations")]
    NotNilpotentWithinCap { var: String, cap: usize },
    #[error("scale factor is not annihilated by the derivation")]
    ScaleNotConstant,
    #[error("coefficient of {monomial} in component {component} is not polynomial in t")]
    NotPolynomialInT { component: usize, monomial: String },
    #[error("component {component} keeps tower generators in coefficient of {monomial}")]
    ResidualTowerGenerators { component: usize, monomial: String },
    #[error("map is not of the form (d*x + P(y,z), y, z): {0}")]
    ShapeViolation(String),
    #[error("not a plane automorphism: {0}")]
    NotPlaneAutomorphism(String),
    #[error("components are not in Q[z][x,y]: {0}")]
    NotIntegralInput(String),
    #[error("invalid *-reduced data: {0}")]
    InvalidStarReducedData(String),
    #[error("malformed factor: {0}")]
    MalformedFactor(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
