use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("entry {entry} has total degree {degree}, exceeding the bound {bound}")]
    DegreeOverflow { entry: usize, degree: u32, bound: u32 },
    #[error("degree {0} is outside the operation's domain")]
    InvalidDegree(u32),
    #[error("equation is not admissible: a*k + e vanishes at k = {k}")]
    NotAdmissible { k: u64 },
    #[error("discriminant vanishes identically")]
    DegenerateDiscriminant,
    #[error("operator is not potentially self-adjoint")]
    NotSelfAdjoint,
    #[error("the equation matches none of the ten weight-factor cases")]
    NoCaseMatches,
    #[error("case ({case}) factor is not a polynomial: exact division failed")]
    NonPolynomialPhi { case: String },
    #[error("factor polynomial for axis {axis} has degree {degree} > 2")]
    PhiNotQuadratic { axis: u8, degree: u32 },
    #[error("leading matrix of degree {degree} is singular")]
    SingularLeading { degree: usize },
    #[error("weight is outside the supported class: {0}")]
    NotReducible(String),
    #[error("expected total degree {expected}, found {found:?}")]
    DegreeMismatch { expected: u32, found: Option<u32> },
    #[error("{which} is not printed for n = {n}")]
    IndexOutOfPrintedRange { which: String, n: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("family has degrees up to {available}, {needed} required")]
    FamilyTooShort { available: usize, needed: usize },
    #[error("vector is not in the span of the basis family: {0}")]
    NotInSpan(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
