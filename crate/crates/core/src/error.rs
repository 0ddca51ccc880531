use thiserror::Error;

/// Errors raised by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid homomorphism: {0}")]
    InvalidHomomorphism(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("commutator mismatch: {0}")]
    CommutatorMismatch(String),
    #[error("unsupported enumeration: {0}")]
    UnsupportedEnumeration(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("not of nilpotence class two: {0}")]
    NotClassTwo(String),
    #[error("not an action: {0}")]
    NotAnAction(String),
    #[error("invalid q-map ({kind}): {detail}")]
    InvalidQMap { kind: QMapFailure, detail: String },
    #[error("not a q-map: {0}")]
    NotAQMap(String),
    #[error("mismatched endpoints: {0}")]
    MismatchedEndpoints(String),
    #[error("not uniquely 2-divisible: {0}")]
    NotUniquelyTwoDivisible(String),
    #[error("invalid bracket: {0}")]
    InvalidBracket(String),
    #[error("not additive: {0}")]
    NotAdditive(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

/// Which relation family rejected a q-map presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QMapFailure {
    Torsion,
    Commutator,
    Order,
    Shape,
}

impl std::fmt::Display for QMapFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            QMapFailure::Torsion => "torsion",
            QMapFailure::Commutator => "commutator relation",
            QMapFailure::Order => "order relation",
            QMapFailure::Shape => "shape",
        };
        f.write_str(s)
    }
}

pub type Result<T> = std::result::Result<T, AlgebraError>;

pub(crate) fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(AlgebraError::Overflow)
}

pub(crate) fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(AlgebraError::Overflow)
}

pub(crate) fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(AlgebraError::Overflow)
}

/// `n(n-1)/2`, exact.
pub(crate) fn binom2(n: i64) -> Result<i64> {
    let m = mul(n, sub(n, 1)?)?;
    Ok(m / 2)
}
