use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("root of a constant lies outside Q(zeta_12)")]
    NeedsFieldExtension,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BranchError {
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("root of a constant lies outside Q(zeta_12)")]
    NeedsFieldExtension,
    #[error("tangent cone precondition failed: {0}")]
    Precondition(String),
    #[error("lifting obstructed at degree {degree}")]
    NotSplittable { degree: u32 },
}

impl From<AlgebraError> for BranchError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::NeedsFieldExtension => BranchError::NeedsFieldExtension,
            other => BranchError::UnsupportedShape(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChartError {
    #[error("invalid centre: {0}")]
    InvalidCenter(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("cleaning blow-up is ineffective: {0}")]
    CleaningIneffective(String),
    #[error("coordinate change is not invertible at the origin")]
    NotInvertible,
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("step {index} failed: {source}")]
    Step {
        index: usize,
        #[source]
        source: Box<ChartError>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("label {0} has no catalog equation")]
    NoEquation(String),
    #[error("family constraint violated: {0}")]
    Constraint(String),
    #[error("construction mismatch: {0}")]
    Construction(String),
}
