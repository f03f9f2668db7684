use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different variable spaces")]
    SpaceMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("unknown grading `{0}`")]
    UnknownGrading(String),
    #[error("grading `{name}` has {got} weights for {expected} variables")]
    GradingLength { name: String, expected: usize, got: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("variable `{0}` has no assignment")]
    Unassigned(String),
    #[error("expected a multivector of degree {expected}, found degree {found}")]
    Degree { expected: usize, found: usize },
    #[error("operation needs exactly {expected} variables, space has {found}")]
    Arity { expected: usize, found: usize },
    #[error("{forms} forms supplied to a multivector of degree {degree}")]
    TooManyForms { forms: usize, degree: usize },
    #[error("bivector has a nonzero constant part")]
    ConstantPart,
    #[error("coefficients still contain unknowns")]
    UnknownsPresent,
    #[error("polynomial is not invariant under the action")]
    NotInvariant,
    #[error("span is not stable under the Cartan element")]
    NotHStable,
    #[error("missing block scalar for `{0}`")]
    MissingBlockScalar(String),
    #[error("expected a linear multivector")]
    NotLinear,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
