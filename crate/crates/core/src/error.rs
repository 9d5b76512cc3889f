use thiserror::Error;

/// Errors shared across the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("operands belong to different coefficient fields")]
    MixedFields,
    #[error("operands belong to different polynomial rings")]
    MixedRings,
    #[error("exponent vectors have different lengths")]
    LengthMismatch,
    #[error("exponent exceeds the per-variable degree cap of 2^16")]
    DegreeOverflow,
    #[error("dimension computations support at most 12 variables, ring has {0}")]
    TooManyVariables(usize),
    #[error("argument polynomial is zero")]
    ZeroDivisorArgument,
    #[error("free resolution exceeded the cap of {0} steps")]
    ResolutionCapExceeded(usize),
    #[error("maps do not compose to zero")]
    NotAComplex,
    #[error("cannot decompose the unit ideal")]
    UnitIdeal,
    #[error("minimal prime decomposition of non-monomial ideals is only supported over prime fields")]
    UnsupportedFieldForDecomposition,
    #[error("operation requires a prime field")]
    WrongField,
    #[error("decomposition gave up: {0}")]
    DecompositionStuck(String),
    #[error("ideal does not annihilate the module: {0}")]
    NotAnnihilated(String),
    #[error("prime is not in the support of the module")]
    NotInSupport,
    #[error("cohomological index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("point does not lie on the variety")]
    PointNotOnVariety,
    #[error("ring map is not a presentation-change witness: {0}")]
    NotAnIsomorphismWitness(String),
    #[error("syntax error at {line}:{col}: {msg}")]
    SyntaxError { line: usize, col: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
