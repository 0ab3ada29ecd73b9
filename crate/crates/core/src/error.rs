use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("not a permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("invalid symbol `{0}`")]
    InvalidSymbol(String),

    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("{0}")]
    ConventionMismatch(&'static str),

    #[error("degree mismatch in {context}: expected {expected}, found {found}")]
    DegreeMismatch {
        context: String,
        expected: i32,
        found: i32,
    },

    #[error("inhomogeneous element in {0}")]
    Inhomogeneous(String),

    #[error("elements live in different ambient algebras")]
    AmbientMismatch,

    #[error("odd generator `{0}` appears with exponent greater than one")]
    OddSquare(String),

    #[error("d^2 does not vanish on generator `{generator}`: d^2 = {witness}")]
    SquareNonzero { generator: String, witness: String },

    #[error("no Sullivan filtration exists; stuck generators: {stuck:?}")]
    NotSullivan { stuck: Vec<String> },

    #[error("stage order is not a Sullivan order: {0}")]
    InvalidOrder(String),

    #[error("not a dg algebra morphism: {0}")]
    NotAMorphism(String),

    #[error("arity cap {cap} exceeded: {context}")]
    ArityCap { cap: usize, context: String },

    #[error("structure map is not graded symmetric: {0}")]
    SymmetryViolation(String),

    #[error("not degree-wise nilpotent: {0}")]
    NotNilpotent(String),

    #[error("Maurer-Cartan check failed: {0}")]
    NotMaurerCartan(String),

    #[error("operation requires a dg Lie algebra")]
    NotDgla,

    #[error("homotopy endpoints do not match")]
    EndpointMismatch,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal verification failed: {0}")]
    Verification(String),
}
