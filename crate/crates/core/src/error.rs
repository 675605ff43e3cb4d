use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("inhomogeneous element where a homogeneous one is required: {0}")]
    Inhomogeneous(String),

    #[error("d∘d ≠ 0 in degree {degree}: d(d({element})) is nonzero")]
    InvalidComplex { degree: i32, element: String },

    #[error("invalid dg-algebra: {0}")]
    InvalidAlgebra(String),

    #[error("incomplete A∞ data: no operation of arity {0}")]
    IncompleteStructure(usize),

    #[error("not an A∞-morphism: the arity-1 (chain map) defect is nonzero")]
    NotAMorphism,

    #[error("internal sign-convention fault: {0}")]
    SignConventionFault(String),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("defining system violated at ({i},{j})")]
    DefiningSystemViolation { i: usize, j: usize },

    #[error("Massey product is not defined: {0}")]
    UndefinedProduct(String),

    #[error("input is disconnected ({components} components); treat each component separately")]
    Disconnected { components: usize },

    #[error("invalid span: {0}")]
    InvalidSpan(String),

    #[error("malformed simplicial complex: {0}")]
    MalformedComplex(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
