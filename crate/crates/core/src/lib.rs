//! Escape rates of open dynamical systems conjugate to subshifts of finite
//! type.
//!
//! A hole in such a system corresponds to a finite union of cylinders in the
//! shift space, so the escape rate reduces to symbolic computations. This
//! crate computes it by two independent routes:
//!
//! * **spectral** — higher-block transition matrices and their Perron
//!   eigenvalues ([`escape::escape_rate_spectral`]);
//! * **combinatorial** — word correlation polynomials, the generating
//!   function of hole-avoiding words, and exact isolation of the dominant
//!   root of its recurrence ([`escape::escape_rate_combinatorial`]).
//!
//! Supporting modules cover exact polynomial and rational-function
//! arithmetic ([`algebra`]), words and correlation polynomials ([`words`]),
//! transition matrices, tensor products and the product-index bijection
//! ([`shift`]), Perron eigendata and Parry measures ([`spectral`]),
//! correlation-free word-set constructions ([`constructions`]), the geometry
//! of expanding torus maps ([`torus`]), and brute-force plus Monte Carlo
//! ground truth ([`oracle`]). The [`cli`] module backs the `sft-escape`
//! binary; the `examples/` directory has one runnable example per major
//! capability.

pub mod algebra;
pub mod cli;
pub mod constructions;
pub mod escape;
pub mod oracle;
pub mod shift;
pub mod spectral;
pub mod torus;
pub mod words;

pub use escape::{EscapeResult, HoleSpec, Method};
pub use shift::{ProductSpec, SubshiftSpec, TransitionMatrix};
pub use spectral::PerronData;
pub use words::{Word, WordSet};

/// Library-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("alphabet mismatch: expected q={expected}, found q={found}")]
    AlphabetMismatch { expected: u32, found: u32 },
    #[error("duplicate word in set: {0}")]
    DuplicateWord(String),
    #[error("words must all have the same length")]
    UnequalWordLengths,
    #[error("word set is not reduced: {0}")]
    NotReduced(String),
    #[error("word set is empty")]
    EmptyWordSet,
    #[error("correlation matrix is singular (degenerate word set)")]
    SingularMatrix,
    #[error("matrix is not square")]
    NonSquareMatrix,
    #[error("rational function has no expansion in inverse powers")]
    ImproperRational,
    #[error("no sign change on the given bracket")]
    NoSignChange,
    #[error("transition matrix has no nonzero entry")]
    ZeroMatrix,
    #[error("dimension {required} exceeds the cap {cap}; raise --max-dim to override")]
    DimensionCap { required: usize, cap: usize },
    #[error("ambient subshift is reducible")]
    ReducibleAmbient,
    #[error("no periodic point of period <= {limit} lies in the hole")]
    NoPeriodicPoint { limit: usize },
    #[error("no recurrence found within {limit} steps")]
    NoRecurrenceFound { limit: usize },
    #[error("enumeration of {required} words exceeds the budget {budget}")]
    EnumerationBudget { required: u128, budget: u64 },
    #[error("survival curve has {have} usable tail points, need {need}; increase samples")]
    CurveTooShort { have: usize, need: usize },
    #[error("methods disagree: spectral {spectral} vs combinatorial {combinatorial}")]
    MethodDisagreement { spectral: f64, combinatorial: f64 },
    #[error("internal consistency failure: {0}")]
    InternalCheck(String),
    #[error("outside the root-location regime: {0}")]
    OutsideRootRegime(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error: {0}")]
    ParseInput(String),
}

/// Library-wide result type.
pub type Result<T> = std::result::Result<T, Error>;
