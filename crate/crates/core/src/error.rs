use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported field: {0}")]
    BadField(String),
    #[error("bad field element: {0}")]
    BadFieldElement(String),
    #[error("linear form is zero")]
    ZeroForm,
    #[error(
        "form {second} is proportional to form {first}{}",
        lines.map(|(a, b)| format!(" (lines {a} and {b})")).unwrap_or_default()
    )]
    DuplicateHyperplane {
        first: usize,
        second: usize,
        /// Source lines of the two forms, when parsed from text.
        lines: Option<(usize, usize)>,
    },
    #[error("coordinate change is not invertible")]
    SingularChart,
    #[error("arrangement is empty")]
    EmptyArrangement,
    #[error("restriction is empty: the arrangement needs at least two planes")]
    EmptyRestriction,
    #[error("hyperplane index {index} out of range for {len} planes")]
    HyperplaneOutOfRange { index: usize, len: usize },
    #[error("derivation {index} is not logarithmic along the arrangement")]
    NotLogarithmic { index: usize },
    #[error("degree cap {cap} too small: {reason}")]
    CapTooSmall { cap: u32, reason: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown built-in arrangement {0:?}")]
    UnknownBuiltin(String),
    #[error("bad corpus specification: {0}")]
    BadCorpus(String),
    #[error("could not draw {wanted} distinct planes from the coefficient box (bound {bound})")]
    GenerationExhausted { wanted: usize, bound: u32 },

    // Internal invariant violations. Each of these means either a bug or a
    // counterexample to a theorem the library relies on.
    #[error("internal: negative line-point invariant {value} at hyperplane {h}")]
    NegativeLp { h: usize, value: i64 },
    #[error("internal: Hilbert function of a 2-multiarrangement is not free-shaped at degree {degree}: got {got}, expected {expected}")]
    HilbertPatternViolation {
        degree: u32,
        got: usize,
        expected: usize,
    },
    #[error("internal: {kind} cokernel at hyperplane {h} did not stabilize by degree {cap}")]
    StabilizationNotReached { kind: String, h: usize, cap: u32 },
    #[error("internal: freeness verdicts disagree between hyperplanes: {0}")]
    InconsistentVerdicts(String),
    #[error("internal: {0}")]
    Invariant(String),
}

impl Error {
    /// True for failures that signal a bug or a theorem counterexample
    /// rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NegativeLp { .. }
                | Error::HilbertPatternViolation { .. }
                | Error::StabilizationNotReached { .. }
                | Error::InconsistentVerdicts(_)
                | Error::Invariant(_)
        )
    }
}
