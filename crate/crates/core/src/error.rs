use std::fmt;

use thiserror::Error;

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

/// A serialized reproducer for an instance on which an applicable theorem
/// check failed. Carrying plain strings keeps the error type independent of
/// the analysis types.
#[derive(Debug, Clone)]
pub struct Violation {
    /// Seed of the generated instance, when one exists.
    pub seed: Option<u64>,
    /// The offending theorem check, by name.
    pub theorem: String,
    /// The instance in dense matrix text format.
    pub matrix_text: String,
    /// Full verification report as JSON.
    pub report_json: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "theorem check failed: {}", self.theorem)?;
        if let Some(seed) = self.seed {
            writeln!(f, "seed: {seed}")?;
        }
        writeln!(f, "matrix:")?;
        writeln!(f, "{}", self.matrix_text.trim_end())?;
        write!(f, "report: {}", self.report_json)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: bad dimensions, unparseable entries, out-of-range
    /// indices, invalid configuration.
    #[error("input error: {0}")]
    Input(String),

    /// A documented exactness/size cap was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// An applicable theorem check failed on a concrete instance. This means
    /// an implementation bug, and the payload is the debugging artifact.
    #[error("theorem violation\n{0}")]
    TheoremViolation(Box<Violation>),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    /// Process exit code for the CLI: 1 theorem violation, 2 input error,
    /// 3 resource cap exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TheoremViolation(_) => 1,
            Error::Input(_) => 2,
            Error::Resource(_) => 3,
        }
    }
}
