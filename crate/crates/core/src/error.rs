use thiserror::Error;

/// Errors produced by the solver pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid boundary data: {0}")]
    InvalidBoundaryData(String),

    #[error("point ({x}, {y}) lies on the branch cut {{x <= 0, y = 0}} or at the origin")]
    BranchCut { x: f64, y: f64 },

    #[error("aliasing guard: {nodes} quadrature nodes cannot resolve n_max = {n_max} (need at least {required})")]
    Aliasing {
        n_max: usize,
        nodes: usize,
        required: usize,
    },

    #[error("numeric overflow: {0}")]
    Overflow(String),

    #[error("monomial expansion supports degree <= {max}, got {degree}")]
    ExpansionUnsupported { degree: usize, max: usize },

    #[error("out of domain: {0}")]
    OutOfDomain(String),

    #[error("outside certified Taylor region: kappa = {kappa} (must be < 1/3)")]
    Region { kappa: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::Io(io),
            other => Error::Parse(format!("{other:?}")),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        if e.is_io() {
            Error::Io(e.into())
        } else {
            Error::Parse(e.to_string())
        }
    }
}

impl Error {
    /// Process exit code used by the command-line front end.
    ///
    /// 2 for domain/region violations, 3 for I/O, 4 for numeric failures
    /// (overflow, aliasing), 1 for anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::OutOfDomain(_) | Error::Region { .. } | Error::BranchCut { .. } => 2,
            Error::Io(_) => 3,
            Error::Overflow(_) | Error::Aliasing { .. } => 4,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
