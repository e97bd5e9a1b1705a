use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// One violated identity, with 1-based indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub identity: &'static str,
    pub indices: Vec<usize>,
    pub residual: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(
            f,
            "{} at ({}) residual {:.3e}",
            self.identity,
            idx.join(","),
            self.residual
        )
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("matrix is not special orthogonal (orthogonality residual {residual:.3e}, det {det})")]
    NotSpecialOrthogonal { residual: f64, det: f64 },

    #[error("{} curvature symmetry violation(s), first: {}", .0.len(), .0.first().map(|v| v.to_string()).unwrap_or_default())]
    SymmetryViolation(Vec<Violation>),

    #[error("component {index} = {given} conflicts with {existing} already implied by symmetry")]
    ComponentConflict { index: String, given: f64, existing: f64 },

    #[error("index {0} out of range")]
    IndexOutOfRange(String),

    #[error("fiber parameter t must be positive, got {0}")]
    NonPositiveT(f64),

    #[error("Ricci input must be traceless, trace = {0}")]
    NotTraceless(f64),

    #[error("closed form disagrees with contraction: {0}")]
    ClosedFormMismatch(String),

    #[error("unknown check name `{0}`")]
    UnknownCheckName(String),

    #[error("unknown theorem id `{0}`")]
    UnknownTheoremId(String),

    #[error("unknown zoo entry `{0}`")]
    UnknownZooName(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
