//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its admissible range.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested object cannot exist for the given parameters.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// The balanced-cut search exhausted its budget without reaching the
    /// balance tolerance. Carries the best infeasible state found.
    #[error("no balanced cut within budget (best balance deviation {best_balance_dev:.6})")]
    InfeasibleWithBudget {
        best_balance_dev: f64,
        best: Box<crate::cuts::CutResult>,
    },

    /// The disc splitter found no chord inside the area-ratio window.
    #[error("no balanced splitting chord found (best ratio {best_ratio:.4})")]
    SplitInfeasible { best_ratio: f64 },

    /// A cycle that must bound does not bound over Z2.
    #[error("cycle is not null-homologous over Z2")]
    Homology,

    /// Mesh construction produced an inconsistent complex.
    #[error("construction error: {0}")]
    Construction(String),

    /// A mesh failed validation where a valid mesh is required.
    #[error("validation error: {0}")]
    Validation(String),

    /// Exact enumeration was requested above its face-count cap.
    #[error("mesh has {faces} faces, above the exact-search cap of {cap}")]
    SizeCap { faces: usize, cap: usize },

    /// Two vertices are in different components.
    #[error("mesh is not connected")]
    Disconnected,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
