use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Negative radicand in 1/Q; carries the offending q·C product.
    #[error("unsupported parameters: 1/4 + 2μc²·qC/(ħc)² < 0 with q·C = {qc}")]
    UnsupportedQc { qc: f64 },

    #[error("state n = {n} is not normalizable (eps1 = {eps1})")]
    NonNormalizable { n: u32, eps1: f64 },

    #[error("jacobi index {name} = {value} must exceed -1")]
    JacobiIndex { name: &'static str, value: f64 },

    #[error("quadrature failed: {0}")]
    Quadrature(String),

    #[error("wavefunctions come from different potentials")]
    ProvenanceMismatch,

    #[error("incompatible grids: {0}")]
    IncompatibleGrids(String),

    #[error("grid refinement failed: {0}")]
    Refinement(String),

    #[error("NU reduction infeasible: {0}")]
    Infeasible(String),

    #[error("no admissible NU branch (all candidates have tau' >= 0)")]
    NoAdmissibleBranch,

    #[error("unsupported form: {0}")]
    UnsupportedForm(String),

    #[error("Rodrigues degree {0} exceeds the cap of 8")]
    DegreeCap(u32),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
