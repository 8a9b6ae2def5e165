use thiserror::Error;

/// Crate-wide error type. Display strings start with a module-qualified code
/// (`module/kind`) so front ends can report failures without pattern matching.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("potentials/domain: {0}")]
    PotentialDomain(String),

    #[error("potentials/family-mismatch: {0}")]
    FamilyMismatch(String),

    #[error("potentials/unsupported-reduction: {0}")]
    UnsupportedReduction(String),

    #[error("engine/domain: {0}")]
    EngineDomain(String),

    #[error("engine/inversion-failed: {0}")]
    InversionFailed(String),

    #[error("engine/degenerate-kernel: {0}")]
    DegenerateKernel(String),

    #[error("engine/no-minimum: {0}")]
    NoMinimum(String),

    #[error("closed-form/domain: {0}")]
    ClosedFormDomain(String),

    #[error("falling-to-center: {0}")]
    FallingToCenter(String),

    #[error("spectral/domain: {0}")]
    SpectralDomain(String),

    #[error("spectral/convergence: {0}")]
    Convergence(String),

    #[error("calibration/incomplete-table: {0}")]
    IncompleteTable(String),

    #[error("calibration/fit-failed: {0}")]
    FitFailed(String),
}

impl Error {
    /// Stable module-qualified code, e.g. `"engine/no-minimum"`.
    pub fn code(&self) -> &'static str {
        match self {
            Error::PotentialDomain(_) => "potentials/domain",
            Error::FamilyMismatch(_) => "potentials/family-mismatch",
            Error::UnsupportedReduction(_) => "potentials/unsupported-reduction",
            Error::EngineDomain(_) => "engine/domain",
            Error::InversionFailed(_) => "engine/inversion-failed",
            Error::DegenerateKernel(_) => "engine/degenerate-kernel",
            Error::NoMinimum(_) => "engine/no-minimum",
            Error::ClosedFormDomain(_) => "closed-form/domain",
            Error::FallingToCenter(_) => "falling-to-center",
            Error::SpectralDomain(_) => "spectral/domain",
            Error::Convergence(_) => "spectral/convergence",
            Error::IncompleteTable(_) => "calibration/incomplete-table",
            Error::FitFailed(_) => "calibration/fit-failed",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
