//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by construction, evaluation, and scanning routines.
#[derive(Debug, Error)]
pub enum Error {
    /// A matrix argument contained NaN or infinite entries.
    #[error("matrix has non-finite entries")]
    NonFiniteMatrix,

    /// A matrix expected to be Hermitian was not.
    #[error("matrix is not Hermitian (max defect {defect:.3e})")]
    NotHermitian { defect: f64 },

    /// A matrix expected to be unitary was not.
    #[error("matrix is not unitary (max defect {defect:.3e})")]
    NotUnitary { defect: f64 },

    /// Inverse temperature must be strictly positive.
    #[error("beta must be positive (got {0})")]
    NonPositiveBeta(f64),

    /// The thermal state would not be representable at full rank.
    #[error("temperature too low for full-rank state")]
    TemperatureTooLow,

    /// ζ(θ, φ) = e^{−iφ} tan(θ/2) diverges at the pole θ = π.
    #[error("theta = {0} is too close to the pole at pi")]
    PoleAngle(f64),

    /// Operation restricted to a specific spin quantum number.
    #[error("operation requires 2j = {required} (got 2j = {got})")]
    UnsupportedSpin { required: u32, got: u32 },

    /// A density matrix eigenvalue fell below the full-rank floor.
    #[error("density matrix is rank deficient (min eigenvalue {0:.3e})")]
    RankDeficient(f64),

    /// arg Tr[·] is ill-defined because the trace magnitude vanished.
    /// This is exactly where phase jumps occur.
    #[error("phase undefined at this point (|trace| = {0:.3e})")]
    PhaseUndefined(f64),

    /// A unitary evolution failed the interferometric parallel-transport
    /// condition, so its total phase is not a geometric phase.
    #[error("parallel-transport condition violated (residual {residual:.3e})")]
    TransportViolated { residual: f64 },

    /// A sweep/grid/critical specification failed validation.
    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    /// Bisection preconditions not met: the bracket ends agree.
    #[error("no phase jump in bracket [{lo}, {hi}]")]
    NoJumpInBracket { lo: f64, hi: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 invalid spec, 3 numerical failure,
    /// 4 I/O failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidSpec(_)
            | Error::UnsupportedSpin { .. }
            | Error::NoJumpInBracket { .. } => 2,
            Error::Io(_) => 4,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
