use thiserror::Error;

/// Errors raised by the boundary model, the index engines and the field
/// builders.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("circle parameter mu0 must be positive, got {mu0}")]
    NonPositivePeriod { mu0: f64 },

    #[error("boundary data needs at least one eigen-line")]
    NoLines,

    #[error("non-finite eigenvalue parameter on line {line}")]
    NonFinite { line: usize },

    #[error("first Chern numbers of the eigen-lines must sum to zero, got {sum}")]
    ChernSumNonzero { sum: i64 },

    #[error("mu = {mu} lies on the lattice {mu0}Z (nearest point {lattice_point})")]
    OnLattice { mu: f64, mu0: f64, lattice_point: f64 },

    #[error(
        "operator is not Fredholm at t = {t}: line {line} has mu = {mu}, \
         mu - t hits the lattice point {lattice_point}"
    )]
    NotFredholm {
        line: usize,
        mu: f64,
        t: f64,
        lattice_point: f64,
    },

    #[error("a clutching map of degree {degree} needs rank at least 2, got {rank}")]
    RankTooSmall { rank: usize, degree: i64 },

    #[error("clutching support radius {rho_out} must lie in (0, {r1}) to stay inside the cutoff region")]
    SupportCollision { rho_out: f64, r1: f64 },

    #[error("finite-difference stencil at {point:?} with step {h} leaves the {patch} patch")]
    PatchBoundaryStencil {
        point: [f64; 4],
        h: f64,
        patch: &'static str,
    },

    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("invalid grid: {0}")]
    Grid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
