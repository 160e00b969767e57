use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("grid mismatch: field has n={field}, grid has n={grid}")]
    GridMismatch { field: usize, grid: usize },

    #[error("bound search requires a real-eigenvalue branch on (0, R]: discriminant is {discriminant:e} at r={radius}")]
    ComplexBranch { radius: f64, discriminant: f64 },

    #[error("quadrature did not converge (estimated relative error {estimate:e} after {evaluations} evaluations)")]
    Quadrature { estimate: f64, evaluations: usize },

    #[error("quadrature failed at t={t}, k={k}: {source}")]
    SeriesQuadrature {
        t: f64,
        k: u32,
        #[source]
        source: Box<Error>,
    },

    #[error("non-finite value in {what} at t={time}")]
    NonFinite { what: &'static str, time: f64 },

    #[error("blow-up guard tripped at t={time}: H3 norm {norm:e} exceeds {limit:e}; last good time {last_good_time}")]
    BlowUp {
        time: f64,
        last_good_time: f64,
        norm: f64,
        limit: f64,
    },

    #[error("irregular cadence in trajectory window: spacing {found} differs from {expected}")]
    IrregularCadence { expected: f64, found: f64 },

    #[error("missing forcing records: {0}")]
    MissingForcing(String),

    #[error("fit rejected: {0}")]
    Fit(String),

    #[error("snapshot format: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
