use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exterior power {k} out of range for a rank {rank} bundle")]
    ExteriorPowerRange { k: i64, rank: usize },

    #[error("obstruction sheaf index {k} out of range [2, {rank}]")]
    ObstructionIndex { k: i64, rank: usize },

    #[error("a split bundle needs at least one summand")]
    EmptyBundle,

    #[error("bundles live on different curves (genus {left} and genus {right})")]
    CurveMismatch { left: u32, right: u32 },

    #[error("no obstruction sheaves for a rank {rank} bundle")]
    RankTooSmall { rank: usize },

    #[error("Laurent window {window} too small for degree {degree}; need at least {needed}")]
    WindowTooSmall { window: u32, degree: i64, needed: u32 },

    #[error("exponent {exponent} outside the Laurent window [-{window}, {window}]")]
    WindowViolation { exponent: i64, window: u32 },

    #[error("chart mismatch: chart {left} composed with chart {right}")]
    ChartMismatch { left: u8, right: u8 },

    #[error("construction requires a rank-3 bundle on the projective line, got genus {genus} rank {rank}")]
    UnsupportedModel { genus: u32, rank: usize },

    #[error("section is not global: {component} fails the transition law (residual {residual})")]
    NotGlobal { component: String, residual: String },

    #[error("scaling parameter must be nonzero")]
    ZeroScale,

    #[error("diagonal automorphism has a zero entry at position {index}")]
    SingularAutomorphism { index: usize },

    #[error("automorphism is not in the expected Green group: {0}")]
    NotInGreenGroup(String),

    #[error("invalid model spec at `{path}`: {message}")]
    InvalidSpec { path: String, message: String },

    #[error("sweep box has {rows} rows, above the limit of {limit}")]
    UnboundedBox { rows: u128, limit: u128 },
}
