//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported base series: {0}")]
    UnsupportedSeries(String),

    #[error("rank/extension out of supported range: {0}")]
    RankOutOfRange(String),

    #[error("Cartan matrix is not symmetrizable")]
    NonSymmetrizable,

    #[error("invalid Cartan data: {0}")]
    InvalidCartan(String),

    #[error("unknown node id {0}")]
    UnknownNode(i32),

    #[error("node {0} is not a bosonic node of the spec")]
    NotBosonic(i32),

    #[error("weight vector length {got} does not match rank {want}")]
    RankMismatch { got: usize, want: usize },

    #[error("vector is not in the root lattice")]
    NotInRootLattice,

    #[error("degree is not determined: Cartan matrix is singular")]
    SingularDegree,

    #[error("weight is not dominant: {0}")]
    NotDominant(String),

    #[error("mixed gl ranks: {0} vs {1}")]
    MixedRank(usize, usize),

    #[error("negative argument: {0}")]
    NegativeArgument(String),

    #[error("exterior/symmetric power of a virtual module was requested")]
    VirtualPowerInput,

    #[error("not a genuine character: multiplicity of {0} went negative")]
    NotACharacter(String),

    #[error("series truncation windows do not match: {0}")]
    WindowMismatch(String),

    #[error("series constant term is not invertible")]
    NonInvertibleConstant,

    #[error("negative multiplicity in {context}: {detail}")]
    NegativeMultiplicity { context: String, detail: String },

    #[error("enumeration pruning soundness violated: {0}")]
    PruningUnsound(String),

    #[error("insufficient levels: need B_l through l = {need}, have {have}")]
    InsufficientLevels { need: i64, have: i64 },

    #[error("column fit reported a surplus: {0}")]
    ColumnSurplus(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error("internal assertion failed: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}
