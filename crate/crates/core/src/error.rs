use thiserror::Error;

/// Errors raised by constructors and computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero ideal unsupported")]
    ZeroIdeal,
    #[error("unit ideal unsupported (generator with empty support)")]
    UnitIdeal,
    #[error("variable index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("ambient size {0} exceeds the 64-variable limit")]
    TooManyVariables(usize),
    #[error("ambient size must be positive")]
    EmptyAmbient,
    #[error("ambient sizes differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("no edges: {0}")]
    NoEdges(String),
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("family has {count} generators, above the construction limit {limit}")]
    TooManyGenerators { count: u128, limit: usize },
    #[error("n = {n} is above the poset cap {cap}; use bounds-only mode")]
    PosetCap { n: usize, cap: usize },
    #[error("n = {n} is above the limit {limit} for {what}")]
    SizeCap { what: &'static str, n: usize, limit: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("target depth {d} outside [{lo}, {hi}]")]
    DepthOutOfRange { d: usize, lo: usize, hi: usize },
    #[error("deadline reached: sdepth >= {best_feasible}{}", least_infeasible.map(|d| format!(", sdepth < {d}")).unwrap_or_default())]
    Deadline { best_feasible: usize, least_infeasible: Option<usize> },
    #[error("vacuous bound: denominator {0} is not positive")]
    VacuousBound(String),
    #[error("big size undefined: {0}")]
    BigSizeUndefined(String),
    #[error("unsupported field characteristic {0} (expected 0 or 2)")]
    FieldCharacteristic(u32),
    #[error("colon trace failed at step {step}: {reason}")]
    ColonTrace { step: usize, reason: String },
    #[error("ishaq bound requires n >= 4, got {0}")]
    IshaqRange(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
