use thiserror::Error;

use crate::cycle::BettiVerdict;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("integer overflow in lattice arithmetic")]
    Overflow,
    #[error("class vectors must have rank at least 1")]
    EmptyClass,

    #[error("not the class of a smooth rational curve (genus defect {defect})")]
    NotACurve { defect: i64 },
    #[error("chain pieces are not adjacent (intersection {found}, expected 1)")]
    NotAdjacent { found: i64 },
    #[error("two type b classes cannot be adjacent")]
    TwoTypeB,
    #[error("class is not of type a")]
    NotTypeA,

    #[error("sum of the cycle has a coefficient outside {{0, -1}}")]
    NotNodalForm,
    #[error("self-intersection -{value} at position {position} is not allowed (need at least 2)")]
    BadSelfIntersection { position: usize, value: i64 },
    #[error("a single nodal curve is built from its index set, not from self-intersections")]
    SingleCurve,
    #[error("rank {rank} is too small")]
    RankTooSmall { rank: usize },
    #[error("cycle is not in the partition case (verdict {0:?})")]
    NotPartitionCase(BettiVerdict),

    #[error("component {index} is not a rational curve class")]
    NonCurveComponent { index: usize },
    #[error("configuration is empty")]
    EmptyConfiguration,
    #[error("dual graph is not connected")]
    NotConnected,
    #[error("dual graph contains a cycle")]
    NotTreeShaped,
    #[error("class sum is not of the form e_k - e_K")]
    NotLemmaForm,
    #[error("curve {curve} of the second component meets the divisor")]
    NotDisjoint { curve: usize },

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("position {position} out of range for a cycle of {len} curves")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("rank {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("cycle length {s} exceeds rank {n}")]
    LengthExceedsRank { s: usize, n: usize },
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}
