use thiserror::Error;

use crate::board::Axis;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("board must be at least 2x2, got {rows}x{cols}")]
    InvalidDims { rows: usize, cols: usize },

    #[error("coordinate ({row}, {col}) outside a {rows}x{cols} board")]
    CoordOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("position {id} outside 1..={max}")]
    PositionOutOfRange { id: usize, max: usize },

    #[error("{axis} index {index} outside 1..={max}")]
    LineOutOfRange {
        axis: Axis,
        index: usize,
        max: usize,
    },

    #[error("shift amount is a multiple of the line length {len}")]
    ZeroShift { len: usize },

    #[error("expected {expected} cells, found {found}")]
    WrongCellCount { expected: usize, found: usize },

    #[error("cells are not a permutation of 0..{len}: {reason}")]
    NotAPermutation { len: usize, reason: String },

    #[error("malformed {what}: {token:?}")]
    Parse { what: &'static str, token: String },

    #[error("permutation lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("state is not reachable: odd permutation on an odd x odd board")]
    UnsolvableState,

    #[error("{rows}x{cols} board too small for this construction")]
    BoardTooSmall { rows: usize, cols: usize },

    #[error("positions must be distinct")]
    NonDistinct,

    #[error("rank {rank} outside 0..{count}")]
    RankOutOfRange { rank: u64, count: u64 },

    #[error("search needs about {required} bytes, budget is {budget} bytes")]
    BudgetExceeded { required: String, budget: u64 },
}
