//! Torus-sliding puzzle ("two-dimensional magic cube", commercially Loopover).
//!
//! An `m x n` grid of labelled tiles where any row can be cyclically shifted
//! left or right and any column up or down. This crate provides:
//!
//! * [`board`]: geometry, states, moves and the generator set;
//! * [`perm`]: permutation arithmetic, group order and solvability;
//! * [`solver`]: constructive solving with commutator 3-cycles;
//! * [`bfs`]: exact Cayley-graph diameter by layered breadth-first search;
//! * [`bound`]: diameter lower bounds by counting canonical move sequences;
//! * [`scramble`]: seeded, portable random scrambles.

pub mod bfs;
pub mod board;
pub mod bound;
mod error;
pub mod perm;
pub mod scramble;
pub mod solver;

pub use bfs::{bfs_diameter, rank, unrank, BfsLimits, Dedup, LayerHistogram, StateRank};
pub use board::{
    apply_move, apply_sequence, generators, neighbors, phi, solved_state, Axis, BoardDims,
    BoardState, Move, MoveSequence, Position,
};
pub use bound::{
    lower_bound, lower_bound_table, omega_series, BoundGrid, OmegaLevel, OmegaLevels, OmegaStop,
    OmegaTable,
};
pub use error::{Error, Result};
pub use perm::{group_order, is_solvable, BigCount, GroupKind, GroupOrder, Parity, Permutation};
pub use scramble::{scramble, SplitMix64};
pub use solver::{lemma31_sequence, solve, three_cycle, verify, Solution};
