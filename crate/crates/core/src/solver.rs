//! Constructive solving.
//!
//! Any even permutation is a product of 3-cycles, and every 3-cycle of
//! positions can be realised by conjugating one fixed commutator that cycles
//! positions 1, 2, 3. Odd states on boards with an even line length are first
//! made even with one shift of that line. Solutions are correct, not short.

use std::collections::{HashMap, VecDeque};

use crate::board::{
    apply_move_in_place, apply_sequence, generators, solved_state, BoardDims, BoardState, Move,
    MoveSequence, Position,
};
use crate::error::{Error, Result};
use crate::perm::{number_to_position, GroupKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub moves: MoveSequence,
}

impl Solution {
    /// Number of manipulations.
    pub fn length(&self) -> usize {
        self.moves.len()
    }
}

/// Seven moves on column 1 and row 1 whose net effect is the 3-cycle
/// `1 -> 2 -> 3 -> 1` of positions, every other position fixed.
///
/// Needs a line of length at least 3 through position 1. On boards with two
/// columns the transposed sequence is returned instead, which cycles the
/// first three cells of column 1.
pub fn lemma31_sequence(dims: BoardDims) -> Result<MoveSequence> {
    if dims.cols() >= 3 {
        Ok(core_commutator())
    } else if dims.rows() >= 3 {
        Ok(core_commutator().transposed())
    } else {
        Err(Error::BoardTooSmall {
            rows: dims.rows(),
            cols: dims.cols(),
        })
    }
}

fn core_commutator() -> MoveSequence {
    vec![
        Move::col(1, -1),
        Move::row(1, 1),
        Move::col(1, 1),
        Move::row(1, 1),
        Move::col(1, -1),
        Move::row(1, -2),
        Move::col(1, 1),
    ]
    .into()
}

/// A sequence realising the 3-cycle `a -> b -> c -> a` of positions.
///
/// Built as `route · core · route⁻¹` where `route` carries the tiles on
/// `a`, `b`, `c` to the three cells cycled by [`lemma31_sequence`].
pub fn three_cycle(dims: BoardDims, a: Position, b: Position, c: Position) -> Result<MoveSequence> {
    for p in [a, b, c] {
        Position::new(p.id(), dims)?;
    }
    if a == b || b == c || a == c {
        return Err(Error::NonDistinct);
    }
    if dims.cols() >= 3 {
        Ok(conjugate_into_row(dims, [a, b, c]))
    } else if dims.rows() >= 3 {
        let t = dims.transposed();
        let flip = |p: Position| {
            let (x, y) = p.coords(dims);
            Position::from_coords(y, x, t).expect("transposed coordinate in range")
        };
        Ok(conjugate_into_row(t, [flip(a), flip(b), flip(c)]).transposed())
    } else {
        Err(Error::BoardTooSmall {
            rows: dims.rows(),
            cols: dims.cols(),
        })
    }
}

/// Requires `cols >= 3`.
fn conjugate_into_row(dims: BoardDims, targets: [Position; 3]) -> MoveSequence {
    let mut route = Router::new(dims, targets);
    let cols = dims.cols();

    // first tile to (1,1): up its column, then along row 1
    let (r, c) = route.at(0);
    if r != 0 {
        route.push(Move::col(c + 1, r as i64));
    }
    let (_, c) = route.at(0);
    if c != 0 {
        route.push(Move::row(1, c as i64));
    }

    // second tile to (1,2) without disturbing (1,1)
    let (r, c) = route.at(1);
    if r == 0 {
        if c != 1 {
            route.push(Move::col(1, -1));
            route.push(Move::row(1, c as i64 - 1));
            route.push(Move::col(1, 1));
        }
    } else {
        let k = (c + cols - 1) % cols;
        if k != 0 {
            route.push(Move::row(r + 1, k as i64));
        }
        route.push(Move::col(2, r as i64));
    }

    // third tile to (1,3) without disturbing (1,1) and (1,2)
    let (mut r, mut c) = route.at(2);
    if r == 0 && c != 2 {
        route.push(Move::col(c + 1, -1));
        (r, c) = route.at(2);
    }
    if r != 0 {
        let k = (c + cols - 2) % cols;
        if k != 0 {
            route.push(Move::row(r + 1, k as i64));
        }
        route.push(Move::col(3, r as i64));
    }
    debug_assert_eq!(
        [route.at(0), route.at(1), route.at(2)],
        [(0, 0), (0, 1), (0, 2)]
    );

    let route = route.moves;
    let mut out = route.clone();
    out.extend(core_commutator());
    out.extend(route.inverse());
    out
}

/// Tracks three tiles while a routing sequence is built.
struct Router {
    dims: BoardDims,
    tracked: [(usize, usize); 3],
    moves: MoveSequence,
}

impl Router {
    fn new(dims: BoardDims, targets: [Position; 3]) -> Self {
        let tracked = targets.map(|p| {
            let (x, y) = p.coords(dims);
            (x - 1, y - 1)
        });
        Router {
            dims,
            tracked,
            moves: MoveSequence::new(),
        }
    }

    fn at(&self, i: usize) -> (usize, usize) {
        self.tracked[i]
    }

    fn push(&mut self, mv: Move) {
        let (rows, cols) = (self.dims.rows() as i64, self.dims.cols() as i64);
        for (r, c) in self.tracked.iter_mut() {
            match mv.axis {
                crate::board::Axis::Row if *r == mv.index - 1 => {
                    *c = (*c as i64 - mv.amount).rem_euclid(cols) as usize;
                }
                crate::board::Axis::Col if *c == mv.index - 1 => {
                    *r = (*r as i64 - mv.amount).rem_euclid(rows) as usize;
                }
                _ => {}
            }
        }
        self.moves.push(mv);
    }
}

/// A sequence taking `state` to the solved board.
pub fn solve(state: &BoardState, dims: BoardDims) -> Result<Solution> {
    let mut cells = BoardState::from_cells(state.cells().to_vec(), dims)?.into_cells();
    if dims.rows() == 2 && dims.cols() == 2 {
        return solve_exhaustive(&cells, dims);
    }

    let mut moves = MoveSequence::new();
    if !number_to_position(state).parity().is_even() {
        if GroupKind::of(dims) == GroupKind::Alternating {
            return Err(Error::UnsolvableState);
        }
        let fix = if dims.cols().is_multiple_of(2) {
            Move::row(1, 1)
        } else {
            Move::col(1, 1)
        };
        apply_move_in_place(&mut cells, fix, dims)?;
        moves.push(fix);
    }

    let n = cells.len();
    for target in 0..n.saturating_sub(2) {
        if cells[target] as usize == target {
            continue;
        }
        let from = cells
            .iter()
            .position(|&v| v as usize == target)
            .expect("label present");
        let spare = if from == n - 1 { n - 2 } else { n - 1 };
        let seq = three_cycle(
            dims,
            Position::from_index(from),
            Position::from_index(target),
            Position::from_index(spare),
        )?;
        for &mv in &seq {
            apply_move_in_place(&mut cells, mv, dims)?;
        }
        moves.extend(seq);
    }
    debug_assert!(cells.iter().enumerate().all(|(p, &v)| p == v as usize));

    Ok(Solution {
        moves: merge_adjacent(moves, dims),
    })
}

/// Breadth-first search on the 24 states of the 2x2 board.
fn solve_exhaustive(cells: &[u32], dims: BoardDims) -> Result<Solution> {
    let gens = generators(dims);
    let goal = solved_state(dims).into_cells();
    let mut parent: HashMap<Vec<u32>, Option<(Vec<u32>, Move)>> = HashMap::new();
    parent.insert(cells.to_vec(), None);
    let mut queue = VecDeque::from([cells.to_vec()]);
    while let Some(cur) = queue.pop_front() {
        if cur == goal {
            break;
        }
        for &g in &gens {
            let mut next = cur.clone();
            apply_move_in_place(&mut next, g, dims)?;
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((cur.clone(), g)));
                queue.push_back(next);
            }
        }
    }
    let mut path = Vec::new();
    let mut at = goal;
    while let Some(Some((prev, mv))) = parent.get(&at) {
        path.push(*mv);
        at = prev.clone();
    }
    path.reverse();
    Ok(Solution { moves: path.into() })
}

/// Merges consecutive shifts of the same line and drops identities. All
/// amounts come out in `1..len`.
pub fn merge_adjacent(seq: MoveSequence, dims: BoardDims) -> MoveSequence {
    let mut out: Vec<Move> = Vec::with_capacity(seq.len());
    for mv in seq {
        let len = dims.line_len(mv.axis) as i64;
        let mut amount = mv.amount.rem_euclid(len);
        if let Some(top) = out.last() {
            if top.axis == mv.axis && top.index == mv.index {
                amount = (amount + top.amount).rem_euclid(len);
                out.pop();
            }
        }
        if amount != 0 {
            out.push(Move { amount, ..mv });
        }
    }
    out.into()
}

/// True iff `seq` takes `state` to the solved board.
pub fn verify(state: &BoardState, seq: &MoveSequence, dims: BoardDims) -> bool {
    apply_sequence(state, seq, dims).is_ok_and(|s| s.is_solved())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{sequence_permutation, Permutation};
    use crate::scramble::scramble;

    fn dims(m: usize, n: usize) -> BoardDims {
        BoardDims::new(m, n).unwrap()
    }

    fn pos(id: usize, d: BoardDims) -> Position {
        Position::new(id, d).unwrap()
    }

    /// The permutation that the 3-cycle `(a b c)` should produce, built
    /// directly from its cycle.
    fn cycle_oracle(d: BoardDims, a: usize, b: usize, c: usize) -> Permutation {
        Permutation::from_cycles(d.cell_count(), &[vec![a - 1, b - 1, c - 1]]).unwrap()
    }

    #[test]
    fn core_is_the_three_cycle_123() {
        for m in 2..=6 {
            for n in 3..=6 {
                let d = dims(m, n);
                let p = sequence_permutation(&lemma31_sequence(d).unwrap(), d).unwrap();
                assert_eq!(p, cycle_oracle(d, 1, 2, 3), "{d}");
            }
        }
    }

    #[test]
    fn core_regression_direction() {
        // tile on position 1 moves to 2, 2 to 3, 3 to 1
        let d = dims(3, 3);
        let s = apply_sequence(&solved_state(d), &lemma31_sequence(d).unwrap(), d).unwrap();
        assert_eq!(s.cells(), &[2, 0, 1, 3, 4, 5, 6, 7, 8]);
    }

    #[test]
    fn transposed_core_on_two_columns() {
        for m in 3..=6 {
            let d = dims(m, 2);
            let p = sequence_permutation(&lemma31_sequence(d).unwrap(), d).unwrap();
            assert_eq!(p, cycle_oracle(d, 1, 3, 5));
        }
        assert!(matches!(
            lemma31_sequence(dims(2, 2)),
            Err(Error::BoardTooSmall { .. })
        ));
    }

    #[test]
    fn three_cycle_identity_routing() {
        let d = dims(3, 3);
        let seq = three_cycle(d, pos(1, d), pos(2, d), pos(3, d)).unwrap();
        assert_eq!(seq, lemma31_sequence(d).unwrap());
    }

    #[test]
    fn three_cycle_examples() {
        let d = dims(3, 3);
        let seq = three_cycle(d, pos(4, d), pos(5, d), pos(6, d)).unwrap();
        assert_eq!(
            sequence_permutation(&seq, d).unwrap(),
            cycle_oracle(d, 4, 5, 6)
        );
    }

    #[test]
    fn three_cycle_every_triple_small_boards() {
        for (m, n) in [(2, 3), (3, 3), (3, 2), (2, 4), (4, 2), (3, 4)] {
            let d = dims(m, n);
            let k = d.cell_count();
            for a in 1..=k {
                for b in 1..=k {
                    for c in 1..=k {
                        if a == b || b == c || a == c {
                            continue;
                        }
                        let seq = three_cycle(d, pos(a, d), pos(b, d), pos(c, d)).unwrap();
                        let p = sequence_permutation(&seq, d).unwrap();
                        assert_eq!(p, cycle_oracle(d, a, b, c), "{d} ({a} {b} {c})");
                    }
                }
            }
        }
    }

    #[test]
    fn three_cycle_errors() {
        let d = dims(3, 3);
        assert!(matches!(
            three_cycle(d, pos(1, d), pos(1, d), pos(2, d)),
            Err(Error::NonDistinct)
        ));
        let d2 = dims(2, 2);
        assert!(matches!(
            three_cycle(d2, pos(1, d2), pos(2, d2), pos(3, d2)),
            Err(Error::BoardTooSmall { .. })
        ));
        assert!(three_cycle(
            d,
            Position::new(9, d).unwrap(),
            pos(1, d),
            Position::new(10, dims(4, 4)).unwrap()
        )
        .is_err());
    }

    #[test]
    fn solve_solved_is_empty() {
        for (m, n) in [(2, 2), (3, 3), (2, 5)] {
            let d = dims(m, n);
            assert!(solve(&solved_state(d), d).unwrap().moves.is_empty());
        }
    }

    #[test]
    fn solve_rejects_odd_on_odd_board() {
        let d = dims(3, 3);
        let s = BoardState::parse("0,1,2,3,4,5,6,8,7", d).unwrap();
        assert_eq!(solve(&s, d), Err(Error::UnsolvableState));
    }

    #[test]
    fn solve_scrambles() {
        for (m, n) in [
            (2, 2),
            (2, 3),
            (3, 2),
            (3, 3),
            (4, 4),
            (5, 5),
            (2, 7),
            (6, 3),
        ] {
            let d = dims(m, n);
            for seed in 0..25 {
                let (s, _) = scramble(d, seed, 50);
                let sol = solve(&s, d).unwrap();
                assert!(verify(&s, &sol.moves, d), "{d} seed {seed}");
                for mv in &sol.moves {
                    assert_ne!(mv.reduced_amount(d), 0);
                }
            }
        }
    }

    #[test]
    fn solve_odd_permutations_on_even_boards() {
        for (m, n) in [(2, 3), (3, 4), (4, 4), (4, 3)] {
            let d = dims(m, n);
            let mut cells: Vec<u32> = (0..d.cell_count() as u32).collect();
            cells.swap(0, 1);
            let s = BoardState::from_cells(cells, d).unwrap();
            let sol = solve(&s, d).unwrap();
            assert!(verify(&s, &sol.moves, d));
        }
    }

    #[test]
    fn two_by_two_is_optimal_size() {
        let d = dims(2, 2);
        for seed in 0..20 {
            let (s, _) = scramble(d, seed, 10);
            let sol = solve(&s, d).unwrap();
            assert!(verify(&s, &sol.moves, d));
            assert!(sol.length() <= 4);
        }
    }

    #[test]
    fn merging() {
        let d = dims(3, 4);
        let seq: MoveSequence = "R1:+1 R1:+3 C2:+1 C2:+1 C2:+1 R2:-1".parse().unwrap();
        assert_eq!(merge_adjacent(seq, d).to_string(), "R2:+3");
    }

    #[test]
    fn verify_examples() {
        let d = dims(3, 3);
        assert!(verify(&solved_state(d), &MoveSequence::new(), d));
        let (s, _) = scramble(d, 3, 20);
        assert!(!s.is_solved());
        assert!(!verify(&s, &MoveSequence::new(), d));
        let bad: MoveSequence = "R9:+1".parse().unwrap();
        assert!(!verify(&s, &bad, d));
    }
}
