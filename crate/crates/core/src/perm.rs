//! Permutation arithmetic, the number/position notation duality, group order
//! and solvability.
//!
//! Composition reads left to right: `p.compose(&q)` applies `p` first, so the
//! image of `i` is `q[p[i]]`.

use std::fmt;
use std::ops::BitXor;

use num_bigint::BigUint;
use num_traits::One;

use crate::board::{apply_move, solved_state, BoardDims, BoardState, Move, MoveSequence};
use crate::error::{Error, Result};

/// Exact nonnegative integer used for group orders and sequence counts.
pub type BigCount = BigUint;

/// A bijection on `0..len`; `images[i]` is the image of point `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_even(self) -> bool {
        self == Parity::Even
    }
}

impl BitXor for Parity {
    type Output = Parity;

    fn bitxor(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl Permutation {
    pub fn identity(len: usize) -> Self {
        Permutation {
            images: (0..len).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let len = images.len();
        let mut seen = vec![false; len];
        for &i in &images {
            if i >= len || std::mem::replace(&mut seen[i], true) {
                return Err(Error::NotAPermutation {
                    len,
                    reason: format!("image {i} repeated or out of range"),
                });
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles of 0-based points.
    pub fn from_cycles(len: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..len).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a >= len || b >= len {
                    return Err(Error::NotAPermutation {
                        len,
                        reason: format!("cycle point out of range in {cycle:?}"),
                    });
                }
                images[a] = b;
            }
        }
        Self::from_images(images)
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn image(&self, point: usize) -> usize {
        self.images[point]
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    /// Points moved by the permutation, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.images[i] != i).collect()
    }

    /// Parity from `len - #cycles` (fixed points counted as cycles).
    pub fn parity(&self) -> Parity {
        let mut seen = vec![false; self.len()];
        let mut cycles = 0;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
            }
        }
        if (self.len() - cycles).is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Nontrivial cycles in canonical form: each starts at its smallest
    /// point, cycles sorted by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        // scanning starts in ascending order yields the canonical form directly
        for start in 0..self.len() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.images[i];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle notation with 1-based points, e.g. `(1 4 7)(2 5)`; `()` for the
    /// identity.
    pub fn cycle_notation(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
                format!("({})", pts.join(" "))
            })
            .collect()
    }

    /// Smallest `k >= 1` with `self^k = e`.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1, |acc, l| acc / gcd(acc, l) * l)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

/// Position-notation of a state: maps each label to the 0-based position
/// holding it. This is also the transformation taking the solved board to
/// `state`, since label `v` starts on position `v`.
pub fn number_to_position(state: &BoardState) -> Permutation {
    let mut images = vec![0; state.len()];
    for (p, &v) in state.cells().iter().enumerate() {
        images[v as usize] = p;
    }
    Permutation { images }
}

/// Inverse of [`number_to_position`].
pub fn position_to_number(perm: &Permutation, dims: BoardDims) -> Result<BoardState> {
    let cells = perm
        .inverse()
        .images
        .into_iter()
        .map(|v| v as u32)
        .collect();
    BoardState::from_cells(cells, dims)
}

/// The position permutation of one move: `images[p]` is where the tile on
/// position `p` ends up.
pub fn move_permutation(mv: Move, dims: BoardDims) -> Result<Permutation> {
    Ok(number_to_position(&apply_move(
        &solved_state(dims),
        mv,
        dims,
    )?))
}

pub fn sequence_permutation(seq: &MoveSequence, dims: BoardDims) -> Result<Permutation> {
    let state = crate::board::apply_sequence(&solved_state(dims), seq, dims)?;
    Ok(number_to_position(&state))
}

pub fn factorial(n: usize) -> BigCount {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    /// Even permutations only; both dimensions odd.
    Alternating,
    Symmetric,
}

impl GroupKind {
    pub fn of(dims: BoardDims) -> GroupKind {
        if dims.rows() % 2 == 1 && dims.cols() % 2 == 1 {
            GroupKind::Alternating
        } else {
            GroupKind::Symmetric
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::Alternating => "alternating",
            GroupKind::Symmetric => "symmetric",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupOrder {
    pub kind: GroupKind,
    pub count: BigCount,
}

/// `(mn)!/2` when both dimensions are odd, `(mn)!` otherwise.
pub fn group_order(dims: BoardDims) -> GroupOrder {
    let kind = GroupKind::of(dims);
    let full = factorial(dims.cell_count());
    let count = match kind {
        GroupKind::Alternating => full / 2u32,
        GroupKind::Symmetric => full,
    };
    GroupOrder { kind, count }
}

pub fn is_solvable(state: &BoardState, dims: BoardDims) -> bool {
    match GroupKind::of(dims) {
        GroupKind::Symmetric => true,
        GroupKind::Alternating => number_to_position(state).parity().is_even(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::generators;

    fn perm(images: &[usize]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    fn dims(m: usize, n: usize) -> BoardDims {
        BoardDims::new(m, n).unwrap()
    }

    #[test]
    fn compose_rules() {
        let p = perm(&[2, 0, 3, 1]);
        let e = Permutation::identity(4);
        assert_eq!(e.compose(&p).unwrap(), p);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());

        // (1 2) then (2 3) on {1,2,3}: 1->3, 2->1, 3->2
        let a = perm(&[1, 0, 2]);
        let b = perm(&[0, 2, 1]);
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab.images(), &[2, 0, 1]);
        assert_eq!(ab.cycle_notation(), "(1 3 2)");

        assert!(matches!(
            a.compose(&Permutation::identity(4)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn parity_examples() {
        assert_eq!(Permutation::identity(5).parity(), Parity::Even);
        assert_eq!(perm(&[1, 0, 2, 3]).parity(), Parity::Odd);
        assert_eq!(perm(&[1, 2, 0, 3]).parity(), Parity::Even);
        assert_eq!(Parity::Odd ^ Parity::Odd, Parity::Even);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn cycle_forms() {
        assert!(Permutation::identity(9).cycles().is_empty());
        let d = dims(3, 3);
        let col = move_permutation(Move::col(1, 1), d).unwrap();
        assert_eq!(col.cycles(), vec![vec![0, 6, 3]]);
        assert_eq!(col.cycle_notation(), "(1 7 4)");
        let row = move_permutation(Move::row(1, 1), dims(2, 2)).unwrap();
        assert_eq!(row.cycle_notation(), "(1 2)");
        let p = perm(&[4, 3, 2, 1, 5, 0]);
        assert_eq!(p.cycle_notation(), "(1 5 6)(2 4)");
        assert_eq!(Permutation::from_cycles(6, &p.cycles()).unwrap(), p);
        assert_eq!(p.order(), 6);
    }

    #[test]
    fn notation_duality() {
        let d = dims(3, 3);
        assert!(number_to_position(&solved_state(d)).is_identity());
        let s = BoardState::parse("3,1,2,6,4,5,0,7,8", d).unwrap();
        let pos = number_to_position(&s);
        assert_eq!(pos.image(0) + 1, 7);
        assert_eq!(position_to_number(&pos, d).unwrap(), s);
    }

    #[test]
    fn group_orders() {
        assert_eq!(group_order(dims(3, 3)).count, BigUint::from(181_440u32));
        assert_eq!(group_order(dims(2, 2)).count, BigUint::from(24u32));
        assert_eq!(group_order(dims(2, 3)).count, BigUint::from(720u32));
        assert_eq!(group_order(dims(3, 5)).count, factorial(15) / 2u32);
        assert_eq!(group_order(dims(3, 5)).kind, GroupKind::Alternating);
        assert_eq!(
            group_order(dims(4, 4)).count,
            BigUint::from(20_922_789_888_000u64)
        );
    }

    #[test]
    fn solvability() {
        let d = dims(3, 3);
        assert!(is_solvable(&solved_state(d), d));
        let swapped = BoardState::parse("1,0,2,3,4,5,6,7,8", d).unwrap();
        assert!(!is_solvable(&swapped, d));
        let swapped = BoardState::parse("1,0,2,3,4,5", dims(2, 3)).unwrap();
        assert!(is_solvable(&swapped, dims(2, 3)));
    }

    #[test]
    fn all_2x2_states_solvable() {
        let d = dims(2, 2);
        let mut cells = vec![0u32, 1, 2, 3];
        let mut count = 0;
        permute_all(&mut cells, 0, &mut |c| {
            count += 1;
            assert!(is_solvable(
                &BoardState::from_cells(c.to_vec(), d).unwrap(),
                d
            ));
        });
        assert_eq!(count, 24);
    }

    fn permute_all(cells: &mut [u32], k: usize, f: &mut impl FnMut(&[u32])) {
        if k == cells.len() {
            f(cells);
            return;
        }
        for i in k..cells.len() {
            cells.swap(k, i);
            permute_all(cells, k + 1, f);
            cells.swap(k, i);
        }
    }

    #[test]
    fn odd_boards_have_even_generators() {
        for (m, n) in [(3, 3), (3, 5), (5, 5)] {
            for g in generators(dims(m, n)) {
                assert!(move_permutation(g, dims(m, n)).unwrap().parity().is_even());
            }
        }
        // an even-length line is an odd permutation
        assert_eq!(
            move_permutation(Move::row(1, 1), dims(3, 4))
                .unwrap()
                .parity(),
            Parity::Odd
        );
    }
}
