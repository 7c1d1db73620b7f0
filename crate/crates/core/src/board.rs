//! Board geometry, states, moves and the generator set.
//!
//! Storage is 0-based and row-major. Positions are numbered `1..=m*n` at the
//! API boundary (`id = n*(x-1) + y` for row `x`, column `y`), tile labels are
//! `0..m*n`. The solved board holds label `p` on the `p`-th cell.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rows and columns of a torus board. Both are at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoardDims {
    rows: usize,
    cols: usize,
}

impl BoardDims {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows < 2 || cols < 2 {
            return Err(Error::InvalidDims { rows, cols });
        }
        Ok(BoardDims { rows, cols })
    }

    pub fn square(n: usize) -> Result<Self> {
        Self::new(n, n)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cell_count(&self) -> usize {
        self.rows * self.cols
    }

    pub fn transposed(&self) -> BoardDims {
        BoardDims {
            rows: self.cols,
            cols: self.rows,
        }
    }

    /// Number of cells on one line of the given axis.
    pub fn line_len(&self, axis: Axis) -> usize {
        match axis {
            Axis::Row => self.cols,
            Axis::Col => self.rows,
        }
    }

    /// Number of lines of the given axis.
    pub fn line_count(&self, axis: Axis) -> usize {
        match axis {
            Axis::Row => self.rows,
            Axis::Col => self.cols,
        }
    }
}

impl fmt::Display for BoardDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// A 1-based position id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position(usize);

impl Position {
    pub fn new(id: usize, dims: BoardDims) -> Result<Self> {
        let max = dims.cell_count();
        if id == 0 || id > max {
            return Err(Error::PositionOutOfRange { id, max });
        }
        Ok(Position(id))
    }

    pub fn from_coords(row: usize, col: usize, dims: BoardDims) -> Result<Self> {
        phi(dims, row, col)
    }

    pub(crate) fn from_index(index: usize) -> Self {
        Position(index + 1)
    }

    pub fn id(self) -> usize {
        self.0
    }

    /// 0-based storage index.
    pub fn index(self) -> usize {
        self.0 - 1
    }

    /// 1-based `(row, col)`.
    pub fn coords(self, dims: BoardDims) -> (usize, usize) {
        let i = self.index();
        (i / dims.cols + 1, i % dims.cols + 1)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Maps 1-based `(row, col)` to the position id `cols*(row-1) + col`.
pub fn phi(dims: BoardDims, row: usize, col: usize) -> Result<Position> {
    if row == 0 || row > dims.rows || col == 0 || col > dims.cols {
        return Err(Error::CoordOutOfRange {
            row,
            col,
            rows: dims.rows,
            cols: dims.cols,
        });
    }
    Ok(Position(dims.cols * (row - 1) + col))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    Row,
    Col,
}

impl Axis {
    pub fn other(self) -> Axis {
        match self {
            Axis::Row => Axis::Col,
            Axis::Col => Axis::Row,
        }
    }

    fn letter(self) -> char {
        match self {
            Axis::Row => 'R',
            Axis::Col => 'C',
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Row => "row",
            Axis::Col => "column",
        })
    }
}

/// One cyclic shift of a single row or column.
///
/// `index` is 1-based. A positive `amount` shifts a row left or a column up;
/// a negative one shifts the other way. Amounts act modulo the line length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub axis: Axis,
    pub index: usize,
    pub amount: i64,
}

impl Move {
    pub fn new(axis: Axis, index: usize, amount: i64) -> Self {
        Move {
            axis,
            index,
            amount,
        }
    }

    pub fn row(index: usize, amount: i64) -> Self {
        Self::new(Axis::Row, index, amount)
    }

    pub fn col(index: usize, amount: i64) -> Self {
        Self::new(Axis::Col, index, amount)
    }

    pub fn inverse(self) -> Self {
        Move {
            amount: -self.amount,
            ..self
        }
    }

    /// Same move with rows and columns exchanged.
    pub fn transposed(self) -> Self {
        Move {
            axis: self.axis.other(),
            ..self
        }
    }

    pub fn check_line(&self, dims: BoardDims) -> Result<()> {
        let max = dims.line_count(self.axis);
        if self.index == 0 || self.index > max {
            return Err(Error::LineOutOfRange {
                axis: self.axis,
                index: self.index,
                max,
            });
        }
        Ok(())
    }

    /// The shift reduced into `0..len`.
    pub fn reduced_amount(&self, dims: BoardDims) -> usize {
        let len = dims.line_len(self.axis) as i64;
        self.amount.rem_euclid(len) as usize
    }

    /// The equivalent generator with amount in `1..len`. Identity shifts are
    /// not generators and are rejected.
    pub fn normalized(self, dims: BoardDims) -> Result<Self> {
        self.check_line(dims)?;
        let k = self.reduced_amount(dims);
        if k == 0 {
            return Err(Error::ZeroShift {
                len: dims.line_len(self.axis),
            });
        }
        Ok(Move {
            amount: k as i64,
            ..self
        })
    }

    /// Parses a single token, also accepting a zero shift.
    pub fn parse_lenient(token: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "move",
            token: token.to_string(),
        };
        let token = token.trim();
        let mut chars = token.chars();
        let axis = match chars.next() {
            Some('R') => Axis::Row,
            Some('C') => Axis::Col,
            _ => return Err(err()),
        };
        let (index, amount) = chars.as_str().split_once(':').ok_or_else(err)?;
        if index.is_empty() || !index.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let index: usize = index.parse().map_err(|_| err())?;
        if index == 0 {
            return Err(err());
        }
        let digits = amount.strip_prefix(['+', '-']).unwrap_or(amount);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let amount: i64 = amount.parse().map_err(|_| err())?;
        Ok(Move::new(axis, index, amount))
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}:{:+}", self.axis.letter(), self.index, self.amount)
    }
}

impl FromStr for Move {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mv = Move::parse_lenient(s)?;
        if mv.amount == 0 {
            return Err(Error::Parse {
                what: "move",
                token: s.to_string(),
            });
        }
        Ok(mv)
    }
}

/// Moves applied left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MoveSequence(Vec<Move>);

impl MoveSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn moves(&self) -> &[Move] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, mv: Move) {
        self.0.push(mv);
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Move> {
        self.0.iter()
    }

    /// The sequence undoing this one.
    pub fn inverse(&self) -> Self {
        self.0.iter().rev().map(|m| m.inverse()).collect()
    }

    pub fn transposed(&self) -> Self {
        self.0.iter().map(|m| m.transposed()).collect()
    }

    /// Whitespace-separated tokens. With `lenient`, zero shifts are accepted
    /// and kept as no-ops.
    pub fn parse(text: &str, lenient: bool) -> Result<Self> {
        text.split_whitespace()
            .map(|tok| {
                if lenient {
                    Move::parse_lenient(tok)
                } else {
                    tok.parse()
                }
            })
            .collect()
    }
}

impl From<Vec<Move>> for MoveSequence {
    fn from(moves: Vec<Move>) -> Self {
        MoveSequence(moves)
    }
}

impl FromIterator<Move> for MoveSequence {
    fn from_iter<I: IntoIterator<Item = Move>>(iter: I) -> Self {
        MoveSequence(iter.into_iter().collect())
    }
}

impl Extend<Move> for MoveSequence {
    fn extend<I: IntoIterator<Item = Move>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl IntoIterator for MoveSequence {
    type Item = Move;
    type IntoIter = std::vec::IntoIter<Move>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a MoveSequence {
    type Item = &'a Move;
    type IntoIter = std::slice::Iter<'a, Move>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for MoveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, mv) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{mv}")?;
        }
        Ok(())
    }
}

impl FromStr for MoveSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MoveSequence::parse(s, false)
    }
}

/// Number-notation: `cells[p]` is the label on 0-based position `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoardState {
    cells: Vec<u32>,
}

impl BoardState {
    pub fn from_cells(cells: Vec<u32>, dims: BoardDims) -> Result<Self> {
        let len = dims.cell_count();
        if cells.len() != len {
            return Err(Error::WrongCellCount {
                expected: len,
                found: cells.len(),
            });
        }
        let mut seen = vec![false; len];
        for &v in &cells {
            let v = v as usize;
            if v >= len {
                return Err(Error::NotAPermutation {
                    len,
                    reason: format!("value {v} out of range"),
                });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotAPermutation {
                    len,
                    reason: format!("duplicate value {v}"),
                });
            }
        }
        Ok(BoardState { cells })
    }

    /// Trusted constructor for cells already known to be a permutation.
    pub(crate) fn from_cells_unchecked(cells: Vec<u32>) -> Self {
        BoardState { cells }
    }

    pub fn parse(text: &str, dims: BoardDims) -> Result<Self> {
        let cells = text
            .split(',')
            .map(|tok| {
                tok.trim().parse::<u32>().map_err(|_| Error::Parse {
                    what: "state",
                    token: tok.trim().to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_cells(cells, dims)
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<u32> {
        self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn value_at(&self, pos: Position) -> u32 {
        self.cells[pos.index()]
    }

    pub fn is_solved(&self) -> bool {
        self.cells.iter().enumerate().all(|(p, &v)| p == v as usize)
    }
}

impl fmt::Display for BoardState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.cells.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub fn solved_state(dims: BoardDims) -> BoardState {
    BoardState {
        cells: (0..dims.cell_count() as u32).collect(),
    }
}

/// Rotates one line of a row-major buffer in place: afterwards the cell at
/// offset `j` of the line holds what was at offset `j + shift`. `line` is
/// 0-based and `shift` already reduced into `0..len`.
pub(crate) fn shift_line<T: Copy>(
    cells: &mut [T],
    dims: BoardDims,
    axis: Axis,
    line: usize,
    shift: usize,
) {
    if shift == 0 {
        return;
    }
    match axis {
        Axis::Row => {
            let start = line * dims.cols;
            cells[start..start + dims.cols].rotate_left(shift);
        }
        Axis::Col => {
            let len = dims.rows;
            let stride = dims.cols;
            let at = |r: usize| r * stride + line;
            // cycle-leader rotation over the strided column
            let cycles = gcd(len, shift);
            for start in 0..cycles {
                let tmp = cells[at(start)];
                let mut j = start;
                loop {
                    let next = (j + shift) % len;
                    if next == start {
                        break;
                    }
                    cells[at(j)] = cells[at(next)];
                    j = next;
                }
                cells[at(j)] = tmp;
            }
        }
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn apply_move_in_place<T: Copy>(
    cells: &mut [T],
    mv: Move,
    dims: BoardDims,
) -> Result<()> {
    mv.check_line(dims)?;
    shift_line(cells, dims, mv.axis, mv.index - 1, mv.reduced_amount(dims));
    Ok(())
}

pub fn apply_move(state: &BoardState, mv: Move, dims: BoardDims) -> Result<BoardState> {
    let mut cells = state.cells.clone();
    apply_move_in_place(&mut cells, mv, dims)?;
    Ok(BoardState { cells })
}

pub fn apply_sequence(
    state: &BoardState,
    seq: &MoveSequence,
    dims: BoardDims,
) -> Result<BoardState> {
    let mut cells = state.cells.clone();
    for &mv in seq {
        apply_move_in_place(&mut cells, mv, dims)?;
    }
    Ok(BoardState { cells })
}

/// Every nontrivial single-line shift: rows first (amounts `1..cols`), then
/// columns (amounts `1..rows`). Closed under inverse.
pub fn generators(dims: BoardDims) -> Vec<Move> {
    let mut out = Vec::with_capacity(dims.rows * (dims.cols - 1) + dims.cols * (dims.rows - 1));
    for axis in [Axis::Row, Axis::Col] {
        let len = dims.line_len(axis) as i64;
        for index in 1..=dims.line_count(axis) {
            for amount in 1..len {
                out.push(Move::new(axis, index, amount));
            }
        }
    }
    out
}

/// One neighbour per generator.
pub fn neighbors(state: &BoardState, dims: BoardDims) -> Vec<BoardState> {
    generators(dims)
        .into_iter()
        .map(|g| {
            let mut cells = state.cells.clone();
            shift_line(&mut cells, dims, g.axis, g.index - 1, g.amount as usize);
            BoardState { cells }
        })
        .collect()
}
