//! Diameter lower bounds by counting canonical move sequences.
//!
//! Adjacent shifts of the same line merge, and shifts of parallel lines
//! commute, so every state at depth `i` is reached by a sequence of length
//! `i` in which consecutive same-axis moves have strictly increasing line
//! indices. Counting those sequences level by level gives `Ω(i) >= |G(i)|`,
//! and the first level where the running total reaches the group order is a
//! lower bound on the diameter.
//!
//! The counts split into two families by the last move, `v` and `h`:
//!
//! ```text
//! level 1:   v = [n-1; m]                h = [m-1; n]
//! level i:   v[k] = (n-1) * (v'[..k] + Σh')   for k in 0..n
//!            h[k] = (m-1) * (h'[..k] + Σv')   for k in 0..m
//! ```
//!
//! where primes denote the previous level and prefix sums clamp to the
//! previous vector's length. On square boards this is the usual symmetric
//! recurrence with `v = h`.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::board::BoardDims;
use crate::perm::{group_order, BigCount};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaLevel {
    pub level: usize,
    pub v: Vec<BigCount>,
    pub h: Vec<BigCount>,
    /// Canonical sequences of exactly this length.
    pub omega: BigCount,
    /// Canonical sequences of length at most `level`.
    pub cumulative: BigCount,
}

/// Endless iterator over levels `0, 1, 2, ...`. Holds one level at a time.
#[derive(Debug, Clone)]
pub struct OmegaLevels {
    dims: BoardDims,
    last: Option<OmegaLevel>,
}

impl OmegaLevels {
    pub fn new(dims: BoardDims) -> Self {
        OmegaLevels { dims, last: None }
    }
}

fn prefix_sums(xs: &[BigUint]) -> Vec<BigUint> {
    let mut out = Vec::with_capacity(xs.len() + 1);
    let mut acc = BigUint::zero();
    out.push(acc.clone());
    for x in xs {
        acc += x;
        out.push(acc.clone());
    }
    out
}

impl Iterator for OmegaLevels {
    type Item = OmegaLevel;

    fn next(&mut self) -> Option<OmegaLevel> {
        let (m, n) = (self.dims.rows(), self.dims.cols());
        let next = match &self.last {
            None => OmegaLevel {
                level: 0,
                v: Vec::new(),
                h: Vec::new(),
                omega: BigUint::one(),
                cumulative: BigUint::one(),
            },
            Some(prev) if prev.level == 0 => {
                let v = vec![BigUint::from(n - 1); m];
                let h = vec![BigUint::from(m - 1); n];
                let omega: BigUint = v.iter().chain(&h).sum();
                OmegaLevel {
                    level: 1,
                    cumulative: &prev.cumulative + &omega,
                    v,
                    h,
                    omega,
                }
            }
            Some(prev) => {
                let pv = prefix_sums(&prev.v);
                let ph = prefix_sums(&prev.h);
                let sum_v = pv.last().unwrap();
                let sum_h = ph.last().unwrap();
                let v: Vec<BigUint> = (0..n)
                    .map(|k| (&pv[k.min(prev.v.len())] + sum_h) * (n - 1))
                    .collect();
                let h: Vec<BigUint> = (0..m)
                    .map(|k| (&ph[k.min(prev.h.len())] + sum_v) * (m - 1))
                    .collect();
                let omega: BigUint = v.iter().chain(&h).sum();
                OmegaLevel {
                    level: prev.level + 1,
                    cumulative: &prev.cumulative + &omega,
                    v,
                    h,
                    omega,
                }
            }
        };
        self.last = Some(next.clone());
        Some(next)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OmegaStop {
    /// Stop at the first level whose cumulative count reaches the target.
    Cumulative(BigCount),
    /// Stop after this level.
    Levels(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaTable {
    pub dims: BoardDims,
    pub levels: Vec<OmegaLevel>,
}

impl OmegaTable {
    pub fn omega(&self, level: usize) -> &BigCount {
        &self.levels[level].omega
    }

    pub fn cumulative(&self, level: usize) -> &BigCount {
        &self.levels[level].cumulative
    }

    /// CSV with columns `i, v1.., h1.., omega, cumulative`; family entries a
    /// level does not have are written as `/`.
    pub fn to_csv(&self, with_families: bool) -> String {
        let width = self.dims.rows().max(self.dims.cols());
        let mut out = String::from("i");
        if with_families {
            for fam in ["v", "h"] {
                for k in 1..=width {
                    let _ = write!(out, ",{fam}{k}");
                }
            }
        }
        out.push_str(",omega,cumulative\n");
        for lvl in &self.levels {
            let _ = write!(out, "{}", lvl.level);
            if with_families {
                for fam in [&lvl.v, &lvl.h] {
                    for k in 0..width {
                        match fam.get(k) {
                            Some(x) => {
                                let _ = write!(out, ",{x}");
                            }
                            None => out.push_str(",/"),
                        }
                    }
                }
            }
            let _ = writeln!(out, ",{},{}", lvl.omega, lvl.cumulative);
        }
        out
    }
}

pub fn omega_series(dims: BoardDims, stop: OmegaStop) -> OmegaTable {
    let mut levels = Vec::new();
    for lvl in OmegaLevels::new(dims) {
        let done = match &stop {
            OmegaStop::Cumulative(target) => &lvl.cumulative >= target,
            OmegaStop::Levels(max) => lvl.level >= *max,
        };
        levels.push(lvl);
        if done {
            break;
        }
    }
    OmegaTable { dims, levels }
}

/// Smallest `L` with `Σ_{k<=L} Ω(k) >= |G|`. The diameter is at least `L`.
pub fn lower_bound(dims: BoardDims) -> usize {
    let order = group_order(dims).count;
    OmegaLevels::new(dims)
        .find(|lvl| lvl.cumulative >= order)
        .map(|lvl| lvl.level)
        .expect("counts grow without bound")
}

/// Lower bounds for every board from 2x2 up to `max_rows x max_cols`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundGrid {
    pub max_rows: usize,
    pub max_cols: usize,
    cells: Vec<usize>,
}

impl BoundGrid {
    pub fn get(&self, rows: usize, cols: usize) -> Option<usize> {
        if !(2..=self.max_rows).contains(&rows) || !(2..=self.max_cols).contains(&cols) {
            return None;
        }
        Some(self.cells[(rows - 2) * (self.max_cols - 1) + (cols - 2)])
    }

    /// Rows of bounds, first row for 2 rows.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells
            .chunks(self.max_cols - 1)
            .map(<[usize]>::to_vec)
            .collect()
    }

    /// Header `rows,2,3,...` then one line per row count.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("rows");
        for c in 2..=self.max_cols {
            let _ = write!(out, ",{c}");
        }
        out.push('\n');
        for (i, row) in self.rows().iter().enumerate() {
            let _ = write!(out, "{}", i + 2);
            for b in row {
                let _ = write!(out, ",{b}");
            }
            out.push('\n');
        }
        out
    }
}

pub fn lower_bound_table(max_rows: usize, max_cols: usize) -> crate::Result<BoundGrid> {
    BoardDims::new(max_rows, max_cols)?;
    let mut cells = Vec::with_capacity((max_rows - 1) * (max_cols - 1));
    for m in 2..=max_rows {
        for n in 2..=max_cols {
            cells.push(lower_bound(BoardDims::new(m, n)?));
        }
    }
    Ok(BoundGrid {
        max_rows,
        max_cols,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{generators, Move};

    fn dims(m: usize, n: usize) -> BoardDims {
        BoardDims::new(m, n).unwrap()
    }

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    /// Counts generator sequences of each length whose adjacent same-axis
    /// moves have strictly increasing line index, by plain enumeration.
    fn canonical_counts(d: BoardDims, max_len: usize) -> Vec<u64> {
        fn walk(gens: &[Move], last: Option<Move>, left: usize, len: usize, counts: &mut [u64]) {
            counts[len] += 1;
            if left == 0 {
                return;
            }
            for &g in gens {
                if let Some(p) = last {
                    if p.axis == g.axis && p.index >= g.index {
                        continue;
                    }
                }
                walk(gens, Some(g), left - 1, len + 1, counts);
            }
        }
        let gens = generators(d);
        let mut counts = vec![0; max_len + 1];
        walk(&gens, None, max_len, 0, &mut counts);
        counts
    }

    #[test]
    fn square_boards_match_enumeration() {
        for (n, depth) in [(2, 6), (3, 4), (4, 3)] {
            let d = dims(n, n);
            let table = omega_series(d, OmegaStop::Levels(depth));
            let brute = canonical_counts(d, depth);
            for (lvl, want) in table.levels.iter().zip(brute) {
                assert_eq!(lvl.omega, big(want), "{d} level {}", lvl.level);
            }
        }
    }

    #[test]
    fn three_by_three_series() {
        let t = omega_series(dims(3, 3), OmegaStop::Levels(4));
        let omegas: Vec<_> = t.levels.iter().map(|l| l.omega.clone()).collect();
        assert_eq!(omegas, [1u64, 12, 96, 736, 5664].map(big));
    }

    #[test]
    fn four_by_four_head() {
        let t = omega_series(dims(4, 4), OmegaStop::Levels(3));
        assert_eq!(t.omega(1), &big(24));
        assert_eq!(t.omega(2), &big(396));
        assert_eq!(t.omega(3), &big(6264));
        assert_eq!(t.levels[2].v, [36u64, 45, 54, 63].map(big));
        assert_eq!(t.levels[2].v, t.levels[2].h);
    }

    #[test]
    fn first_level_is_generator_count() {
        for (m, n) in [(2, 2), (2, 5), (3, 7), (6, 4)] {
            let d = dims(m, n);
            let t = omega_series(d, OmegaStop::Levels(1));
            assert_eq!(t.omega(0), &big(1));
            assert_eq!(t.omega(1), &big(generators(d).len() as u64));
        }
    }

    #[test]
    fn stop_rules() {
        let d = dims(4, 4);
        let t = omega_series(d, OmegaStop::Cumulative(group_order(d).count));
        assert_eq!(t.levels.len(), 12);
        assert_eq!(t.cumulative(11), &big(26_703_866_863_933));
        assert!(t.cumulative(10) < &group_order(d).count);
        for w in t.levels.windows(2) {
            assert!(w[0].cumulative < w[1].cumulative);
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(lower_bound(dims(4, 4)), 11);
        assert_eq!(lower_bound(dims(3, 3)), 6);
        assert_eq!(lower_bound(dims(2, 5)), 7);
        assert_eq!(lower_bound(dims(3, 6)), 13);
        assert_eq!(lower_bound(dims(7, 4)), 20);
    }

    #[test]
    fn grid_shape_and_csv() {
        let g = lower_bound_table(3, 4).unwrap();
        assert_eq!(g.get(2, 2), Some(3));
        assert_eq!(g.get(3, 4), Some(9));
        assert_eq!(g.get(4, 4), None);
        assert_eq!(g.to_csv(), "rows,2,3,4\n2,3,4,6\n3,4,6,9\n");
        assert!(lower_bound_table(1, 4).is_err());
    }

    #[test]
    fn table_csv_layout() {
        let t = omega_series(dims(2, 3), OmegaStop::Levels(2));
        let csv = t.to_csv(true);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "i,v1,v2,v3,h1,h2,h3,omega,cumulative");
        assert_eq!(lines[1], "0,/,/,/,/,/,/,1,1");
        assert_eq!(lines[2], "1,2,2,/,1,1,1,7,8");
        assert_eq!(t.to_csv(false).lines().nth(2), Some("1,7,8"));
    }
}
