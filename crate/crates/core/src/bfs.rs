//! Exact Cayley-graph diameter by layered breadth-first search from the
//! solved board.
//!
//! A neighbour of a depth-`i` state lies at depth `i-1`, `i` or `i+1`, so
//! only three layers are ever kept for deduplication. States are keyed by
//! the Lehmer rank of their cells; when `(mn)!` bits per layer fit the
//! memory budget the layers are dense bitsets, otherwise hash sets of ranks.

use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::board::{generators, shift_line, BoardDims, BoardState, Move};
use crate::error::{Error, Result};
use crate::perm::{factorial, group_order};

/// Largest board (in cells) whose ranks fit a `u64`.
pub const MAX_RANKED_CELLS: usize = 20;

const FACTORIALS: [u64; MAX_RANKED_CELLS + 1] = {
    let mut f = [1u64; MAX_RANKED_CELLS + 1];
    let mut i = 1;
    while i <= MAX_RANKED_CELLS {
        f[i] = f[i - 1] * i as u64;
        i += 1;
    }
    f
};

/// Lehmer-code rank of a state's cells, in `0..(mn)!`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateRank(pub u64);

fn rank_cells<T: Copy + Into<u32>>(cells: &[T]) -> u64 {
    let n = cells.len();
    let mut used = 0u32;
    let mut r = 0u64;
    for (i, &v) in cells.iter().enumerate() {
        let v: u32 = v.into();
        let smaller_unused = v - (used & ((1u32 << v) - 1)).count_ones();
        r += smaller_unused as u64 * FACTORIALS[n - 1 - i];
        used |= 1 << v;
    }
    r
}

fn unrank_into(mut r: u64, out: &mut [u8]) {
    let n = out.len();
    let mut unused: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    for (i, slot) in out.iter_mut().enumerate() {
        let f = FACTORIALS[n - 1 - i];
        let mut k = (r / f) as u32;
        r %= f;
        let mut bits = unused;
        while k > 0 {
            bits &= bits - 1;
            k -= 1;
        }
        let v = bits.trailing_zeros();
        *slot = v as u8;
        unused &= !(1 << v);
    }
}

fn check_rankable(cells: usize) -> Result<()> {
    if cells > MAX_RANKED_CELLS {
        return Err(Error::BudgetExceeded {
            required: format!("ranks over {cells}! states"),
            budget: u64::MAX,
        });
    }
    Ok(())
}

/// Rank of a state. Boards above [`MAX_RANKED_CELLS`] cells cannot be ranked.
pub fn rank(state: &BoardState) -> Result<StateRank> {
    check_rankable(state.len())?;
    Ok(StateRank(rank_cells(state.cells())))
}

pub fn unrank(r: StateRank, dims: BoardDims) -> Result<BoardState> {
    let n = dims.cell_count();
    check_rankable(n)?;
    if r.0 >= FACTORIALS[n] {
        return Err(Error::RankOutOfRange {
            rank: r.0,
            count: FACTORIALS[n],
        });
    }
    let mut buf = vec![0u8; n];
    unrank_into(r.0, &mut buf);
    Ok(BoardState::from_cells_unchecked(
        buf.into_iter().map(u32::from).collect(),
    ))
}

/// Deduplication structure for the three rolling layers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Dedup {
    /// Dense bitsets when they fit the budget, else hash sets.
    #[default]
    Auto,
    DenseBits,
    HashSets,
}

#[derive(Debug, Clone)]
pub struct BfsLimits {
    pub memory_bytes: u64,
    /// Worker threads; `None` uses every core.
    pub threads: Option<usize>,
    pub dedup: Dedup,
}

impl BfsLimits {
    pub const DEFAULT_MEMORY: u64 = 4 << 30;
}

impl Default for BfsLimits {
    fn default() -> Self {
        BfsLimits {
            memory_bytes: Self::DEFAULT_MEMORY,
            threads: None,
            dedup: Dedup::Auto,
        }
    }
}

/// Bytes for three dense layers over the full rank space.
pub fn dense_bytes(dims: BoardDims) -> BigUint {
    let words = (factorial(dims.cell_count()) + 63u32) / 64u32;
    words * 8u32 * 3u32
}

/// Rough bytes for hash-set layers: every reachable rank stored once, at
/// about 16 bytes per entry including table overhead.
pub fn hash_bytes(dims: BoardDims) -> BigUint {
    group_order(dims).count * 16u32
}

/// Per-depth state counts from the solved board.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerHistogram {
    pub dims: BoardDims,
    pub layers: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct HistogramJson {
    rows: usize,
    cols: usize,
    diameter: usize,
    layers: Vec<u64>,
}

impl LayerHistogram {
    pub fn diameter(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn total(&self) -> u64 {
        self.layers.iter().sum()
    }

    pub fn cumulative(&self) -> Vec<u64> {
        self.layers
            .iter()
            .scan(0u64, |acc, &c| {
                *acc += c;
                Some(*acc)
            })
            .collect()
    }

    /// `depth,count,cumulative` with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("depth,count,cumulative\n");
        for (i, (c, s)) in self.layers.iter().zip(self.cumulative()).enumerate() {
            out.push_str(&format!("{i},{c},{s}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&HistogramJson {
            rows: self.dims.rows(),
            cols: self.dims.cols(),
            diameter: self.diameter(),
            layers: self.layers.clone(),
        })
        .expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "histogram",
            token: text.to_string(),
        };
        let raw: HistogramJson = serde_json::from_str(text).map_err(|_| err())?;
        let dims = BoardDims::new(raw.rows, raw.cols)?;
        if raw.layers.is_empty() || raw.layers[0] != 1 || raw.diameter + 1 != raw.layers.len() {
            return Err(err());
        }
        Ok(LayerHistogram {
            dims,
            layers: raw.layers,
        })
    }
}

/// Runs the search to completion, or refuses up front if it cannot fit the
/// budget. Never truncates.
pub fn bfs_diameter(dims: BoardDims, limits: &BfsLimits) -> Result<LayerHistogram> {
    let budget = BigUint::from(limits.memory_bytes);
    let dense = dense_bytes(dims);
    let hash = hash_bytes(dims);
    let over = |need: &BigUint| Error::BudgetExceeded {
        required: need.to_string(),
        budget: limits.memory_bytes,
    };
    let use_dense = match limits.dedup {
        Dedup::DenseBits if dense > budget => return Err(over(&dense)),
        Dedup::DenseBits => true,
        Dedup::HashSets if hash > budget => return Err(over(&hash)),
        Dedup::HashSets => false,
        Dedup::Auto if dense <= budget => true,
        Dedup::Auto if hash <= budget => false,
        Dedup::Auto => return Err(over(&dense.min(hash))),
    };
    check_rankable(dims.cell_count())?;

    let gens = generators(dims);
    let layers = if use_dense {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(t) = limits.threads {
            builder = builder.num_threads(t.max(1));
        }
        let pool = builder.build().expect("thread pool");
        pool.install(|| dense_search(dims, &gens))
    } else {
        hash_search(dims, &gens)
    };
    Ok(LayerHistogram { dims, layers })
}

struct AtomicBits {
    words: Vec<AtomicU64>,
}

impl AtomicBits {
    fn new(bits: u64) -> Self {
        let n = bits.div_ceil(64) as usize;
        AtomicBits {
            words: (0..n).map(|_| AtomicU64::new(0)).collect(),
        }
    }

    #[inline]
    fn contains(&self, i: u64) -> bool {
        self.words[(i / 64) as usize].load(Ordering::Relaxed) & (1 << (i % 64)) != 0
    }

    /// Sets bit `i`; true if it was clear before.
    #[inline]
    fn insert(&self, i: u64) -> bool {
        let mask = 1 << (i % 64);
        self.words[(i / 64) as usize].fetch_or(mask, Ordering::Relaxed) & mask == 0
    }

    fn clear(&self) {
        self.words
            .par_iter()
            .for_each(|w| w.store(0, Ordering::Relaxed));
    }
}

fn dense_search(dims: BoardDims, gens: &[Move]) -> Vec<u64> {
    let n = dims.cell_count();
    let total = FACTORIALS[n];
    let sets = [
        AtomicBits::new(total),
        AtomicBits::new(total),
        AtomicBits::new(total),
    ];
    let (mut prev, mut cur, mut next) = (0, 1, 2);
    sets[cur].insert(0);
    let mut layers = vec![1u64];

    loop {
        let (p, c, x) = (&sets[prev], &sets[cur], &sets[next]);
        let found: u64 = c
            .words
            .par_iter()
            .enumerate()
            .with_min_len(16)
            .map(|(wi, word)| {
                let mut bits = word.load(Ordering::Relaxed);
                let mut base = [0u8; MAX_RANKED_CELLS];
                let mut work = [0u8; MAX_RANKED_CELLS];
                let mut local = 0u64;
                while bits != 0 {
                    let r = wi as u64 * 64 + bits.trailing_zeros() as u64;
                    bits &= bits - 1;
                    unrank_into(r, &mut base[..n]);
                    for g in gens {
                        work[..n].copy_from_slice(&base[..n]);
                        shift_line(&mut work[..n], dims, g.axis, g.index - 1, g.amount as usize);
                        let s = rank_cells(&work[..n]);
                        if !p.contains(s) && !c.contains(s) && x.insert(s) {
                            local += 1;
                        }
                    }
                }
                local
            })
            .sum();
        if found == 0 {
            return layers;
        }
        layers.push(found);
        sets[prev].clear();
        (prev, cur, next) = (cur, next, prev);
    }
}

fn hash_search(dims: BoardDims, gens: &[Move]) -> Vec<u64> {
    let n = dims.cell_count();
    let mut prev: HashSet<u64> = HashSet::new();
    let mut cur: HashSet<u64> = HashSet::from([0]);
    let mut layers = vec![1u64];
    let mut base = [0u8; MAX_RANKED_CELLS];
    let mut work = [0u8; MAX_RANKED_CELLS];
    loop {
        let mut next = HashSet::new();
        for &r in &cur {
            unrank_into(r, &mut base[..n]);
            for g in gens {
                work[..n].copy_from_slice(&base[..n]);
                shift_line(&mut work[..n], dims, g.axis, g.index - 1, g.amount as usize);
                let s = rank_cells(&work[..n]);
                if !prev.contains(&s) && !cur.contains(&s) {
                    next.insert(s);
                }
            }
        }
        if next.is_empty() {
            return layers;
        }
        layers.push(next.len() as u64);
        prev = std::mem::replace(&mut cur, next);
    }
}

/// `(mn)!` as a `u64`, when it fits.
pub fn rank_space(dims: BoardDims) -> Option<u64> {
    factorial(dims.cell_count()).to_u64()
}
