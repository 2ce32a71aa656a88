//! Exhaustive search for the largest `E ⊆ F_q^2` whose distance set misses
//! at least one element, for tiny prime `q`.
//!
//! Points are visited in index order `k = x + q·y` and each DFS node carries
//! the distance set of its prefix as a bitmask. Adding points only grows
//! `Δ(E)`, so once the mask is full the whole subtree is complete and can be
//! cut. With pruning on, branches too short to beat the incumbent are cut as
//! well.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{make_prime_field, IndexedField};

pub const CENSUS_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusResult {
    pub schema_version: u32,
    pub q: u64,
    pub pruning: bool,
    pub max_incomplete_size: u64,
    /// Points as `[x, y]` coordinate pairs.
    pub witness_set: Vec<[u32; 2]>,
    /// `Δ(witness_set)`, ascending.
    pub witness_distances: Vec<u32>,
    /// DFS nodes visited, counting the empty set.
    pub subsets_visited: u64,
}

/// A visited subset with the distance mask the search maintained for it.
#[derive(Clone, Debug)]
pub struct CensusSample {
    pub points: Vec<[u32; 2]>,
    pub mask: u32,
}

struct Search {
    n: usize,
    q: u32,
    dist: Vec<u32>,
    full: u32,
    pruning: bool,
    chosen: Vec<usize>,
    best: Vec<usize>,
    best_mask: u32,
    visited: u64,
    sample_stride: u64,
    sample_cap: usize,
    samples: Vec<CensusSample>,
}

impl Search {
    fn point(&self, k: usize) -> [u32; 2] {
        [k as u32 % self.q, k as u32 / self.q]
    }

    fn dfs(&mut self, start: usize, mask: u32) {
        for k in start..self.n {
            if self.pruning && self.chosen.len() + (self.n - k) <= self.best.len() {
                break;
            }
            let row = &self.dist[k * self.n..(k + 1) * self.n];
            let grown = self.chosen.iter().fold(mask | row[k], |m, &j| m | row[j]);
            self.visited += 1;
            let incomplete = grown != self.full;
            if incomplete && self.chosen.len() + 1 > self.best.len() {
                self.best = self.chosen.clone();
                self.best.push(k);
                self.best_mask = grown;
            }
            if self.sample_stride > 0
                && self.visited.is_multiple_of(self.sample_stride)
                && self.samples.len() < self.sample_cap
            {
                let mut points: Vec<_> = self.chosen.iter().map(|&j| self.point(j)).collect();
                points.push(self.point(k));
                self.samples.push(CensusSample { points, mask: grown });
            }
            if incomplete || !self.pruning {
                self.chosen.push(k);
                self.dfs(k + 1, grown);
                self.chosen.pop();
            }
        }
    }
}

/// Census with every `stride`-th visited subset recorded (at most `cap`).
/// `stride = 0` records nothing.
pub fn census_with_samples(
    q: u64,
    pruning: bool,
    stride: u64,
    cap: usize,
) -> Result<(CensusResult, Vec<CensusSample>)> {
    if ![2, 3, 5].contains(&q) {
        return Err(Error::UnsupportedSize(q));
    }
    let field = make_prime_field(q)?;
    let arith = IndexedField::new(&field);
    let qq = q as u32;
    let n = (q * q) as usize;
    let coords = |k: usize| (k as u32 % qq, k as u32 / qq);
    let mut dist = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            let (ax, ay) = coords(a);
            let (bx, by) = coords(b);
            let dx = arith.sub(ax, bx);
            let dy = arith.sub(ay, by);
            dist[a * n + b] = 1 << arith.add(arith.square(dx), arith.square(dy));
        }
    }
    let mut search = Search {
        n,
        q: qq,
        dist,
        full: (1u32 << q) - 1,
        pruning,
        chosen: Vec::new(),
        best: Vec::new(),
        best_mask: 0,
        visited: 1,
        sample_stride: stride,
        sample_cap: cap,
        samples: Vec::new(),
    };
    search.dfs(0, 0);
    let result = CensusResult {
        schema_version: CENSUS_SCHEMA_VERSION,
        q,
        pruning,
        max_incomplete_size: search.best.len() as u64,
        witness_set: search.best.iter().map(|&k| search.point(k)).collect(),
        witness_distances: (0..qq).filter(|d| search.best_mask & (1 << d) != 0).collect(),
        subsets_visited: search.visited,
    };
    Ok((result, search.samples))
}

/// Exact maximum size of a subset of `F_q^2` with incomplete distance set,
/// for `q ∈ {2, 3, 5}`.
pub fn census(q: u64, pruning: bool) -> Result<CensusResult> {
    census_with_samples(q, pruning, 0, 0).map(|(r, _)| r)
}
