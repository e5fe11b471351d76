//! Seeded uniform random labeled trees.
//!
//! The generator is fully specified here so corpora can be reproduced by
//! other implementations:
//!
//! 1. The state is initialised as `splitmix64(seed)` (one SplitMix64 step on
//!    `seed`), replaced by `0x9E3779B97F4A7C15` if that is zero.
//! 2. Each draw is one xorshift64* step: `x ^= x >> 12; x ^= x << 25;
//!    x ^= x >> 27; out = x * 0x2545F4914F6CDD1D` (wrapping).
//! 3. A value below `bound` is drawn by rejecting outputs smaller than
//!    `2^64 mod bound` and returning `out % bound` for the first accepted one.
//! 4. A tree on `n >= 3` vertices draws its Prüfer sequence left to right,
//!    entry `k` being `1 + below(n)`, then decodes it by repeatedly joining the
//!    smallest current leaf to the next sequence entry. `n = 2` draws nothing.

use std::collections::BTreeSet;

use super::{Graph, GraphError};

/// xorshift64* seeded through one SplitMix64 step.
#[derive(Clone, Debug)]
pub struct XorShift64Star {
    state: u64,
}

impl XorShift64Star {
    pub fn new(seed: u64) -> Self {
        let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        Self {
            state: if z == 0 { 0x9E37_79B9_7F4A_7C15 } else { z },
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(0x2545_F491_4F6C_DD1D)
    }

    /// Uniform in `0..bound`. `bound` must be nonzero.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return x % bound;
            }
        }
    }
}

/// Decodes a Prüfer sequence over labels `1..=seq.len() + 2`.
pub(crate) fn decode_pruefer(seq: &[usize]) -> Vec<(usize, usize)> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n + 1];
    for &v in seq {
        degree[v] += 1;
    }
    let mut leaves: BTreeSet<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = leaves.pop_first().expect("a tree always has a leaf");
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.insert(v);
        }
    }
    let u = leaves.pop_first().expect("two leaves remain");
    let w = leaves.pop_first().expect("two leaves remain");
    edges.push((u, w));
    edges
}

/// Uniformly random labeled tree on `n >= 2` vertices, deterministic in
/// `(n, seed)`.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(GraphError::TooFewVertices(n));
    }
    let mut rng = XorShift64Star::new(seed);
    let seq: Vec<usize> = (0..n - 2).map(|_| 1 + rng.below(n as u64) as usize).collect();
    Graph::new(n, decode_pruefer(&seq))
}
