//! The hypercube `Q^n` and its induced subgraphs.
//!
//! Vertices are the integers `0..2^n`; coordinate `i` (1-based) is bit
//! `i - 1`. A vertex set is a packed bitset and adjacency is computed on the
//! fly.

use crate::clifford::check_dim;
use crate::error::{Error, Result};
use crate::weights::WeightVector;

fn check_vertex(v: u32, n: u32) -> Result<()> {
    if n < 32 && v >> n != 0 {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    Ok(())
}

/// The vertex differing from `v` exactly in coordinate `i` (1-based).
pub fn neighbor(v: u32, i: u32, n: u32) -> Result<u32> {
    check_dim(n)?;
    check_vertex(v, n)?;
    if i == 0 || i > n {
        return Err(Error::CoordinateOutOfRange { coordinate: i, n });
    }
    Ok(v ^ (1 << (i - 1)))
}

/// Subgraph of `Q^n` induced by a vertex set `W`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InducedSubgraph {
    n: u32,
    words: Vec<u64>,
    len: u64,
}

impl InducedSubgraph {
    pub fn empty(n: u32) -> Result<Self> {
        check_dim(n)?;
        let words = vec![0u64; (1usize << n).div_ceil(64)];
        Ok(Self { n, words, len: 0 })
    }

    pub fn full(n: u32) -> Result<Self> {
        let mut h = Self::empty(n)?;
        for v in 0..1u32 << n {
            h.insert(v)?;
        }
        Ok(h)
    }

    pub fn from_vertices(n: u32, vertices: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut h = Self::empty(n)?;
        for v in vertices {
            h.insert(v)?;
        }
        Ok(h)
    }

    /// Parses a hex bitset (optional `0x` prefix): bit `v` set means vertex
    /// `v` is a member.
    pub fn from_hex(n: u32, hex: &str) -> Result<Self> {
        let mut h = Self::empty(n)?;
        h.words = parse_hex_words(hex, 1u64 << n)?;
        h.recount();
        Ok(h)
    }

    /// Builds from the low `2^n` bits of a single word, `n <= 6`.
    pub fn from_word(n: u32, word: u64) -> Result<Self> {
        if n > 6 {
            return Err(Error::Config(format!(
                "single-word vertex sets need n <= 6, got {n}"
            )));
        }
        let mut h = Self::empty(n)?;
        if n < 6 && word >> (1u32 << n) != 0 {
            return Err(Error::TooWide { n });
        }
        h.words[0] = word;
        h.recount();
        Ok(h)
    }

    fn recount(&mut self) {
        self.len = self.words.iter().map(|w| w.count_ones() as u64).sum();
    }

    /// Replaces the members with `vertices`, reusing the allocation.
    pub fn reset_from(&mut self, vertices: &[u32]) -> Result<()> {
        self.words.iter_mut().for_each(|w| *w = 0);
        self.len = 0;
        for &v in vertices {
            self.insert(v)?;
        }
        Ok(())
    }

    pub fn insert(&mut self, v: u32) -> Result<bool> {
        check_vertex(v, self.n)?;
        let (word, bit) = ((v / 64) as usize, v % 64);
        let fresh = self.words[word] >> bit & 1 == 0;
        self.words[word] |= 1 << bit;
        self.len += fresh as u64;
        Ok(fresh)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, v: u32) -> bool {
        (v >> self.n) == 0 && self.words[(v / 64) as usize] >> (v % 64) & 1 == 1
    }

    /// Members in increasing order.
    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros();
                rest &= rest - 1;
                Some(k as u32 * 64 + b)
            })
        })
    }

    pub fn to_hex(&self) -> String {
        let digits = ((1usize << self.n) / 4).max(1);
        let mut s = String::with_capacity(digits + 2);
        s.push_str("0x");
        for d in (0..digits).rev() {
            let nibble = self.words[d / 16] >> ((d % 16) * 4) & 0xf;
            s.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        s
    }

    fn require_member(&self, v: u32) -> Result<()> {
        check_vertex(v, self.n)?;
        if !self.contains(v) {
            return Err(Error::VertexNotInSubgraph { vertex: v });
        }
        Ok(())
    }

    fn check_weights(&self, weights: &WeightVector) -> Result<()> {
        if weights.dim() != self.n {
            return Err(Error::WeightCount {
                expected: self.n as usize,
                got: weights.dim() as usize,
            });
        }
        Ok(())
    }

    #[inline]
    fn degree_unchecked(&self, v: u32) -> u32 {
        (0..self.n).filter(|i| self.contains(v ^ (1 << i))).count() as u32
    }

    #[inline]
    fn weighted_degree_unchecked(&self, v: u32, a: &[f64]) -> f64 {
        a.iter()
            .enumerate()
            .filter(|(i, _)| self.contains(v ^ (1 << i)))
            .map(|(_, w)| w)
            .sum()
    }

    /// Number of members adjacent to `v`.
    pub fn degree(&self, v: u32) -> Result<u32> {
        self.require_member(v)?;
        Ok(self.degree_unchecked(v))
    }

    /// Sum of `a_i` over directions `i` whose neighbour is a member.
    pub fn weighted_degree(&self, v: u32, weights: &WeightVector) -> Result<f64> {
        self.check_weights(weights)?;
        self.require_member(v)?;
        Ok(self.weighted_degree_unchecked(v, weights.as_slice()))
    }

    /// Neighbours of `v` inside the subgraph, paired with their direction
    /// (1-based).
    pub fn neighbors_in(&self, v: u32) -> Result<Vec<(u32, u32)>> {
        self.require_member(v)?;
        Ok((0..self.n)
            .filter_map(|i| {
                let w = v ^ (1 << i);
                self.contains(w).then_some((i + 1, w))
            })
            .collect())
    }

    /// `Δ(H)` and the smallest vertex attaining it.
    pub fn max_degree_unweighted(&self) -> Result<(u32, u32)> {
        let mut best: Option<(u32, u32)> = None;
        for v in self.vertices() {
            let d = self.degree_unchecked(v);
            if best.is_none_or(|(bd, _)| d > bd) {
                best = Some((d, v));
            }
        }
        best.ok_or(Error::EmptySubgraph)
    }

    /// `Δ_a(H)` and the smallest vertex attaining it.
    pub fn max_degree(&self, weights: &WeightVector) -> Result<(f64, u32)> {
        self.check_weights(weights)?;
        let a = weights.as_slice();
        let mut best: Option<(f64, u32)> = None;
        for v in self.vertices() {
            let d = self.weighted_degree_unchecked(v, a);
            if best.is_none_or(|(bd, _)| d > bd) {
                best = Some((d, v));
            }
        }
        best.ok_or(Error::EmptySubgraph)
    }
}

/// Parses a hex string into little-endian words holding at most `bits` bits.
pub(crate) fn parse_hex_words(hex: &str, bits: u64) -> Result<Vec<u64>> {
    let digits = hex
        .trim()
        .strip_prefix("0x")
        .or_else(|| hex.trim().strip_prefix("0X"))
        .unwrap_or(hex.trim());
    let digits = digits.replace('_', "");
    if digits.is_empty() {
        return Err(Error::BadHex(hex.to_string()));
    }
    let nwords = bits.div_ceil(64) as usize;
    let mut words = vec![0u64; nwords];
    for (pos, ch) in digits.chars().rev().enumerate() {
        let nibble = ch
            .to_digit(16)
            .ok_or_else(|| Error::BadHex(hex.to_string()))? as u64;
        if nibble == 0 {
            continue;
        }
        let bit = pos as u64 * 4;
        let top = bit + 63 - (nibble.leading_zeros() as u64);
        if top >= bits {
            return Err(Error::TooWide {
                n: bits.trailing_zeros(),
            });
        }
        words[(bit / 64) as usize] |= nibble << (bit % 64);
    }
    Ok(words)
}

/// Bit-parallel kernels for vertex sets of `Q^n` with `n <= 6`, stored in
/// one `u64` (bit `v` = vertex `v`).
pub mod packed {
    /// Vertices whose coordinate `i` (0-based) is zero, within 64 bits.
    const LOW_HALF: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0f0f_0f0f_0f0f_0f0f,
        0x00ff_00ff_00ff_00ff,
        0x0000_ffff_0000_ffff,
        0x0000_0000_ffff_ffff,
    ];

    /// Members whose neighbour in direction `i` (0-based) is also a member.
    #[inline]
    pub fn has_neighbor(w: u64, i: u32) -> u64 {
        let shift = 1u32 << i;
        let low = LOW_HALF[i as usize];
        let moved = ((w >> shift) & low) | ((w & low) << shift);
        w & moved
    }

    /// Maximum degree of the subgraph induced by `w` in `Q^n`, `n <= 6`.
    ///
    /// Degrees are accumulated in a 3-bit bit-sliced counter per vertex, then
    /// the maximum is read off from the high bit down.
    #[inline]
    pub fn max_degree(n: u32, w: u64) -> u32 {
        debug_assert!(n <= 6);
        let (mut c0, mut c1, mut c2) = (0u64, 0u64, 0u64);
        for i in 0..n {
            let x = has_neighbor(w, i);
            let carry0 = c0 & x;
            c0 ^= x;
            let carry1 = c1 & carry0;
            c1 ^= carry0;
            c2 |= carry1;
        }
        let mut candidates = w;
        let mut best = 0;
        for (bit, plane) in [(2, c2), (1, c1), (0, c0)] {
            if candidates & plane != 0 {
                candidates &= plane;
                best |= 1 << bit;
            }
        }
        best
    }
}
