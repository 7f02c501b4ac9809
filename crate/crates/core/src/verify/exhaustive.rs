use std::time::Instant;

use crate::error::{Error, Result};
use crate::parallel::map_chunks;

use super::report::{Mode, Tally, VerifyReport, WeightSource};
use super::{ceil_sqrt, critical_size, packed_max_degree};

/// Largest `n` enumerated without acknowledgment.
pub const EXHAUSTIVE_CAP: u32 = 4;
/// The one heavier dimension allowed with acknowledgment (about 5.66e8
/// subsets).
pub const HEAVY_EXHAUSTIVE_N: u32 = 5;

const CHUNK: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExhaustiveOptions {
    /// Permits `n = 5`.
    pub allow_heavy: bool,
    pub threads: usize,
}

impl Default for ExhaustiveOptions {
    fn default() -> Self {
        Self {
            allow_heavy: false,
            threads: 1,
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// The `rank`-th `k`-subset of `0..bits` in colexicographic order, which is
/// the increasing-integer order Gosper's hack walks.
fn unrank(bits: u64, k: u64, mut rank: u64) -> u64 {
    let mut mask = 0u64;
    let mut top = bits;
    for i in (1..=k).rev() {
        let mut c = i - 1;
        while c + 1 < top && binomial(c + 1, i) <= rank {
            c += 1;
        }
        rank -= binomial(c, i);
        mask |= 1 << c;
        top = c;
    }
    mask
}

/// Next larger integer with the same popcount.
#[inline]
fn gosper(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// Checks every vertex set of size `2^(n-1) + 1` in `Q^n` against the
/// unweighted bound `Δ(H) >= ⌈√n⌉`.
pub fn verify_exhaustive(n: u32, opts: &ExhaustiveOptions) -> Result<VerifyReport> {
    if n == 0 {
        return Err(Error::InvalidDimension {
            n,
            cap: HEAVY_EXHAUSTIVE_N,
        });
    }
    if n > HEAVY_EXHAUSTIVE_N {
        return Err(Error::ExhaustiveTooLarge {
            n,
            cap: HEAVY_EXHAUSTIVE_N,
        });
    }
    if n > EXHAUSTIVE_CAP && !opts.allow_heavy {
        return Err(Error::HeavyRunNotAcknowledged { n });
    }
    let start = Instant::now();
    let bits = 1u64 << n;
    let k = critical_size(n);
    let total = binomial(bits, k);
    let bound = ceil_sqrt(n);
    let chunks = total.div_ceil(CHUNK) as usize;

    let tallies = map_chunks(opts.threads, chunks, |chunk| {
        let first = chunk as u64 * CHUNK;
        let count = CHUNK.min(total - first);
        let mut per_degree = [0u64; 8];
        let mut tally = Tally::default();
        let mut w = unrank(bits, k, first);
        for step in 0..count {
            let d = packed_max_degree(n, w);
            per_degree[d as usize] += 1;
            if d < bound {
                tally.fail(|| format!("{w:#x}"));
            }
            if step + 1 < count {
                w = gosper(w);
            }
        }
        let lambda = (n as f64).sqrt();
        for (d, &c) in per_degree.iter().enumerate() {
            tally.record(d as f64, d as f64 - lambda, c);
        }
        tally
    })?;
    let tally = tallies.into_iter().fold(Tally::default(), Tally::merge);
    Ok(tally.into_report(
        n,
        WeightSource::Fixed(vec![1.0; n as usize]),
        Mode::Exhaustive,
        true,
        None,
        start.elapsed().as_secs_f64(),
    ))
}
