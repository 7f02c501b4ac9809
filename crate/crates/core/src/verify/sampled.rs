use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clifford::check_dim;
use crate::cube::InducedSubgraph;
use crate::error::{Error, Result};
use crate::parallel::map_chunks;
use crate::weights::WeightVector;

use super::report::{Mode, Tally, VerifyReport, WeightSource};
use super::{check_instance, critical_size, extract_certificate, Tolerances};

/// Default cap on `n` for sampled verification.
pub const SAMPLE_DIM_CAP: u32 = 12;

/// Samples per RNG stream. Sample `i` always comes from stream
/// `i / CHUNK`, so results do not depend on the worker count.
const CHUNK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleOptions {
    /// Probability that an instance also gets a certificate extracted.
    pub certificate_fraction: f64,
    pub threads: usize,
    pub dim_cap: u32,
    pub tolerances: Tolerances,
}

impl Default for SampleOptions {
    fn default() -> Self {
        Self {
            certificate_fraction: 0.01,
            threads: 1,
            dim_cap: SAMPLE_DIM_CAP,
            tolerances: Tolerances::default(),
        }
    }
}

fn draw_weights(rng: &mut ChaCha8Rng, n: u32, max: u32) -> Result<WeightVector> {
    let top = 100 * max;
    WeightVector::new(
        (0..n)
            .map(|_| rng.gen_range(0..=top) as f64 / 100.0)
            .collect(),
    )
}

/// Checks `samples` uniformly random vertex sets of size `2^(n-1) + 1`.
///
/// Each set is drawn by a partial Fisher-Yates shuffle from a ChaCha8
/// stream determined by `seed` and the sample index. A random fraction of
/// instances additionally gets a certificate, which must hold and agree with
/// the combinatorial check.
pub fn verify_sampled(
    n: u32,
    samples: u64,
    seed: u64,
    weights: &WeightSource,
    opts: &SampleOptions,
) -> Result<VerifyReport> {
    check_dim(n)?;
    if n > opts.dim_cap {
        return Err(Error::DimensionCapExceeded {
            n,
            cap: opts.dim_cap,
        });
    }
    let fixed = match weights {
        WeightSource::Fixed(a) => Some(WeightVector::for_dim(n, a.clone())?),
        WeightSource::Random { .. } => None,
    };
    if !(0.0..=1.0).contains(&opts.certificate_fraction) {
        return Err(Error::Config(format!(
            "certificate fraction {} outside [0, 1]",
            opts.certificate_fraction
        )));
    }
    let start = Instant::now();
    let k = critical_size(n) as usize;
    let tol = opts.tolerances;
    let chunks = samples.div_ceil(CHUNK) as usize;

    let tallies = map_chunks(opts.threads, chunks, |chunk| -> Result<Tally> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk as u64);
        let first = chunk as u64 * CHUNK;
        let count = CHUNK.min(samples - first);
        let mut pool: Vec<u32> = (0..1u32 << n).collect();
        let mut subgraph = InducedSubgraph::empty(n)?;
        let mut tally = Tally::default();
        for _ in 0..count {
            let drawn;
            let w = match (&fixed, weights) {
                (Some(w), _) => w,
                (None, WeightSource::Random { random_max }) => {
                    drawn = draw_weights(&mut rng, n, *random_max)?;
                    &drawn
                }
                (None, WeightSource::Fixed(_)) => unreachable!(),
            };
            for i in 0..k {
                let j = rng.gen_range(i..pool.len());
                pool.swap(i, j);
            }
            subgraph.reset_from(&pool[..k])?;
            let certify = rng.gen::<f64>() < opts.certificate_fraction;

            let outcome = check_instance(&subgraph, w, &tol)?;
            tally.record(outcome.max_degree, outcome.slack, 1);
            if !outcome.holds {
                tally.fail(|| subgraph.to_hex());
            }
            if certify && !w.is_zero() {
                tally.certificates += 1;
                let ok = match extract_certificate(&subgraph, w, &tol) {
                    Ok(c) => {
                        c.holds
                            && outcome.holds
                            && c.v0_weighted_degree <= outcome.max_degree + tol.degree
                            && c.inequality_chain().holds(tol.residual)
                    }
                    Err(_) => false,
                };
                if !ok {
                    tally.certificate_failures += 1;
                }
            }
        }
        Ok(tally)
    })?;
    let tally = tallies
        .into_iter()
        .try_fold(Tally::default(), |acc, t| t.map(|t| acc.merge(t)))?;
    let integral = fixed.as_ref().is_some_and(|w| w.is_unit());
    Ok(tally.into_report(
        n,
        weights.clone(),
        Mode::Sample,
        integral,
        Some(seed),
        start.elapsed().as_secs_f64(),
    ))
}
