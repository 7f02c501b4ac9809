use rayon::prelude::*;

use crate::error::{Error, Result};

/// Maps `f` over `0..chunks`, on `threads` workers, returning results in
/// chunk order. With one thread no pool is created.
pub(crate) fn map_chunks<T, F>(threads: usize, chunks: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if threads <= 1 {
        return Ok((0..chunks).map(f).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("cannot start {threads} workers: {e}")))?;
    Ok(pool.install(|| (0..chunks).into_par_iter().map(f).collect()))
}
