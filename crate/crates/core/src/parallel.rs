//! Deterministic fan-out over index ranges.

use std::ops::Range;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Work is always cut into chunks of this many indices, whatever the thread
/// count, so per-chunk partial results are identical between runs.
pub(crate) const CHUNK: u64 = 4096;

/// Applies `f` to consecutive chunks of `0..total` and returns the per-chunk
/// results in index order. `threads = None` uses the global rayon pool.
pub(crate) fn map_chunks<T, F>(total: u64, threads: Option<usize>, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(Range<u64>) -> T + Sync,
{
    let chunks: Vec<Range<u64>> = (0..total.div_ceil(CHUNK))
        .map(|c| c * CHUNK..((c + 1) * CHUNK).min(total))
        .collect();
    let run = || chunks.par_iter().cloned().map(&f).collect::<Vec<T>>();
    match threads {
        None => Ok(run()),
        Some(0) => Err(Error::invalid("threads", "must be at least 1")),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::invalid("threads", e.to_string()))?;
            Ok(pool.install(run))
        }
    }
}
