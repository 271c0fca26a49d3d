//! Thin data-parallelism shim.
//!
//! With the default `parallel` feature the long scans fan out over a rayon
//! pool; without it the same code runs sequentially, so the crate builds
//! with no threading dependency at all. Chunk results are concatenated in
//! chunk order, which keeps every report byte-identical across worker
//! counts.

use std::ops::Range;

/// Number of workers the current configuration would use.
pub fn max_workers() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

/// Runs `f` under a pool of `workers` threads (rayon build), or directly in
/// the sequential build where `workers` is ignored.
#[cfg(feature = "parallel")]
pub fn with_workers<R: Send>(workers: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .expect("worker pool")
            .install(f),
        None => f(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_workers<R: Send>(_workers: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    f()
}

/// Splits `0..total` into chunks of `chunk` items, runs `body` on each with
/// a per-worker scratch state from `init`, and concatenates the collected
/// items in chunk order.
#[cfg(feature = "parallel")]
pub(crate) fn chunked_collect<T, S, I, B>(total: u64, chunk: u64, init: I, body: B) -> Vec<T>
where
    T: Send,
    I: Fn() -> S + Sync,
    B: Fn(&mut S, Range<u64>, &mut Vec<T>) + Sync,
{
    use rayon::prelude::*;
    let chunk = chunk.max(1);
    let n_chunks = total.div_ceil(chunk);
    (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * chunk;
            let hi = (lo + chunk).min(total);
            let mut state = init();
            let mut out = Vec::new();
            body(&mut state, lo..hi, &mut out);
            out
        })
        .collect::<Vec<Vec<T>>>()
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn chunked_collect<T, S, I, B>(total: u64, chunk: u64, init: I, body: B) -> Vec<T>
where
    T: Send,
    I: Fn() -> S + Sync,
    B: Fn(&mut S, Range<u64>, &mut Vec<T>) + Sync,
{
    let chunk = chunk.max(1);
    let n_chunks = total.div_ceil(chunk);
    let mut all = Vec::new();
    for c in 0..n_chunks {
        let lo = c * chunk;
        let hi = (lo + chunk).min(total);
        let mut state = init();
        body(&mut state, lo..hi, &mut all);
    }
    all
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunked_collect_preserves_index_order() {
        let squares = chunked_collect(
            1000,
            7,
            || (),
            |_, range, out| {
                for i in range {
                    out.push(i * i);
                }
            },
        );
        let expected: Vec<u64> = (0..1000).map(|i| i * i).collect();
        assert_eq!(squares, expected);
    }
}
