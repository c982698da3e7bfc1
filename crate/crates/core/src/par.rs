//! Chunked map over index ranges, run on the rayon pool when the `parallel`
//! feature is enabled and sequentially otherwise.
//!
//! Results are always returned in chunk order, so callers get the same
//! answer whichever execution mode ran.

/// How data-parallel loops are executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Uses rayon if compiled with the `parallel` feature; otherwise identical to `Sequential`.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Splits `0..total` into chunks of `chunk` indices and maps each chunk range.
pub fn map_chunks<T, F>(total: u64, chunk: u64, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(std::ops::Range<u64>) -> T + Sync + Send,
{
    let chunk = chunk.max(1);
    let n_chunks = total.div_ceil(chunk);
    let range_of = |c: u64| {
        let start = c * chunk;
        start..(start + chunk).min(total)
    };
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..n_chunks).into_par_iter().map(|c| f(range_of(c))).collect()
        }
        _ => (0..n_chunks).map(|c| f(range_of(c))).collect(),
    }
}

/// Maps every item of a slice, preserving order.
pub fn map_slice<I, T, F>(items: &[I], exec: Execution, f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunks_cover_range_in_order() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let ranges = map_chunks(10, 3, exec, |r| (r.start, r.end));
            assert_eq!(ranges, vec![(0, 3), (3, 6), (6, 9), (9, 10)]);
            assert!(map_chunks(0, 3, exec, |r| r).is_empty());
        }
    }

    #[test]
    fn slice_map_preserves_order() {
        let xs: Vec<u32> = (0..100).collect();
        let seq = map_slice(&xs, Execution::Sequential, |x| x * x);
        let par = map_slice(&xs, Execution::Parallel, |x| x * x);
        assert_eq!(seq, par);
    }
}
