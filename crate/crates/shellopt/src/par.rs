//! Parallel/sequential execution switch.
//!
//! With the `parallel` feature (default) the helpers below fan work out over
//! rayon; without it they degrade to plain sequential loops and rayon is not
//! linked at all. A runtime override exists so benchmarks can compare both
//! paths within a single build, and so `--threads 1` means what it says.
//!
//! All helpers preserve input order, so downstream reductions stay
//! deterministic regardless of thread count.

use std::sync::atomic::{AtomicBool, Ordering};

static FORCE_SEQUENTIAL: AtomicBool = AtomicBool::new(false);

/// Force the sequential code path even when the `parallel` feature is on.
pub fn set_sequential_override(enabled: bool) {
    FORCE_SEQUENTIAL.store(enabled, Ordering::Relaxed);
}

pub fn sequential_override() -> bool {
    FORCE_SEQUENTIAL.load(Ordering::Relaxed)
}

/// Map `f` over `0..n`, returning results in index order.
pub fn map_range<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Sync,
{
    #[cfg(feature = "parallel")]
    {
        if !sequential_override() {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(&f).collect();
        }
    }
    map_range_seq(n, f)
}

/// Sequential twin of [`map_range`]; always available for benchmarks.
pub fn map_range_seq<U, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..n).map(f).collect()
}

/// Map `f` over a slice, returning results in input order.
pub fn map_slice<'a, T, U, F>(items: &'a [T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&'a T) -> U + Sync,
{
    #[cfg(feature = "parallel")]
    {
        if !sequential_override() {
            use rayon::prelude::*;
            return items.par_iter().map(&f).collect();
        }
    }
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_range_preserves_order() {
        let v = map_range(100, |i| i * i);
        assert_eq!(v, (0..100).map(|i| i * i).collect::<Vec<_>>());
    }

    #[test]
    fn sequential_override_roundtrip() {
        set_sequential_override(true);
        assert!(sequential_override());
        let v = map_slice(&[1, 2, 3], |x| x + 1);
        assert_eq!(v, vec![2, 3, 4]);
        set_sequential_override(false);
    }
}
