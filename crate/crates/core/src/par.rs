//! Data-parallel helpers. With the `parallel` feature (on by default) work
//! is spread over the rayon pool; without it the same calls run
//! sequentially. The `*_sequential` variants are always available so the
//! two paths can be compared side by side.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_sequential(items, f)
    }
}

pub fn map_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Maps `f` over an index range, preserving order.
pub fn map_range<R, F>(range: Range<usize>, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        range.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        range.map(f).collect()
    }
}

/// Largest `f(i)` over the range together with the smallest index
/// attaining it; `None` for an empty range.
pub fn max_over_range<F>(range: Range<u64>, f: F) -> Option<(i64, u64)>
where
    F: Fn(u64) -> i64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        range
            .into_par_iter()
            .map(|i| (f(i), i))
            .reduce_with(pick_max)
    }
    #[cfg(not(feature = "parallel"))]
    {
        max_over_range_sequential(range, f)
    }
}

pub fn max_over_range_sequential<F>(range: Range<u64>, f: F) -> Option<(i64, u64)>
where
    F: Fn(u64) -> i64,
{
    range.map(|i| (f(i), i)).reduce(pick_max)
}

fn pick_max(a: (i64, u64), b: (i64, u64)) -> (i64, u64) {
    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_matches_sequential() {
        let items: Vec<u64> = (0..1000).collect();
        assert_eq!(map(&items, |x| x * x), map_sequential(&items, |x| x * x));
        assert_eq!(map_range(0..5, |i| i + 1), vec![1, 2, 3, 4, 5]);
        let f = |i: u64| -((i as i64 - 300).abs() / 10);
        assert_eq!(
            max_over_range(0..1000, f),
            max_over_range_sequential(0..1000, f)
        );
        assert_eq!(max_over_range(0..1000, f), Some((0, 291)));
        assert_eq!(max_over_range(0..0, f), None);
    }
}
