//! Data-parallel drivers for batch runs.
//!
//! With the `parallel` feature (on by default) work is spread over the rayon
//! pool; without it everything runs on the calling thread. Results come back
//! in index order either way, so aggregates do not depend on scheduling.

/// Applies `f` to `0..len` and collects the results in index order, on the
/// calling thread.
pub fn map_range_sequential<R, F>(len: usize, f: F) -> Vec<R>
where
    F: Fn(usize) -> R,
{
    (0..len).map(f).collect()
}

/// Applies `f` to `0..len` on the rayon pool and collects the results in
/// index order.
#[cfg(feature = "parallel")]
pub fn map_range_parallel<R, F>(len: usize, f: F) -> Vec<R>
where
    F: Fn(usize) -> R + Sync + Send,
    R: Send,
{
    use rayon::prelude::*;
    (0..len).into_par_iter().map(f).collect()
}

/// The default driver: parallel when the feature is enabled.
#[cfg(feature = "parallel")]
pub fn map_range<R, F>(len: usize, f: F) -> Vec<R>
where
    F: Fn(usize) -> R + Sync + Send,
    R: Send,
{
    map_range_parallel(len, f)
}

#[cfg(not(feature = "parallel"))]
pub fn map_range<R, F>(len: usize, f: F) -> Vec<R>
where
    F: Fn(usize) -> R + Sync + Send,
    R: Send,
{
    map_range_sequential(len, f)
}

/// Which driver a batch run uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Auto,
    Sequential,
}

pub fn map_range_with<R, F>(mode: Mode, len: usize, f: F) -> Vec<R>
where
    F: Fn(usize) -> R + Sync + Send,
    R: Send,
{
    match mode {
        Mode::Auto => map_range(len, f),
        Mode::Sequential => map_range_sequential(len, f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drivers_agree_and_keep_order() {
        let f = |i: usize| i * i + 1;
        let seq = map_range_sequential(1000, f);
        assert_eq!(map_range(1000, f), seq);
        assert_eq!(map_range_with(Mode::Sequential, 1000, f), seq);
        assert_eq!(seq[10], 101);
    }
}
