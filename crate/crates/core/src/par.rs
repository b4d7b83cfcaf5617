//! Index-parallel map. Uses rayon when the `parallel` feature is enabled and
//! runs sequentially otherwise; output order always follows the index.

/// `(0..n).map(f)` collected in index order, evaluated in parallel when
/// the `parallel` feature is on.
#[cfg(feature = "parallel")]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    map_indexed_seq(n, f)
}

/// Always sequential; the reference for [`map_indexed`].
pub fn map_indexed_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Whether [`map_indexed`] runs on the rayon pool.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let f = |i: usize| i * i;
        assert_eq!(map_indexed(100, f), map_indexed_seq(100, f));
    }
}
