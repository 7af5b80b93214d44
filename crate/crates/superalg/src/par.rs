//! Data-parallel helpers with a sequential fallback.
//!
//! Hot kernels go through this facade: with the `parallel` feature (default)
//! they fan out over rayon, without it they run sequentially. Every helper is
//! position-stable, so both paths produce identical results. The `*_seq`
//! variants are always compiled; benches use them to compare the two paths in
//! one binary.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Minimum work size before fanning out; below this rayon overhead dominates.
pub const PAR_CUTOFF: usize = 32;

pub fn map_vec<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if n >= PAR_CUTOFF {
            return (0..n).into_par_iter().map(f).collect();
        }
    }
    map_vec_seq(n, f)
}

pub fn map_vec_seq<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// First `Some` in index order, or `None`. Deterministic under parallelism.
pub fn find_map_first<T, F>(n: usize, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if n >= PAR_CUTOFF {
            return (0..n).into_par_iter().find_map_first(f);
        }
    }
    find_map_first_seq(n, f)
}

pub fn find_map_first_seq<T, F>(n: usize, f: F) -> Option<T>
where
    F: Fn(usize) -> Option<T>,
{
    (0..n).find_map(f)
}
