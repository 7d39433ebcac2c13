// Map-reduce helper: rayon when `parallel` is on, a plain fold otherwise.

use alloc::vec::Vec;

#[cfg(feature = "parallel")]
pub(crate) fn map_reduce<T, R, M, F>(items: Vec<T>, identity: R, map: M, fold: F) -> R
where
    T: Send,
    R: Send + Clone + Sync,
    M: Fn(T) -> R + Sync + Send,
    F: Fn(R, R) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items
        .into_par_iter()
        .map(map)
        .reduce(|| identity.clone(), &fold)
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_reduce<T, R, M, F>(items: Vec<T>, identity: R, map: M, fold: F) -> R
where
    R: Clone,
    M: Fn(T) -> R,
    F: Fn(R, R) -> R,
{
    items.into_iter().map(map).fold(identity, fold)
}

#[cfg(feature = "parallel")]
pub(crate) fn map_collect<T, R, M>(items: Vec<T>, map: M) -> Vec<R>
where
    T: Send,
    R: Send,
    M: Fn(T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(map).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_collect<T, R, M>(items: Vec<T>, map: M) -> Vec<R>
where
    M: Fn(T) -> R,
{
    items.into_iter().map(map).collect()
}
