//! Order-preserving maps over independent work items.
//!
//! With the `parallel` feature (default) [`map_ordered`] runs on the rayon
//! pool; without it, or through [`map_sequential`], it is a plain loop. Both
//! return results in input order.

pub fn map_sequential<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    F: Fn(I) -> T,
{
    items.into_iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_ordered<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Sync + Send,
{
    use rayon::prelude::*;
    items.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_ordered<I, T, F>(items: Vec<I>, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Sync + Send,
{
    map_sequential(items, f)
}

/// How per-item work is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Schedule {
    #[default]
    Auto,
    Sequential,
}

impl Schedule {
    pub fn map<I, T, F>(self, items: Vec<I>, f: F) -> Vec<T>
    where
        I: Send,
        T: Send,
        F: Fn(I) -> T + Sync + Send,
    {
        match self {
            Schedule::Auto => map_ordered(items, f),
            Schedule::Sequential => map_sequential(items, f),
        }
    }
}
