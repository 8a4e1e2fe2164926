//! Execution mode for the data-parallel loops (exhaustive verification,
//! brute-force counting, solver table construction).
//!
//! With the `parallel` feature (default) both modes are available and
//! [`Exec::default`] is parallel; without it only the sequential path is
//! compiled.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Exec {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

impl Exec {
    /// Maps `f` over `items`, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => items.par_iter().map(f).collect(),
        }
    }

    /// Maps `f` over `0..len`, preserving order.
    pub fn map_range<R, F>(self, len: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            Exec::Sequential => (0..len).map(f).collect(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..len).into_par_iter().map(f).collect(),
        }
    }

    /// Counts indices in `0..len` satisfying `pred`.
    pub fn count_range<F>(self, len: usize, pred: F) -> usize
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        match self {
            Exec::Sequential => (0..len).filter(|&i| pred(i)).count(),
            #[cfg(feature = "parallel")]
            Exec::Parallel => (0..len).into_par_iter().filter(|&i| pred(i)).count(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let items: Vec<u32> = (0..1000).collect();
        let seq = Exec::Sequential.map(&items, |x| x * 3);
        let def = Exec::default().map(&items, |x| x * 3);
        assert_eq!(seq, def);
        assert_eq!(
            Exec::Sequential.count_range(100, |i| i % 7 == 0),
            Exec::default().count_range(100, |i| i % 7 == 0)
        );
    }
}
