//! Data-parallel helpers.
//!
//! With the `parallel` feature (on by default) independent work items run on
//! the rayon pool; without it, or with [`Execution::Sequential`], they run on
//! the calling thread. Results are collected in input order either way, so
//! outputs never depend on scheduling.

/// How independent work items are evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether work actually runs on several threads in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Index of the first item satisfying `pred`.
pub(crate) fn position_first<T, F>(exec: Execution, items: &[T], pred: F) -> Option<usize>
where
    T: Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().position_first(pred);
    }
    let _ = exec;
    items.iter().position(pred)
}

pub(crate) fn try_map<T, R, E, F>(exec: Execution, items: &[T], f: F) -> Result<Vec<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
    F: Fn(&T) -> Result<R, E> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_modes_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let a: Result<Vec<u64>, ()> = try_map(Execution::Sequential, &xs, |x| Ok(x * x));
        let b: Result<Vec<u64>, ()> = try_map(Execution::Parallel, &xs, |x| Ok(x * x));
        assert_eq!(a, b);
        assert_eq!(
            position_first(Execution::Parallel, &xs, |&x| x > 500 && x % 7 == 0),
            position_first(Execution::Sequential, &xs, |&x| x > 500 && x % 7 == 0)
        );
    }
}
