//! Ordered map over independent work items, on a rayon pool when the
//! `parallel` feature is enabled and sequentially otherwise.
//!
//! Results always come back in input order, so the output of a parallel run is
//! identical to the sequential one.

#[cfg(feature = "parallel")]
use crate::error::Error;
use crate::error::Result;

#[derive(Debug)]
pub struct Executor {
    jobs: usize,
    #[cfg(feature = "parallel")]
    pool: Option<rayon::ThreadPool>,
}

impl Executor {
    pub fn sequential() -> Self {
        Self {
            jobs: 1,
            #[cfg(feature = "parallel")]
            pool: None,
        }
    }

    /// `jobs == 0` means one worker per available core. Without the
    /// `parallel` feature every executor runs sequentially.
    pub fn new(jobs: usize) -> Result<Self> {
        if jobs == 1 {
            return Ok(Self::sequential());
        }
        #[cfg(feature = "parallel")]
        {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
            Ok(Self {
                jobs: pool.current_num_threads(),
                pool: Some(pool),
            })
        }
        #[cfg(not(feature = "parallel"))]
        {
            log::debug!("built without the `parallel` feature; ignoring jobs={jobs}");
            Ok(Self::sequential())
        }
    }

    pub fn jobs(&self) -> usize {
        self.jobs
    }

    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(usize, &T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            use rayon::prelude::*;
            return pool.install(|| {
                items
                    .par_iter()
                    .enumerate()
                    .map(|(i, item)| f(i, item))
                    .collect()
            });
        }
        items.iter().enumerate().map(|(i, item)| f(i, item)).collect()
    }
}

impl Default for Executor {
    fn default() -> Self {
        Self::sequential()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_order() {
        let items: Vec<u64> = (0..1000).collect();
        let seq = Executor::sequential().map(&items, |i, x| x * x + i as u64);
        let par = Executor::new(4).unwrap().map(&items, |i, x| x * x + i as u64);
        assert_eq!(seq, par);
    }
}
