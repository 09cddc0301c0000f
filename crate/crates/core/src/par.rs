//! Iteration shims: rayon when the `parallel` feature is on, plain iterators
//! otherwise. Call sites use the same adaptor chain either way.

#[cfg(feature = "parallel")]
pub(crate) use rayon::prelude::*;

macro_rules! par_iter {
    ($e:expr) => {{
        #[cfg(feature = "parallel")]
        {
            $e.par_iter()
        }
        #[cfg(not(feature = "parallel"))]
        {
            $e.iter()
        }
    }};
}

macro_rules! into_par_iter {
    ($e:expr) => {{
        #[cfg(feature = "parallel")]
        {
            $e.into_par_iter()
        }
        #[cfg(not(feature = "parallel"))]
        {
            $e.into_iter()
        }
    }};
}

pub(crate) use into_par_iter;
pub(crate) use par_iter;

/// Whether this build runs the data-parallel paths.
pub const fn parallel_enabled() -> bool {
    cfg!(feature = "parallel")
}
