//! Process-wide size limit on partition ground sets.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

/// Default bound on `k`; Bell(10) = 115975 partitions.
pub const DEFAULT_K_MAX: usize = 10;

static K_MAX: AtomicUsize = AtomicUsize::new(DEFAULT_K_MAX);

pub fn k_max() -> usize {
    K_MAX.load(Ordering::Relaxed)
}

pub fn set_k_max(k_max: usize) {
    K_MAX.store(k_max, Ordering::Relaxed);
}

pub(crate) fn check_k(k: usize) -> Result<()> {
    let max = k_max();
    if k > max {
        return Err(Error::SizeLimit { k, max });
    }
    Ok(())
}
