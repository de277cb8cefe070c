use alloc::sync::Arc;
use core::fmt;

/// Work limits for the potentially unbounded computations. Counts are
/// checked inside the algorithms; `stop` is polled periodically so a caller
/// can impose wall-clock or memory limits from outside.
#[derive(Clone)]
pub struct Budget {
    /// Largest Gröbner basis kept alive during one computation.
    pub max_basis: usize,
    /// Largest number of S-pairs reduced in one computation.
    pub max_pairs: usize,
    /// Largest monomial-space dimension `C(N+d−1, d)` for graded work.
    pub max_monomial_space: u128,
    stop: Option<Arc<dyn Fn() -> bool + Send + Sync>>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { max_basis: usize::MAX, max_pairs: usize::MAX, max_monomial_space: u128::MAX, stop: None }
    }

    pub fn with_stop<F: Fn() -> bool + Send + Sync + 'static>(mut self, f: F) -> Self {
        self.stop = Some(Arc::new(f));
        self
    }

    pub fn should_stop(&self) -> bool {
        self.stop.as_ref().map_or(false, |f| f())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_basis: 10_000, max_pairs: 2_000_000, max_monomial_space: 500_000, stop: None }
    }
}

impl fmt::Debug for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Budget")
            .field("max_basis", &self.max_basis)
            .field("max_pairs", &self.max_pairs)
            .field("max_monomial_space", &self.max_monomial_space)
            .field("stop_hook", &self.stop.is_some())
            .finish()
    }
}

/// `C(n+d−1, d)`: number of monomials of degree `d` in `n` variables,
/// saturating at `u128::MAX`.
pub fn monomial_space(n: usize, d: u32) -> u128 {
    let mut acc: u128 = 1;
    for k in 1..=d as u128 {
        acc = match acc.checked_mul(n as u128 + k - 1) {
            Some(v) => v / k,
            None => return u128::MAX,
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(monomial_space(24, 4), 17550);
        assert_eq!(monomial_space(5, 0), 1);
        assert_eq!(monomial_space(3, 2), 6);
    }
}
