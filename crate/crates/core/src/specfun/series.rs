use serde::Serialize;

/// Default cap on the number of terms of a non-terminating series.
pub const TERM_CAP: usize = 1_000_000;

/// Value of a truncated series together with its truncation bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesResult<V, T = V> {
    pub value: V,
    pub terms_used: usize,
    /// Estimated magnitude of the neglected tail.
    pub tail_bound: T,
}

impl<V, T: PartialOrd + Copy> SeriesResult<V, T> {
    pub fn converged(&self, tol: T) -> bool {
        self.tail_bound <= tol
    }

    pub fn map<W>(self, f: impl FnOnce(V) -> W) -> SeriesResult<W, T> {
        SeriesResult { value: f(self.value), terms_used: self.terms_used, tail_bound: self.tail_bound }
    }
}
