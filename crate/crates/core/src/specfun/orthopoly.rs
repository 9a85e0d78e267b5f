//! Three-term recurrences for the classical polynomials used as cross-checks.
//!
//! Generic over [`Field`] so the same code runs in exact rational arithmetic.

use crate::scalar::Field;

/// Generalized Laguerre polynomial `L_n^alpha(x)` by the upward recurrence
/// `(k+1) L_{k+1} = (2k + alpha + 1 - x) L_k - (k + alpha) L_{k-1}`.
pub fn laguerre<F: Field>(n: usize, alpha: &F, x: &F) -> F {
    let mut prev = F::one();
    if n == 0 {
        return prev;
    }
    let mut cur = F::one() + alpha.clone() - x.clone();
    for k in 1..n {
        let kf = F::from_usize_exact(k);
        let next = ((F::from_usize_exact(2 * k + 1) + alpha.clone() - x.clone()) * cur.clone()
            - (kf.clone() + alpha.clone()) * prev)
            / (kf + F::one());
        prev = cur;
        cur = next;
    }
    cur
}

/// Physicists' Hermite polynomial `H_n(x)`: `H_{k+1} = 2x H_k - 2k H_{k-1}`.
pub fn hermite<F: Field>(n: usize, x: &F) -> F {
    let two = F::from_usize_exact(2);
    let mut prev = F::one();
    if n == 0 {
        return prev;
    }
    let mut cur = two.clone() * x.clone();
    for k in 1..n {
        let next = two.clone() * x.clone() * cur.clone() - two.clone() * F::from_usize_exact(k) * prev;
        prev = cur;
        cur = next;
    }
    cur
}
