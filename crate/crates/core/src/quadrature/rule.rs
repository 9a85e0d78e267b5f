use serde::Serialize;

use super::tridiag::symmetric_tridiagonal_eigen;
use crate::error::{Error, Result};
use crate::scalar::{CompensatedSum, Real};
use crate::specfun::gamma;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RuleKind<T> {
    /// Integrates `f(x) x^alpha e^{-x}` over `[0, inf)`.
    GeneralizedLaguerre { alpha: T },
    /// Integrates `f(x)` over `[-1, 1]`.
    LegendrePanel,
}

/// Gauss rule: nodes strictly increasing, all weights positive.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureRule<T> {
    kind: RuleKind<T>,
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> QuadratureRule<T> {
    pub fn kind(&self) -> RuleKind<T> {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// `sum_i w_i f(x_i)` with compensated accumulation.
    pub fn integrate(&self, f: impl Fn(T) -> T) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .collect::<CompensatedSum<T>>()
            .value()
    }

    /// Largest polynomial degree integrated exactly, `2n - 1`.
    pub fn exact_degree(&self) -> usize {
        2 * self.order() - 1
    }

    /// `alpha` of a generalized Laguerre rule.
    pub fn laguerre_alpha(&self) -> Option<T> {
        match self.kind {
            RuleKind::GeneralizedLaguerre { alpha } => Some(alpha),
            RuleKind::LegendrePanel => None,
        }
    }

    /// Fails unless this is a Laguerre rule with the given `alpha` that is exact for
    /// polynomials of degree `degree`.
    pub fn require_laguerre(&self, alpha: T, degree: usize) -> Result<()> {
        match self.kind {
            RuleKind::GeneralizedLaguerre { alpha: a }
                if (a - alpha).abs() <= T::of(1e-12) * T::one().max(alpha.abs()) =>
            {
                if self.exact_degree() >= degree {
                    Ok(())
                } else {
                    Err(Error::RuleTooSmall(format!(
                        "order {} integrates degree {} exactly, degree {} needed",
                        self.order(),
                        self.exact_degree(),
                        degree
                    )))
                }
            }
            _ => Err(Error::RuleTooSmall(format!(
                "a generalized Laguerre rule with alpha = {alpha} is required"
            ))),
        }
    }
}

/// Orthonormal three-term recurrence `b_{k+1} p_{k+1} = (x - a_k) p_k - b_k p_{k-1}`.
struct Jacobi<A, B, T> {
    a: A,
    b: B,
    mu0: T,
}

impl<T: Real, A: Fn(usize) -> T, B: Fn(usize) -> T> Jacobi<A, B, T> {
    /// Returns `(q_n(x), q_n'(x), sum_{k<n} p_k(x)^2)` where `q_n = b_n p_n`.
    fn evaluate(&self, n: usize, x: T) -> (T, T, T) {
        let mut p_prev = T::zero();
        let mut dp_prev = T::zero();
        let mut p = T::one() / self.mu0.sqrt();
        let mut dp = T::zero();
        let mut christoffel = CompensatedSum::new();
        for k in 0..n {
            christoffel.add(p * p);
            let bk = if k == 0 { T::zero() } else { (self.b)(k) };
            let q = (x - (self.a)(k)) * p - bk * p_prev;
            let dq = p + (x - (self.a)(k)) * dp - bk * dp_prev;
            if k + 1 == n {
                return (q, dq, christoffel.value());
            }
            let bn = (self.b)(k + 1);
            p_prev = p;
            dp_prev = dp;
            p = q / bn;
            dp = dq / bn;
        }
        unreachable!("n >= 1")
    }

    /// Golub-Welsch nodes, polished by Newton steps on `q_n`, with weights from the
    /// Christoffel function `1 / sum_{k<n} p_k(x)^2`.
    ///
    /// The Christoffel sum has only positive terms, so weights of far-out nodes keep
    /// full relative accuracy; the eigenvector route loses it once `w_i` falls below
    /// `eps * mu0`.
    fn rule(&self, n: usize) -> Result<(Vec<T>, Vec<T>)> {
        let (nodes, _) = self.golub_welsch(n)?;
        let mut polished = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for (i, &x0) in nodes.iter().enumerate() {
            let gap = [i.checked_sub(1).map(|j| x0 - nodes[j]), nodes.get(i + 1).map(|&y| y - x0)]
                .into_iter()
                .flatten()
                .fold(T::infinity(), T::min);
            let mut x = x0;
            for _ in 0..3 {
                let (q, dq, _) = self.evaluate(n, x);
                if dq == T::zero() || !q.is_finite() || !dq.is_finite() {
                    break;
                }
                let step = q / dq;
                if !(step.abs() < T::of(1e-3) * gap) {
                    break;
                }
                x -= step;
                if step.abs() <= T::epsilon() * x.abs() {
                    break;
                }
            }
            let (_, _, sum) = self.evaluate(n, x);
            let w = T::one() / sum;
            if !(w > T::zero()) || !w.is_finite() {
                return Err(Error::Overflow { what: "Christoffel weight" });
            }
            polished.push(x);
            weights.push(w);
        }
        Ok((polished, weights))
    }

    /// Plain Golub-Welsch: eigenvalues and `mu0 * v_0^2` weights.
    fn golub_welsch(&self, n: usize) -> Result<(Vec<T>, Vec<T>)> {
        let diag: Vec<T> = (0..n).map(&self.a).collect();
        let off: Vec<T> = (1..n).map(&self.b).collect();
        let (nodes, first) = symmetric_tridiagonal_eigen(&diag, &off)?;
        let weights = first.iter().map(|&v| self.mu0 * v * v).collect();
        Ok((nodes, weights))
    }
}

fn laguerre_jacobi<T: Real>(
    alpha: T,
) -> Jacobi<impl Fn(usize) -> T, impl Fn(usize) -> T, T> {
    Jacobi {
        a: move |k: usize| T::of_usize(2 * k + 1) + alpha,
        b: move |k: usize| (T::of_usize(k) * (T::of_usize(k) + alpha)).sqrt(),
        mu0: gamma(alpha + T::one()),
    }
}

fn legendre_jacobi<T: Real>() -> Jacobi<impl Fn(usize) -> T, impl Fn(usize) -> T, T> {
    Jacobi {
        a: |_| T::zero(),
        b: |k: usize| {
            let k = T::of_usize(k);
            k / (T::of(4.0) * k * k - T::one()).sqrt()
        },
        mu0: T::of(2.0),
    }
}

/// `n`-point generalized Gauss-Laguerre rule for the weight `x^alpha e^{-x}`.
pub fn gauss_gen_laguerre<T: Real>(n: usize, alpha: T) -> Result<QuadratureRule<T>> {
    if n == 0 {
        return Err(Error::domain("n >= 1", n));
    }
    if !(alpha > -T::one()) {
        return Err(Error::domain("alpha > -1", alpha));
    }
    let (nodes, weights) = laguerre_jacobi(alpha).rule(n)?;
    Ok(QuadratureRule { kind: RuleKind::GeneralizedLaguerre { alpha }, nodes, weights })
}

/// `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre<T: Real>(n: usize) -> Result<QuadratureRule<T>> {
    if n == 0 {
        return Err(Error::domain("n >= 1", n));
    }
    let (nodes, weights) = legendre_jacobi().rule(n)?;
    Ok(QuadratureRule { kind: RuleKind::LegendrePanel, nodes, weights })
}

/// Unpolished Golub-Welsch Laguerre nodes and eigenvector weights.
pub fn golub_welsch_laguerre<T: Real>(n: usize, alpha: T) -> Result<(Vec<T>, Vec<T>)> {
    laguerre_jacobi(alpha).golub_welsch(n)
}
