//! Pivoted Cholesky for implicitly defined symmetric positive semidefinite
//! matrices.
//!
//! Only the diagonal and the `K` pivot columns are ever evaluated, so a
//! rank-`K` approximation of an `n × n` matrix costs `O(K²n)` operations.
//! The factor is stored without square roots as `H ≈ Σ aᵣ ℓᵣ ℓᵣᵀ` where
//! `ℓᵣ` is the `pᵣ`-th column of the `r`-th Schur complement and
//! `aᵣ = 1/ℓᵣ[pᵣ]`.

use crate::error::{Error, Result};

/// Default relative stopping tolerance: a small multiple of machine epsilon.
pub const DEFAULT_EPS: f64 = 100.0 * f64::EPSILON;

/// A real symmetric PSD matrix given by its diagonal and its columns.
pub trait PsdMatrixOracle: Sync {
    fn size(&self) -> usize;
    fn diagonal(&self) -> Vec<f64>;
    fn column(&self, j: usize) -> Vec<f64>;
}

/// Dense row-major storage, mostly useful for tests and small problems.
#[derive(Debug, Clone)]
pub struct DenseSymmetric {
    n: usize,
    data: Vec<f64>,
}

impl DenseSymmetric {
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::ContractViolation(format!(
                "dense matrix of size {n} needs {} entries, got {}",
                n * n,
                data.len()
            )));
        }
        Ok(DenseSymmetric { n, data })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        DenseSymmetric { n, data }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }
}

impl PsdMatrixOracle for DenseSymmetric {
    fn size(&self) -> usize {
        self.n
    }

    fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }
}

/// `H ≈ Σ aᵣ ℓᵣ ℓᵣᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct LowRankFactor {
    pub n: usize,
    pub weights: Vec<f64>,
    pub columns: Vec<Vec<f64>>,
    pub pivots: Vec<usize>,
    /// Largest remaining Schur-complement diagonal entry. For a PSD matrix
    /// this bounds every entry of `H − Σ aᵣ ℓᵣ ℓᵣᵀ` (up to rounding).
    pub achieved_tol: f64,
}

impl LowRankFactor {
    pub fn empty(n: usize) -> Self {
        LowRankFactor {
            n,
            weights: Vec::new(),
            columns: Vec::new(),
            pivots: Vec::new(),
            achieved_tol: 0.0,
        }
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    /// Entry `(i, j)` of the approximation.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.weights
            .iter()
            .zip(&self.columns)
            .map(|(a, l)| a * l[i] * l[j])
            .sum()
    }

    /// Densified approximation, row-major.
    pub fn reconstruct(&self) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for (a, l) in self.weights.iter().zip(&self.columns) {
            for i in 0..n {
                let s = a * l[i];
                for j in 0..n {
                    out[i * n + j] += s * l[j];
                }
            }
        }
        out
    }
}

/// `min(n, 8⌈log₂(n+2)⌉ + 40)`.
pub fn default_max_rank(n: usize) -> usize {
    let log2 = (usize::BITS - (n + 1).leading_zeros()) as usize;
    n.min(8 * log2 + 40)
}

/// Greedy max-diagonal pivoted Cholesky.
///
/// Stops at the first `K` with `max(d⁽ᴷ⁾) ≤ eps · max(d⁽⁰⁾)`. Fails with
/// [`Error::RankCapExceeded`] (carrying the partial factor) if that takes
/// more than `max_rank` steps, and with [`Error::NotPsd`] if a diagonal
/// entry drops below `−max(eps, n·ε) · max(d⁽⁰⁾)`.
pub fn pivoted_cholesky<O>(oracle: &O, eps: f64, max_rank: usize) -> Result<LowRankFactor>
where
    O: PsdMatrixOracle + ?Sized,
{
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::ContractViolation(format!(
            "tolerance must be positive, got {eps}"
        )));
    }
    let n = oracle.size();
    let slack = eps.max(n as f64 * f64::EPSILON);
    run(oracle, eps, slack, max_rank.min(n), true)
}

/// Runs exactly `rank` pivot steps (fewer only if the remaining diagonal is
/// identically zero), regardless of any tolerance. Negative diagonal
/// entries down to `−n · ε · max(d⁽⁰⁾)` are treated as rounding.
pub fn pivoted_cholesky_rank<O>(oracle: &O, rank: usize) -> Result<LowRankFactor>
where
    O: PsdMatrixOracle + ?Sized,
{
    let n = oracle.size();
    run(oracle, 0.0, n as f64 * f64::EPSILON, rank.min(n), false)
}

fn run<O>(
    oracle: &O,
    eps: f64,
    slack_eps: f64,
    max_rank: usize,
    stop_on_tol: bool,
) -> Result<LowRankFactor>
where
    O: PsdMatrixOracle + ?Sized,
{
    let n = oracle.size();
    let mut d = oracle.diagonal();
    if d.len() != n {
        return Err(Error::ContractViolation(format!(
            "oracle diagonal has length {}, expected {n}",
            d.len()
        )));
    }
    let d0 = d.iter().copied().fold(0.0, f64::max);
    let slack = slack_eps * d0;
    if let Some((index, &value)) = d.iter().enumerate().find(|(_, v)| **v < -slack) {
        return Err(Error::NotPsd { index, value });
    }

    let mut factor = LowRankFactor::empty(n);
    if d0 <= 0.0 {
        return Ok(factor);
    }
    let threshold = if stop_on_tol { eps * d0 } else { 0.0 };

    loop {
        // argmax, ties to the lowest index
        let (p, dmax) = d
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, &v)| {
                if v > best.1 {
                    (i, v)
                } else {
                    best
                }
            });
        factor.achieved_tol = dmax.max(0.0);
        if dmax <= threshold {
            return Ok(factor);
        }
        if factor.rank() == max_rank {
            if !stop_on_tol {
                return Ok(factor);
            }
            return Err(Error::RankCapExceeded {
                max_rank,
                residual: dmax,
                partial: Box::new(factor),
            });
        }

        let mut col = oracle.column(p);
        if col.len() != n {
            return Err(Error::ContractViolation(format!(
                "oracle column has length {}, expected {n}",
                col.len()
            )));
        }
        // apply the previous Schur steps to the fresh column
        for (a, l) in factor.weights.iter().zip(&factor.columns) {
            let s = l[p] * a;
            if s != 0.0 {
                for (c, li) in col.iter_mut().zip(l) {
                    *c -= s * li;
                }
            }
        }
        let pivot = col[p];
        if pivot.is_nan() || pivot <= 0.0 {
            return Err(Error::NotPsd {
                index: p,
                value: pivot,
            });
        }
        let a = 1.0 / pivot;
        for (i, (di, ci)) in d.iter_mut().zip(&col).enumerate() {
            let v = *di - ci * ci * a;
            if v < 0.0 {
                if v < -slack {
                    return Err(Error::NotPsd { index: i, value: v });
                }
                *di = 0.0;
            } else {
                *di = v;
            }
        }
        d[p] = 0.0;

        factor.weights.push(a);
        factor.columns.push(col);
        factor.pivots.push(p);
    }
}
