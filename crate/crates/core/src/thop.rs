//! Diagonally scaled Toeplitz-dot-Hankel operators `A = D₁ (T ∘ H) D₂`.
//!
//! With `H ≈ Σ aᵣ ℓᵣ ℓᵣᵀ` from pivoted Cholesky, the Hadamard identity
//! `(T ∘ ℓℓᵀ) v = D_ℓ T D_ℓ v` turns one product with `A` into `K`
//! diagonally scaled Toeplitz products sharing one FFT symbol.
//!
//! Some Hankel parts are only positive semidefinite after dropping index 0.
//! For those the plan keeps row 0 of `A` explicitly and runs the low-rank
//! machinery on the trailing block `(A_{jk})_{1 ≤ j,k ≤ N}`.

use crate::error::{Error, Result};
use crate::lowrank::{self, LowRankFactor, PsdMatrixOracle};
use crate::oracle::NeumaierSum;
use crate::toeplitz::ToeplitzOperator;

/// Everything needed to build a [`ConversionPlan`].
///
/// `d1`, `d2` and `toeplitz_row` always have the full length `n`. The
/// Hankel oracle has size `n` normally and size `n − 1` (indices `1..n`)
/// when `first_row` is given; `d1[0]` and `d2[0]` are then ignored.
pub struct PlanInputs<'a> {
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
    /// First row `t₀, t₁, …` of the upper-triangular Toeplitz part.
    pub toeplitz_row: Vec<f64>,
    pub hankel: &'a dyn PsdMatrixOracle,
    pub eps: f64,
    pub max_rank: Option<usize>,
    /// Row 0 of `A`, applied directly.
    pub first_row: Option<Vec<f64>>,
}

/// A reusable fast operator for one conversion at one size.
#[derive(Debug, Clone)]
pub struct ConversionPlan {
    n: usize,
    d1: Vec<f64>,
    d2: Vec<f64>,
    toeplitz: ToeplitzOperator,
    factor: LowRankFactor,
    first_row: Option<Vec<f64>>,
}

impl ConversionPlan {
    pub fn build(inputs: PlanInputs<'_>) -> Result<Self> {
        let PlanInputs {
            d1,
            d2,
            toeplitz_row,
            hankel,
            eps,
            max_rank,
            first_row,
        } = inputs;
        let n = d1.len();
        if d2.len() != n || toeplitz_row.len() != n {
            return Err(Error::ContractViolation(format!(
                "plan inputs disagree in length: d1 {n}, d2 {}, toeplitz {}",
                d2.len(),
                toeplitz_row.len()
            )));
        }
        let offset = usize::from(first_row.is_some());
        if let Some(row) = &first_row {
            if row.len() != n {
                return Err(Error::ContractViolation(format!(
                    "first row has length {}, expected {n}",
                    row.len()
                )));
            }
            if n == 0 {
                return Err(Error::ContractViolation(
                    "cannot split the first row of an empty matrix".into(),
                ));
            }
        }
        let block = n - offset.min(n);
        if hankel.size() != block {
            return Err(Error::ContractViolation(format!(
                "Hankel oracle has size {}, expected {block}",
                hankel.size()
            )));
        }
        let max_rank = max_rank.unwrap_or_else(|| lowrank::default_max_rank(block));
        let factor = lowrank::pivoted_cholesky(hankel, eps, max_rank)?;
        let toeplitz = ToeplitzOperator::upper_triangular(toeplitz_row[..block].to_vec())?;
        Ok(ConversionPlan {
            n,
            d1: d1[offset..].to_vec(),
            d2: d2[offset..].to_vec(),
            toeplitz,
            factor,
            first_row,
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Number of rank-one terms, `K`.
    pub fn rank(&self) -> usize {
        self.factor.rank()
    }

    pub fn factor(&self) -> &LowRankFactor {
        &self.factor
    }

    pub fn toeplitz(&self) -> &ToeplitzOperator {
        &self.toeplitz
    }

    pub fn split_first_row(&self) -> bool {
        self.first_row.is_some()
    }

    fn offset(&self) -> usize {
        usize::from(self.first_row.is_some())
    }

    /// `A · v`.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.n {
            return Err(Error::ContractViolation(format!(
                "vector has length {}, plan has size {}",
                v.len(),
                self.n
            )));
        }
        let offset = self.offset();
        let x: Vec<f64> = v[offset..].iter().zip(&self.d2).map(|(a, b)| a * b).collect();
        let block = x.len();
        let mut acc = vec![0.0; block];

        let terms = &self.factor;
        let k = terms.rank();
        let scaled = |r: usize| -> Vec<f64> {
            terms.columns[r].iter().zip(&x).map(|(l, xi)| l * xi).collect()
        };
        let pairs = k.div_ceil(2);
        crate::par::ordered_accumulate(&mut acc, pairs, |p, out| {
            let r = 2 * p;
            let lr = &terms.columns[r];
            if r + 1 < k {
                let ls = &terms.columns[r + 1];
                let (tu, tv) = self
                    .toeplitz
                    .apply_pair(&scaled(r), &scaled(r + 1))
                    .expect("block sizes agree");
                let (ar, as_) = (terms.weights[r], terms.weights[r + 1]);
                out.extend(
                    (0..block).map(|i| ar * lr[i] * tu[i] + as_ * ls[i] * tv[i]),
                );
            } else {
                let tu = self.toeplitz.apply(&scaled(r)).expect("block sizes agree");
                let ar = terms.weights[r];
                out.extend((0..block).map(|i| ar * lr[i] * tu[i]));
            }
        });

        let mut out = Vec::with_capacity(self.n);
        if let Some(row) = &self.first_row {
            let mut s = NeumaierSum::default();
            for (a, b) in row.iter().zip(v) {
                s.add(a * b);
            }
            out.push(s.total());
        }
        out.extend(acc.iter().zip(&self.d1).map(|(w, d)| w * d));
        // upper triangular: rows past the last nonzero input are exactly zero
        let support = v.iter().rposition(|x| *x != 0.0).map_or(0, |i| i + 1);
        out[support..].fill(0.0);
        Ok(out)
    }

    /// The operator the plan actually applies, densified. Small sizes only.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.n;
        let offset = self.offset();
        let mut out = vec![0.0; n * n];
        if let Some(row) = &self.first_row {
            out[..n].copy_from_slice(row);
        }
        for j in 0..n - offset {
            for k in 0..n - offset {
                let h = self.factor.entry(j, k);
                out[(j + offset) * n + k + offset] =
                    self.d1[j] * self.toeplitz.entry(j, k) * h * self.d2[k];
            }
        }
        out
    }
}
