//! Unit-step conversions, which are upper-triangular and banded.

use crate::error::{Error, Result};

/// One raising step of a parameter by exactly 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BandedKind {
    /// `C^{(λ)} → C^{(λ+1)}`; nonzero diagonals 0 and +2.
    Ultraspherical { lambda: f64 },
    /// `P^{(α,β)} → P^{(α+1,β)}`; nonzero diagonals 0 and +1.
    Jacobi { alpha: f64, beta: f64 },
    /// `L^{(α)} → L^{(α+1)}`; diagonal 1 and superdiagonal −1.
    Laguerre { alpha: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandedUpperFactor {
    pub kind: BandedKind,
}

impl BandedUpperFactor {
    pub fn new(kind: BandedKind) -> Self {
        BandedUpperFactor { kind }
    }

    /// Offset of the single nonzero superdiagonal.
    pub fn offset(&self) -> usize {
        match self.kind {
            BandedKind::Ultraspherical { .. } => 2,
            _ => 1,
        }
    }

    /// `(S[j][j], S[j][j + offset])`.
    pub fn entries(&self, j: usize) -> (f64, f64) {
        let jf = j as f64;
        match self.kind {
            BandedKind::Ultraspherical { lambda } => {
                (lambda / (lambda + jf), -lambda / (lambda + jf + 2.0))
            }
            BandedKind::Jacobi { alpha, beta } => {
                let ab = alpha + beta;
                let diag = if j == 0 {
                    1.0
                } else {
                    (ab + jf + 1.0) / (ab + 2.0 * jf + 1.0)
                };
                (diag, -(jf + 1.0 + beta) / (ab + 2.0 * jf + 3.0))
            }
            BandedKind::Laguerre { .. } => (1.0, -1.0),
        }
    }

    /// `S · c`.
    pub fn apply(&self, c: &[f64]) -> Vec<f64> {
        let n = c.len();
        let off = self.offset();
        (0..n)
            .map(|j| {
                let (d, s) = self.entries(j);
                let upper = if j + off < n { s * c[j + off] } else { 0.0 };
                d * c[j] + upper
            })
            .collect()
    }

    /// `S⁻¹ · d` by backward substitution.
    pub fn solve(&self, d: &[f64]) -> Result<Vec<f64>> {
        let n = d.len();
        let off = self.offset();
        let mut c = vec![0.0; n];
        for j in (0..n).rev() {
            let (diag, s) = self.entries(j);
            if diag == 0.0 || !diag.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "banded step {:?} is singular at row {j}",
                    self.kind
                )));
            }
            let upper = if j + off < n { s * c[j + off] } else { 0.0 };
            c[j] = (d[j] - upper) / diag;
        }
        Ok(c)
    }

    /// Dense `n × n` matrix, row-major.
    pub fn to_dense(&self, n: usize) -> Vec<f64> {
        let off = self.offset();
        let mut out = vec![0.0; n * n];
        for j in 0..n {
            let (d, s) = self.entries(j);
            out[j * n + j] = d;
            if j + off < n {
                out[j * n + j + off] = s;
            }
        }
        out
    }
}

/// Moves `c` by an integer number of unit steps, raising with `apply` and
/// lowering with `solve`. `kind_at(p)` is the step from `p` to `p + 1`.
pub(crate) fn integer_steps(
    mut c: Vec<f64>,
    from: f64,
    steps: i64,
    kind_at: impl Fn(f64) -> BandedKind,
) -> Result<Vec<f64>> {
    let mut p = from;
    if steps >= 0 {
        for _ in 0..steps {
            c = BandedUpperFactor::new(kind_at(p)).apply(&c);
            p += 1.0;
        }
    } else {
        for _ in 0..-steps {
            p -= 1.0;
            c = BandedUpperFactor::new(kind_at(p)).solve(&c)?;
        }
    }
    Ok(c)
}
