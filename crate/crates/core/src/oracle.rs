//! Dense `O(N²)` conversions from the explicit entry formulas.
//!
//! Rows are generated on the fly from `O(N)` tables of gamma ratios, so
//! applying a conversion needs only `O(N)` memory. This is both the
//! reference the fast path is tested against and the fast path itself for
//! small `N`. Nothing here touches the low-rank, Toeplitz or plan code.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::special::{self, pochhammer_ratio, shifted_ratio, SQRT_PI};

/// A family together with the matrix size `N + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DenseConversionSpec {
    pub family: Family,
    pub n: usize,
}

#[derive(Debug, Clone)]
enum Tables {
    LegToCheb {
        lambda: Vec<f64>,
    },
    ChebToLeg {
        lambda: Vec<f64>,
    },
    Ultraspherical {
        row_scale: Vec<f64>,
        toeplitz: Vec<f64>,
        hankel: Vec<f64>,
    },
    Jacobi {
        row_scale: Vec<f64>,
        toeplitz: Vec<f64>,
        hankel: Vec<f64>,
        col_scale: Vec<f64>,
    },
    Laguerre {
        toeplitz: Vec<f64>,
    },
}

/// Row-at-a-time evaluator for one conversion matrix.
#[derive(Debug, Clone)]
pub struct DenseConversion {
    spec: DenseConversionSpec,
    tables: Tables,
}

fn value(x: Result<f64>) -> f64 {
    x.unwrap_or(f64::NAN)
}

impl DenseConversion {
    pub fn new(spec: DenseConversionSpec) -> Result<Self> {
        spec.family.validate()?;
        let n = spec.n;
        let tables = match spec.family {
            Family::LegendreToChebyshev => Tables::LegToCheb {
                lambda: special::lambda_sequence(2 * n),
            },
            Family::ChebyshevToLegendre => Tables::ChebToLeg {
                lambda: special::lambda_sequence(2 * n),
            },
            Family::Ultraspherical { from, to } => {
                let g = from - to;
                // Γ(λ₂)/Γ(λ₁) · (j + λ₂)
                let pref = shifted_ratio(0.0, to, from)?;
                Tables::Ultraspherical {
                    row_scale: (0..n).map(|j| pref * (j as f64 + to)).collect(),
                    toeplitz: (0..n.div_ceil(2)).map(|i| pochhammer_ratio(g, i)).collect(),
                    hankel: (0..2 * n)
                        .map(|s| value(shifted_ratio(s as f64 / 2.0, from, to + 1.0)))
                        .collect(),
                }
            }
            Family::Jacobi { alpha, beta, gamma } => Tables::Jacobi {
                row_scale: (0..n)
                    .map(|j| {
                        if j == 0 {
                            // (γ+β+1)Γ(γ+β+1) = Γ(γ+β+2)
                            value(shifted_ratio(0.0, gamma + beta + 2.0, beta + 1.0))
                        } else {
                            let j = j as f64;
                            (2.0 * j + gamma + beta + 1.0)
                                * value(shifted_ratio(j, gamma + beta + 1.0, beta + 1.0))
                        }
                    })
                    .collect(),
                toeplitz: (0..n).map(|m| pochhammer_ratio(alpha - gamma, m)).collect(),
                hankel: (0..2 * n)
                    .map(|s| value(shifted_ratio(s as f64, alpha + beta + 1.0, gamma + beta + 2.0)))
                    .collect(),
                col_scale: (0..n)
                    .map(|k| value(shifted_ratio(k as f64, beta + 1.0, alpha + beta + 1.0)))
                    .collect(),
            },
            Family::Laguerre { from, to } => Tables::Laguerre {
                toeplitz: (0..n).map(|m| pochhammer_ratio(from - to, m)).collect(),
            },
        };
        Ok(DenseConversion { spec, tables })
    }

    pub fn spec(&self) -> DenseConversionSpec {
        self.spec
    }

    pub fn size(&self) -> usize {
        self.spec.n
    }

    /// Entry `(j, k)` of the conversion matrix.
    pub fn entry(&self, j: usize, k: usize) -> f64 {
        if k < j {
            return 0.0;
        }
        let parity_zero = (k - j) % 2 == 1;
        match &self.tables {
            Tables::LegToCheb { lambda } => {
                if parity_zero {
                    0.0
                } else if j == 0 {
                    lambda[k] * lambda[k] / PI
                } else {
                    2.0 / PI * lambda[k - j] * lambda[k + j]
                }
            }
            Tables::ChebToLeg { lambda } => {
                if parity_zero {
                    0.0
                } else if k == j {
                    if j == 0 {
                        1.0
                    } else {
                        SQRT_PI / (2.0 * lambda[2 * j])
                    }
                } else {
                    let (jf, kf) = (j as f64, k as f64);
                    -kf * (jf + 0.5) * (lambda[k - j - 2] / (kf - jf))
                        * (lambda[j + k - 1] / (jf + kf + 1.0))
                }
            }
            Tables::Ultraspherical {
                row_scale,
                toeplitz,
                hankel,
            } => {
                if parity_zero {
                    0.0
                } else {
                    row_scale[j] * toeplitz[(k - j) / 2] * hankel[k + j]
                }
            }
            Tables::Jacobi {
                row_scale,
                toeplitz,
                hankel,
                col_scale,
            } => {
                if k == 0 {
                    1.0
                } else {
                    row_scale[j] * toeplitz[k - j] * hankel[k + j] * col_scale[k]
                }
            }
            Tables::Laguerre { toeplitz } => toeplitz[k - j],
        }
    }

    /// Row `j`, all `N + 1` entries.
    pub fn row(&self, j: usize) -> Result<Vec<f64>> {
        if j >= self.spec.n {
            return Err(Error::ContractViolation(format!(
                "row {j} out of range for size {}",
                self.spec.n
            )));
        }
        Ok((0..self.spec.n).map(|k| self.entry(j, k)).collect())
    }

    /// Matrix-vector product, one compensated dot product per row.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        let n = self.spec.n;
        if v.len() != n {
            return Err(Error::ContractViolation(format!(
                "vector has length {}, conversion has size {n}",
                v.len()
            )));
        }
        let step = if self.spec.family.has_parity() { 2 } else { 1 };
        Ok(crate::par::map_heavy(0, n, |j| {
            let mut sum = NeumaierSum::default();
            for k in (j..n).step_by(step) {
                sum.add(self.entry(j, k) * v[k]);
            }
            sum.total()
        }))
    }

    /// The whole matrix, row-major. Intended for small sizes.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.spec.n;
        let mut out = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                out.push(self.entry(j, k));
            }
        }
        out
    }
}

/// Row `j` of the conversion matrix described by `spec`.
pub fn dense_row(spec: DenseConversionSpec, j: usize) -> Result<Vec<f64>> {
    DenseConversion::new(spec)?.row(j)
}

/// `A · v` by streamed rows.
pub fn direct_apply(family: Family, v: &[f64]) -> Result<Vec<f64>> {
    DenseConversion::new(DenseConversionSpec { family, n: v.len() })?.apply(v)
}

/// Kahan–Babuška–Neumaier summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}
