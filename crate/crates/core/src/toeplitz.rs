//! Toeplitz matrix-vector products via circulant embedding and the FFT.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// An `n × n` Toeplitz matrix `T[j][k] = t(k − j)` with its circulant
/// symbol precomputed.
///
/// The embedding has length `m`, the smallest power of two `≥ 2n − 1`, and
/// holds `[t₀, t₋₁, …, t₋₍ₙ₋₁₎, 0, …, 0, t₍ₙ₋₁₎, …, t₁]`.
#[derive(Clone)]
pub struct ToeplitzOperator {
    n: usize,
    first_column: Vec<f64>,
    first_row: Vec<f64>,
    symbol: Vec<Complex64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for ToeplitzOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ToeplitzOperator")
            .field("n", &self.n)
            .field("embedding", &self.symbol.len())
            .finish()
    }
}

impl ToeplitzOperator {
    pub fn new(first_column: Vec<f64>, first_row: Vec<f64>) -> Result<Self> {
        if first_column.len() != first_row.len() {
            return Err(Error::ContractViolation(format!(
                "first column has length {}, first row {}",
                first_column.len(),
                first_row.len()
            )));
        }
        let n = first_row.len();
        if n > 0 && first_column[0] != first_row[0] {
            return Err(Error::ContractViolation(format!(
                "corner entries disagree: {} vs {}",
                first_column[0], first_row[0]
            )));
        }
        let m = embedding_len(n);
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(m);
        let inverse = planner.plan_fft_inverse(m);

        let mut symbol = vec![Complex64::new(0.0, 0.0); m];
        for (s, &c) in symbol.iter_mut().zip(&first_column) {
            s.re = c;
        }
        for k in 1..n {
            symbol[m - k].re = first_row[k];
        }
        if m > 0 {
            forward.process(&mut symbol);
            // fold the 1/m normalisation of the inverse transform in here
            let scale = 1.0 / m as f64;
            for s in &mut symbol {
                *s *= scale;
            }
        }
        Ok(ToeplitzOperator {
            n,
            first_column,
            first_row,
            symbol,
            forward,
            inverse,
        })
    }

    /// Upper-triangular Toeplitz matrix with first row `t`.
    pub fn upper_triangular(t: Vec<f64>) -> Result<Self> {
        let mut col = vec![0.0; t.len()];
        if let Some(&t0) = t.first() {
            col[0] = t0;
        }
        Self::new(col, t)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Length of the circulant embedding.
    pub fn embedding_len(&self) -> usize {
        self.symbol.len()
    }

    pub fn first_column(&self) -> &[f64] {
        &self.first_column
    }

    pub fn first_row(&self) -> &[f64] {
        &self.first_row
    }

    /// Entry `(j, k)`.
    pub fn entry(&self, j: usize, k: usize) -> f64 {
        if k >= j {
            self.first_row[k - j]
        } else {
            self.first_column[j - k]
        }
    }

    fn check_len(&self, v: &[f64]) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::ContractViolation(format!(
                "vector has length {}, operator has size {}",
                v.len(),
                self.n
            )));
        }
        Ok(())
    }

    fn convolve(&self, buf: &mut [Complex64]) {
        let mut scratch = vec![
            Complex64::new(0.0, 0.0);
            self.forward
                .get_inplace_scratch_len()
                .max(self.inverse.get_inplace_scratch_len())
        ];
        self.forward.process_with_scratch(buf, &mut scratch);
        for (b, s) in buf.iter_mut().zip(&self.symbol) {
            *b *= s;
        }
        self.inverse.process_with_scratch(buf, &mut scratch);
    }

    /// `T · v`.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.check_len(v)?;
        if self.n == 0 {
            return Ok(Vec::new());
        }
        let mut buf = vec![Complex64::new(0.0, 0.0); self.symbol.len()];
        for (b, &x) in buf.iter_mut().zip(v) {
            b.re = x;
        }
        self.convolve(&mut buf);
        let out: Vec<f64> = buf[..self.n].iter().map(|c| c.re).collect();
        debug_assert!({
            let peak = out.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
            let residue = buf[..self.n].iter().fold(0.0_f64, |a, c| a.max(c.im.abs()));
            residue <= 1e-10 * peak.max(f64::MIN_POSITIVE)
                || residue <= 64.0 * f64::EPSILON * self.symbol_scale(v)
        });
        Ok(out)
    }

    /// `(T · u, T · v)` from one complex transform: `T` is real, so the real
    /// and imaginary parts of `T(u + iv)` separate.
    pub fn apply_pair(&self, u: &[f64], v: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
        self.check_len(u)?;
        self.check_len(v)?;
        if self.n == 0 {
            return Ok((Vec::new(), Vec::new()));
        }
        let mut buf = vec![Complex64::new(0.0, 0.0); self.symbol.len()];
        for ((b, &x), &y) in buf.iter_mut().zip(u).zip(v) {
            *b = Complex64::new(x, y);
        }
        self.convolve(&mut buf);
        let tu = buf[..self.n].iter().map(|c| c.re).collect();
        let tv = buf[..self.n].iter().map(|c| c.im).collect();
        Ok((tu, tv))
    }

    fn symbol_scale(&self, v: &[f64]) -> f64 {
        let t = self
            .first_row
            .iter()
            .chain(&self.first_column)
            .fold(0.0_f64, |a, x| a.max(x.abs()));
        let x = v.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
        t * x * self.n as f64
    }

    /// Dense `O(n²)` product, for reference.
    pub fn apply_dense(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.check_len(v)?;
        Ok((0..self.n)
            .map(|j| (0..self.n).map(|k| self.entry(j, k) * v[k]).sum())
            .collect())
    }
}

/// Smallest power of two `≥ 2n − 1`.
pub fn embedding_len(n: usize) -> usize {
    if n == 0 {
        0
    } else {
        (2 * n - 1).next_power_of_two()
    }
}
