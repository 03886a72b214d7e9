//! Diagonals, Toeplitz rows and Hankel symbols of the single-step
//! conversions, and the plans built from them.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::lowrank::PsdMatrixOracle;
use crate::oracle::{DenseConversion, DenseConversionSpec};
use crate::special::{self, pochhammer_ratio, shifted_ratio};
use crate::thop::{ConversionPlan, PlanInputs};
use crate::toeplitz::ToeplitzOperator;

/// Hankel matrix `H[i][j] = h[i + j]` of size `n`.
#[derive(Debug, Clone)]
pub struct HankelOracle {
    n: usize,
    symbol: Vec<f64>,
}

impl HankelOracle {
    /// `symbol` must hold at least `2n − 1` entries.
    pub fn new(n: usize, symbol: Vec<f64>) -> Result<Self> {
        if symbol.len() + 1 < 2 * n {
            return Err(Error::ContractViolation(format!(
                "Hankel symbol of length {} is too short for size {n}",
                symbol.len()
            )));
        }
        Ok(HankelOracle { n, symbol })
    }

    pub fn symbol(&self) -> &[f64] {
        &self.symbol
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.symbol[i + j]
    }
}

impl PsdMatrixOracle for HankelOracle {
    fn size(&self) -> usize {
        self.n
    }

    fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.symbol[2 * i]).collect()
    }

    fn column(&self, j: usize) -> Vec<f64> {
        self.symbol[j..j + self.n].to_vec()
    }
}

/// True when row 0 has to be applied separately because the Hankel part is
/// only positive semidefinite on indices `1..n`.
pub fn splits_first_row(family: &Family) -> bool {
    match *family {
        Family::ChebyshevToLegendre => true,
        Family::Jacobi { alpha, beta, .. } => alpha + beta <= -1.0,
        _ => false,
    }
}

fn fractional_gap(what: &str, from: f64, to: f64) -> Result<()> {
    let gap = to - from;
    if gap.abs() >= 1.0 || gap == gap.round() {
        return Err(Error::InvalidParameter(format!(
            "{what} step {from} -> {to} needs a noninteger gap of magnitude below 1"
        )));
    }
    Ok(())
}

/// The Hankel part of a single-step conversion of size `n`, restricted to
/// indices `1..n` for the families that split their first row.
pub fn hankel_symbol(family: &Family, n: usize) -> Result<HankelOracle> {
    family.validate()?;
    let split = splits_first_row(family);
    let size = if split { n.saturating_sub(1) } else { n };
    let off = if split { 2 } else { 0 };
    let len = (2 * size).saturating_sub(1);
    let symbol = match *family {
        Family::LegendreToChebyshev => special::lambda_sequence(len),
        Family::ChebyshevToLegendre => {
            // Γ(s/2)/Γ((s+3)/2) = Λ((s−1)/2) · 2/(s+1), s ≥ 2
            let lambda = special::lambda_sequence(len + off);
            (0..len)
                .map(|i| {
                    let s = i + off;
                    lambda[s - 1] * 2.0 / (s as f64 + 1.0)
                })
                .collect()
        }
        Family::Ultraspherical { from, to } => {
            fractional_gap("ultraspherical", from, to)?;
            crate::par::map_range(0, len, |s| {
                shifted_ratio(s as f64 / 2.0, from, to + 1.0)
            })
            .into_iter()
            .collect::<Result<_>>()?
        }
        Family::Jacobi { alpha, beta, gamma } => {
            fractional_gap("Jacobi", alpha, gamma)?;
            crate::par::map_range(0, len, |i| {
                shifted_ratio((i + off) as f64, alpha + beta + 1.0, gamma + beta + 2.0)
            })
            .into_iter()
            .collect::<Result<_>>()?
        }
        Family::Laguerre { .. } => vec![1.0; len],
    };
    HankelOracle::new(size, symbol)
}

/// First row of the upper-triangular Toeplitz part.
pub fn toeplitz_row(family: &Family, n: usize) -> Result<Vec<f64>> {
    family.validate()?;
    let even_only = |f: &dyn Fn(usize) -> f64| -> Vec<f64> {
        (0..n).map(|m| if m % 2 == 0 { f(m / 2) } else { 0.0 }).collect()
    };
    Ok(match *family {
        Family::LegendreToChebyshev => {
            let lambda = special::lambda_sequence(n);
            even_only(&|h| lambda[2 * h])
        }
        Family::ChebyshevToLegendre => {
            // Γ(h − ½)/Γ(h + 1) = Λ(h − 1)/h for h ≥ 1
            let lambda = special::lambda_sequence(n.max(1));
            even_only(&|h| {
                if h == 0 {
                    -2.0 * special::SQRT_PI
                } else {
                    lambda[2 * h - 2] / h as f64
                }
            })
        }
        Family::Ultraspherical { from, to } => even_only(&|h| pochhammer_ratio(from - to, h)),
        Family::Jacobi { alpha, gamma, .. } => {
            (0..n).map(|m| pochhammer_ratio(alpha - gamma, m)).collect()
        }
        Family::Laguerre { from, to } => (0..n).map(|m| pochhammer_ratio(from - to, m)).collect(),
    })
}

/// Row and column scalings `(D₁, D₂)`. Entries at index 0 are meaningless
/// for the families that split their first row.
pub fn diagonals(family: &Family, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    family.validate()?;
    Ok(match *family {
        Family::LegendreToChebyshev => {
            let mut d1 = vec![2.0 / PI; n];
            if let Some(d) = d1.first_mut() {
                *d = 1.0 / PI;
            }
            (d1, vec![1.0; n])
        }
        Family::ChebyshevToLegendre => (
            (0..n).map(|j| j as f64 + 0.5).collect(),
            (0..n).map(|k| -(k as f64) / 4.0).collect(),
        ),
        Family::Ultraspherical { from, to } => {
            let pref = shifted_ratio(0.0, to, from)?;
            (
                (0..n).map(|j| pref * (to + j as f64)).collect(),
                vec![1.0; n],
            )
        }
        Family::Jacobi { alpha, beta, gamma } => {
            let d1 = crate::par::map_range(0, n, |j| {
                if j == 0 {
                    if alpha + beta <= -1.0 {
                        return Ok(f64::NAN);
                    }
                    return shifted_ratio(0.0, gamma + beta + 2.0, beta + 1.0);
                }
                let jf = j as f64;
                Ok((2.0 * jf + gamma + beta + 1.0)
                    * shifted_ratio(jf, gamma + beta + 1.0, beta + 1.0)?)
            })
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
            let d2 = crate::par::map_range(0, n, |k| {
                if k == 0 && alpha + beta <= -1.0 {
                    return Ok(f64::NAN);
                }
                shifted_ratio(k as f64, beta + 1.0, alpha + beta + 1.0)
            })
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
            (d1, d2)
        }
        Family::Laguerre { .. } => (vec![1.0; n], vec![1.0; n]),
    })
}

/// Fast operator for a single-step conversion of size `n`.
pub fn build_plan(
    family: &Family,
    n: usize,
    eps: f64,
    max_rank: Option<usize>,
) -> Result<ConversionPlan> {
    let hankel = hankel_symbol(family, n)?;
    let (d1, d2) = diagonals(family, n)?;
    let first_row = if splits_first_row(family) {
        Some(DenseConversion::new(DenseConversionSpec { family: *family, n })?.row(0)?)
    } else {
        None
    };
    ConversionPlan::build(PlanInputs {
        d1,
        d2,
        toeplitz_row: toeplitz_row(family, n)?,
        hankel: &hankel,
        eps,
        max_rank,
        first_row,
    })
}

/// The Laguerre conversion is Toeplitz with no Hankel factor at all.
pub fn laguerre_operator(from: f64, to: f64, n: usize) -> Result<ToeplitzOperator> {
    let family = Family::Laguerre { from, to };
    ToeplitzOperator::upper_triangular(toeplitz_row(&family, n)?)
}
