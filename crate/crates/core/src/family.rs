//! The single-step conversions that have an explicit entry formula.

use crate::error::{Error, Result};

/// A conversion whose matrix entries are known in closed form.
///
/// `Jacobi` converts `(alpha, beta) → (gamma, beta)`: only the first
/// parameter changes. Every other Jacobi conversion is built from these
/// through the reflection `P_k^{(α,β)}(−x) = (−1)^k P_k^{(β,α)}(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    LegendreToChebyshev,
    ChebyshevToLegendre,
    Ultraspherical { from: f64, to: f64 },
    Jacobi { alpha: f64, beta: f64, gamma: f64 },
    Laguerre { from: f64, to: f64 },
}

impl Family {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Family::LegendreToChebyshev | Family::ChebyshevToLegendre => Ok(()),
            Family::Ultraspherical { from, to } => {
                check_ultraspherical(from)?;
                check_ultraspherical(to)
            }
            Family::Jacobi { alpha, beta, gamma } => {
                check_above_minus_one("Jacobi", alpha)?;
                check_above_minus_one("Jacobi", beta)?;
                check_above_minus_one("Jacobi", gamma)
            }
            Family::Laguerre { from, to } => {
                check_above_minus_one("Laguerre", from)?;
                check_above_minus_one("Laguerre", to)
            }
        }
    }

    /// True when every entry with odd `k − j` vanishes.
    pub fn has_parity(&self) -> bool {
        matches!(
            self,
            Family::LegendreToChebyshev | Family::ChebyshevToLegendre | Family::Ultraspherical { .. }
        )
    }
}

pub(crate) fn check_ultraspherical(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "ultraspherical parameter must be positive, got {lambda}"
        )))
    }
}

pub(crate) fn check_above_minus_one(what: &str, p: f64) -> Result<()> {
    if p > -1.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{what} parameter must exceed -1, got {p}"
        )))
    }
}
