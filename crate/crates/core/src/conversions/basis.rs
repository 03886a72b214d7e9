use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::family::{check_above_minus_one, check_ultraspherical};

/// A polynomial basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Basis {
    Chebyshev,
    Legendre,
    Ultraspherical(f64),
    Jacobi(f64, f64),
    Laguerre(f64),
}

impl Basis {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Basis::Chebyshev | Basis::Legendre => Ok(()),
            Basis::Ultraspherical(l) => check_ultraspherical(l),
            Basis::Jacobi(a, b) => {
                check_above_minus_one("Jacobi", a)?;
                check_above_minus_one("Jacobi", b)
            }
            Basis::Laguerre(a) => check_above_minus_one("Laguerre", a),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Basis::Chebyshev => "chebyshev",
            Basis::Legendre => "legendre",
            Basis::Ultraspherical(_) => "ultraspherical",
            Basis::Jacobi(..) => "jacobi",
            Basis::Laguerre(_) => "laguerre",
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            Basis::Chebyshev | Basis::Legendre => Vec::new(),
            Basis::Ultraspherical(l) => vec![l],
            Basis::Jacobi(a, b) => vec![a, b],
            Basis::Laguerre(a) => vec![a],
        }
    }

    pub fn from_parts(tag: &str, params: &[f64]) -> Result<Self> {
        let basis = match (tag.trim().to_ascii_lowercase().as_str(), params) {
            ("chebyshev", []) => Basis::Chebyshev,
            ("legendre", []) => Basis::Legendre,
            ("ultraspherical" | "gegenbauer", [l]) => Basis::Ultraspherical(*l),
            ("jacobi", [a, b]) => Basis::Jacobi(*a, *b),
            ("laguerre", [a]) => Basis::Laguerre(*a),
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "unknown basis '{tag}' with {} parameter(s)",
                    params.len()
                )))
            }
        };
        basis.validate()?;
        Ok(basis)
    }

    /// `λ` for Legendre (`½`) and ultraspherical bases.
    pub(crate) fn ultraspherical_param(&self) -> Option<f64> {
        match *self {
            Basis::Legendre => Some(0.5),
            Basis::Ultraspherical(l) => Some(l),
            _ => None,
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())?;
        let params = self.params();
        if !params.is_empty() {
            let joined: Vec<String> = params.iter().map(|p| p.to_string()).collect();
            write!(f, ":{}", joined.join(","))?;
        }
        Ok(())
    }
}

/// Parses `chebyshev`, `legendre`, `ultraspherical:0.25`, `jacobi:0,0.5`
/// or `laguerre:1.5`.
impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (tag, rest) = match s.split_once(':') {
            Some((t, r)) => (t, Some(r)),
            None => (s, None),
        };
        let params = match rest {
            None => Vec::new(),
            Some(r) => r
                .split(',')
                .map(|p| {
                    p.trim().parse::<f64>().map_err(|_| {
                        Error::InvalidParameter(format!("cannot parse parameter '{p}' in '{s}'"))
                    })
                })
                .collect::<Result<_>>()?,
        };
        Basis::from_parts(tag, &params)
    }
}

/// Expansion coefficients `c₀, …, c_N` in a given basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    pub basis: Basis,
    pub values: Vec<f64>,
}

impl CoefficientVector {
    pub fn new(basis: Basis, values: Vec<f64>) -> Result<Self> {
        basis.validate()?;
        if values.is_empty() {
            return Err(Error::ContractViolation(
                "a coefficient vector needs at least one entry".into(),
            ));
        }
        Ok(CoefficientVector { basis, values })
    }

    /// Polynomial degree `N`.
    pub fn degree(&self) -> usize {
        self.values.len() - 1
    }
}
