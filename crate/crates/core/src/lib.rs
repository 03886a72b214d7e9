//! Fast conversions between orthogonal polynomial coefficient bases.
//!
//! A conversion matrix `A` between Chebyshev, Legendre, ultraspherical,
//! Jacobi or Laguerre expansions can be written as `A = D₁ (T ∘ H) D₂`
//! with `T` Toeplitz, `H` a positive semidefinite Hankel matrix of low
//! numerical rank, and `D₁`, `D₂` diagonal. Compressing `H` with pivoted
//! Cholesky and applying `T` with the FFT gives an `O(N log² N)` product.
//!
//! ```
//! use polyconv::Converter;
//!
//! // P₂ = (3T₂ + T₀)/4
//! let cheb = Converter::default().leg2cheb(&[0.0, 0.0, 1.0]).unwrap();
//! assert!((cheb[0] - 0.25).abs() < 1e-15);
//! assert!((cheb[2] - 0.75).abs() < 1e-15);
//! ```

pub mod conversions;
pub mod error;
pub mod family;
pub mod lowrank;
pub mod oracle;
pub mod sample;
pub mod special;
pub mod thop;
pub mod toeplitz;

mod par;

pub use conversions::{
    cheb2jac, cheb2leg, jac2cheb, jac2jac, lag2lag, leg2cheb, ultra2ultra, Basis,
    CoefficientVector, Conversion, ConvertOptions, Converter,
};
pub use error::{Error, Result};
pub use family::Family;
pub use lowrank::{pivoted_cholesky, LowRankFactor, PsdMatrixOracle, DEFAULT_EPS};
pub use oracle::{dense_row, direct_apply, DenseConversion, DenseConversionSpec};
pub use sample::decaying_random_vector;
pub use thop::{ConversionPlan, PlanInputs};
pub use toeplitz::ToeplitzOperator;
