//! Conversion entry points, case dispatch and the plan cache.
//!
//! Every conversion changes one parameter at a time. Integer gaps go
//! through banded unit steps; a noninteger gap first takes unit steps
//! toward the target until less than 1 remains, then finishes with one
//! fast plan (or the dense direct product for small `N`).

mod banded;
mod basis;
mod symbols;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

pub use banded::{BandedKind, BandedUpperFactor};
pub use basis::{Basis, CoefficientVector};
pub use symbols::{
    build_plan, diagonals, hankel_symbol, laguerre_operator, splits_first_row, toeplitz_row,
    HankelOracle,
};

use crate::error::{Error, Result};
use crate::family::{check_above_minus_one, check_ultraspherical, Family};
use crate::lowrank::DEFAULT_EPS;
use crate::oracle::{DenseConversion, DenseConversionSpec};
use crate::special::{self, shifted_ratio, SQRT_PI};
use crate::thop::ConversionPlan;
use crate::toeplitz::ToeplitzOperator;

/// Gaps within this distance of an integer take the banded path.
pub const INTEGER_GAP_TOL: f64 = 1e-12;

/// Degrees up to this use the dense direct product by default.
pub const DEFAULT_DIRECT_THRESHOLD: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvertOptions {
    /// Relative tolerance for the pivoted Cholesky factorisations.
    pub eps: f64,
    /// Conversions of degree `N ≤ direct_threshold` use the dense product.
    pub direct_threshold: usize,
    /// Rank cap for the factorisations; `None` uses the default cap.
    pub max_rank: Option<usize>,
}

impl Default for ConvertOptions {
    fn default() -> Self {
        ConvertOptions {
            eps: DEFAULT_EPS,
            direct_threshold: DEFAULT_DIRECT_THRESHOLD,
            max_rank: None,
        }
    }
}

impl ConvertOptions {
    /// Always use the fast path, whatever the size.
    pub fn fast_only() -> Self {
        ConvertOptions {
            direct_threshold: 0,
            ..Default::default()
        }
    }

    /// Always use the dense direct product.
    pub fn direct_only() -> Self {
        ConvertOptions {
            direct_threshold: usize::MAX,
            ..Default::default()
        }
    }
}

/// Output of [`Converter::convert`].
#[derive(Debug, Clone)]
pub struct Conversion {
    pub coefficients: CoefficientVector,
    /// Rank `K` of every plan applied, in order.
    pub ranks: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct PlanKey {
    family: u8,
    params: [u64; 3],
    n: usize,
    eps: u64,
    max_rank: Option<usize>,
}

#[derive(Debug, Clone)]
enum Cached {
    Plan(Arc<ConversionPlan>),
    Toeplitz(Arc<ToeplitzOperator>),
}

/// Converts coefficient vectors and caches the fast operators it builds.
///
/// Plans are keyed by family, parameters, size and tolerance, so a
/// repeated conversion only pays for the matrix-vector product. The cache
/// is shared safely between threads.
#[derive(Debug, Default)]
pub struct Converter {
    options: ConvertOptions,
    cache: RwLock<HashMap<PlanKey, Cached>>,
}

type Trace = Vec<usize>;

impl Converter {
    pub fn new(options: ConvertOptions) -> Self {
        Converter {
            options,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn options(&self) -> &ConvertOptions {
        &self.options
    }

    pub fn clear_cache(&self) {
        self.cache.write().expect("plan cache poisoned").clear();
    }

    pub fn cache_len(&self) -> usize {
        self.cache.read().expect("plan cache poisoned").len()
    }

    fn key(&self, family: &Family, n: usize) -> PlanKey {
        let (tag, p) = match *family {
            Family::LegendreToChebyshev => (0, [0.0; 3]),
            Family::ChebyshevToLegendre => (1, [0.0; 3]),
            Family::Ultraspherical { from, to } => (2, [from, to, 0.0]),
            Family::Jacobi { alpha, beta, gamma } => (3, [alpha, beta, gamma]),
            Family::Laguerre { from, to } => (4, [from, to, 0.0]),
        };
        PlanKey {
            family: tag,
            params: p.map(f64::to_bits),
            n,
            eps: self.options.eps.to_bits(),
            max_rank: self.options.max_rank,
        }
    }

    fn cached(&self, key: &PlanKey) -> Option<Cached> {
        self.cache.read().expect("plan cache poisoned").get(key).cloned()
    }

    fn insert(&self, key: PlanKey, value: Cached) -> Cached {
        self.cache
            .write()
            .expect("plan cache poisoned")
            .entry(key)
            .or_insert(value)
            .clone()
    }

    /// The fast plan for a single-step conversion, built on first use.
    pub fn plan(&self, family: &Family, n: usize) -> Result<Arc<ConversionPlan>> {
        let key = self.key(family, n);
        if let Some(Cached::Plan(p)) = self.cached(&key) {
            return Ok(p);
        }
        let plan = build_plan(family, n, self.options.eps, self.options.max_rank)?;
        match self.insert(key, Cached::Plan(Arc::new(plan))) {
            Cached::Plan(p) => Ok(p),
            Cached::Toeplitz(_) => unreachable!("plan keys never hold Toeplitz operators"),
        }
    }

    fn laguerre_toeplitz(&self, from: f64, to: f64, n: usize) -> Result<Arc<ToeplitzOperator>> {
        let key = self.key(&Family::Laguerre { from, to }, n);
        if let Some(Cached::Toeplitz(t)) = self.cached(&key) {
            return Ok(t);
        }
        let op = laguerre_operator(from, to, n)?;
        match self.insert(key, Cached::Toeplitz(Arc::new(op))) {
            Cached::Toeplitz(t) => Ok(t),
            Cached::Plan(_) => unreachable!("Laguerre keys never hold plans"),
        }
    }

    fn use_direct(&self, n: usize) -> bool {
        n.saturating_sub(1) <= self.options.direct_threshold
    }

    /// One single-step family: dense product for small sizes, plan otherwise.
    fn apply_family(&self, family: Family, c: Vec<f64>, trace: &mut Trace) -> Result<Vec<f64>> {
        let n = c.len();
        if self.use_direct(n) {
            return DenseConversion::new(DenseConversionSpec { family, n })?.apply(&c);
        }
        if let Family::Laguerre { from, to } = family {
            let mut out = self.laguerre_toeplitz(from, to, n)?.apply(&c)?;
            let support = c.iter().rposition(|x| *x != 0.0).map_or(0, |i| i + 1);
            out[support..].fill(0.0);
            return Ok(out);
        }
        let plan = self.plan(&family, n)?;
        trace.push(plan.rank());
        plan.apply(&c)
    }

    /// Moves one parameter from `from` to `to`.
    fn change_parameter(
        &self,
        c: Vec<f64>,
        from: f64,
        to: f64,
        kind_at: impl Fn(f64) -> BandedKind,
        family: impl Fn(f64, f64) -> Family,
        trace: &mut Trace,
    ) -> Result<Vec<f64>> {
        if from == to {
            return Ok(c);
        }
        let gap = to - from;
        let whole = gap.round();
        if (gap - whole).abs() < INTEGER_GAP_TOL {
            return banded::integer_steps(c, from, whole as i64, kind_at);
        }
        if self.use_direct(c.len()) {
            return self.apply_family(family(from, to), c, trace);
        }
        let steps = gap.trunc();
        let c = banded::integer_steps(c, from, steps as i64, kind_at)?;
        self.apply_family(family(from + steps, to), c, trace)
    }

    fn check_len(c: &[f64]) -> Result<()> {
        if c.is_empty() {
            return Err(Error::ContractViolation(
                "a coefficient vector needs at least one entry".into(),
            ));
        }
        Ok(())
    }

    fn leg2cheb_traced(&self, c: &[f64], trace: &mut Trace) -> Result<Vec<f64>> {
        Self::check_len(c)?;
        self.apply_family(Family::LegendreToChebyshev, c.to_vec(), trace)
    }

    fn cheb2leg_traced(&self, c: &[f64], trace: &mut Trace) -> Result<Vec<f64>> {
        Self::check_len(c)?;
        self.apply_family(Family::ChebyshevToLegendre, c.to_vec(), trace)
    }

    fn ultra2ultra_traced(&self, c: &[f64], from: f64, to: f64, trace: &mut Trace) -> Result<Vec<f64>> {
        Self::check_len(c)?;
        check_ultraspherical(from)?;
        check_ultraspherical(to)?;
        self.change_parameter(
            c.to_vec(),
            from,
            to,
            |lambda| BandedKind::Ultraspherical { lambda },
            |from, to| Family::Ultraspherical { from, to },
            trace,
        )
    }

    /// Changes only the first Jacobi parameter.
    fn jacobi_first(&self, c: Vec<f64>, alpha: f64, beta: f64, gamma: f64, trace: &mut Trace) -> Result<Vec<f64>> {
        self.change_parameter(
            c,
            alpha,
            gamma,
            |alpha| BandedKind::Jacobi { alpha, beta },
            |alpha, gamma| Family::Jacobi { alpha, beta, gamma },
            trace,
        )
    }

    fn jac2jac_traced(
        &self,
        c: &[f64],
        (alpha, beta): (f64, f64),
        (gamma, delta): (f64, f64),
        trace: &mut Trace,
    ) -> Result<Vec<f64>> {
        Self::check_len(c)?;
        for p in [alpha, beta, gamma, delta] {
            check_above_minus_one("Jacobi", p)?;
        }
        let mut c = c.to_vec();
        if beta != delta {
            // P_k^{(α,β)}(x) = (−1)^k P_k^{(β,α)}(−x)
            negate_odd(&mut c);
            c = self.jacobi_first(c, beta, alpha, delta, trace)?;
            negate_odd(&mut c);
        }
        self.jacobi_first(c, alpha, delta, gamma, trace)
    }

    fn lag2lag_traced(&self, c: &[f64], from: f64, to: f64, trace: &mut Trace) -> Result<Vec<f64>> {
        Self::check_len(c)?;
        check_above_minus_one("Laguerre", from)?;
        check_above_minus_one("Laguerre", to)?;
        self.change_parameter(
            c.to_vec(),
            from,
            to,
            |alpha| BandedKind::Laguerre { alpha },
            |from, to| Family::Laguerre { from, to },
            trace,
        )
    }

    fn jac2cheb_traced(&self, c: &[f64], alpha: f64, beta: f64, trace: &mut Trace) -> Result<Vec<f64>> {
        let mut out = self.jac2jac_traced(c, (alpha, beta), (-0.5, -0.5), trace)?;
        for (x, s) in out.iter_mut().zip(chebyshev_scale(c.len())) {
            *x *= s;
        }
        Ok(out)
    }

    fn cheb2jac_traced(&self, c: &[f64], alpha: f64, beta: f64, trace: &mut Trace) -> Result<Vec<f64>> {
        Self::check_len(c)?;
        let scaled: Vec<f64> = c.iter().zip(chebyshev_scale(c.len())).map(|(x, s)| x / s).collect();
        self.jac2jac_traced(&scaled, (-0.5, -0.5), (alpha, beta), trace)
    }

    /// Legendre to Chebyshev.
    pub fn leg2cheb(&self, c: &[f64]) -> Result<Vec<f64>> {
        self.leg2cheb_traced(c, &mut Vec::new())
    }

    /// Chebyshev to Legendre.
    pub fn cheb2leg(&self, c: &[f64]) -> Result<Vec<f64>> {
        self.cheb2leg_traced(c, &mut Vec::new())
    }

    /// `C^{(from)}` to `C^{(to)}`.
    pub fn ultra2ultra(&self, c: &[f64], from: f64, to: f64) -> Result<Vec<f64>> {
        self.ultra2ultra_traced(c, from, to, &mut Vec::new())
    }

    /// `P^{(α,β)}` to `P^{(γ,δ)}`.
    pub fn jac2jac(&self, c: &[f64], from: (f64, f64), to: (f64, f64)) -> Result<Vec<f64>> {
        self.jac2jac_traced(c, from, to, &mut Vec::new())
    }

    /// `P^{(α,β)}` to Chebyshev.
    pub fn jac2cheb(&self, c: &[f64], alpha: f64, beta: f64) -> Result<Vec<f64>> {
        self.jac2cheb_traced(c, alpha, beta, &mut Vec::new())
    }

    /// Chebyshev to `P^{(α,β)}`.
    pub fn cheb2jac(&self, c: &[f64], alpha: f64, beta: f64) -> Result<Vec<f64>> {
        self.cheb2jac_traced(c, alpha, beta, &mut Vec::new())
    }

    /// `L^{(from)}` to `L^{(to)}`.
    pub fn lag2lag(&self, c: &[f64], from: f64, to: f64) -> Result<Vec<f64>> {
        self.lag2lag_traced(c, from, to, &mut Vec::new())
    }

    /// Converts between any two supported bases.
    ///
    /// Legendre is treated as `C^{(1/2)}` and `P^{(0,0)}`. Ultraspherical
    /// bases reach Jacobi and Chebyshev bases through the proportionality
    /// `C_k^{(λ)} = (2λ)_k/(λ+½)_k · P_k^{(λ−½,λ−½)}`.
    pub fn convert(&self, c: &CoefficientVector, to: Basis) -> Result<Conversion> {
        let from = c.basis;
        from.validate()?;
        to.validate()?;
        let v = &c.values;
        Self::check_len(v)?;
        let mut trace = Vec::new();
        let values = match (from, to) {
            _ if from == to => v.clone(),
            (Basis::Laguerre(a), Basis::Laguerre(b)) => self.lag2lag_traced(v, a, b, &mut trace)?,
            (Basis::Laguerre(_), _) | (_, Basis::Laguerre(_)) => {
                return Err(Error::InvalidParameter(format!(
                    "cannot convert between {from} and {to}"
                )))
            }
            (Basis::Legendre, Basis::Chebyshev) => self.leg2cheb_traced(v, &mut trace)?,
            (Basis::Chebyshev, Basis::Legendre) => self.cheb2leg_traced(v, &mut trace)?,
            _ => match (from.ultraspherical_param(), to.ultraspherical_param()) {
                (Some(a), Some(b)) => self.ultra2ultra_traced(v, a, b, &mut trace)?,
                _ => self.via_jacobi(v, from, to, &mut trace)?,
            },
        };
        Ok(Conversion {
            coefficients: CoefficientVector::new(to, values)?,
            ranks: trace,
        })
    }

    fn via_jacobi(&self, v: &[f64], from: Basis, to: Basis, trace: &mut Trace) -> Result<Vec<f64>> {
        let n = v.len();
        let jacobi = |b: Basis| match b {
            Basis::Legendre => Some((0.0, 0.0)),
            Basis::Ultraspherical(l) => Some((l - 0.5, l - 0.5)),
            Basis::Jacobi(a, b) => Some((a, b)),
            _ => None,
        };
        let mut w = v.to_vec();
        if let Basis::Ultraspherical(l) = from {
            for (x, s) in w.iter_mut().zip(ultraspherical_scale(l, n)?) {
                *x *= s;
            }
        }
        let mut out = match (jacobi(from), jacobi(to)) {
            (Some(p), Some(q)) => self.jac2jac_traced(&w, p, q, trace)?,
            (Some((a, b)), None) => self.jac2cheb_traced(&w, a, b, trace)?,
            (None, Some((a, b))) => self.cheb2jac_traced(&w, a, b, trace)?,
            (None, None) => w,
        };
        if let Basis::Ultraspherical(l) = to {
            for (x, s) in out.iter_mut().zip(ultraspherical_scale(l, n)?) {
                *x /= s;
            }
        }
        Ok(out)
    }
}

fn negate_odd(c: &mut [f64]) {
    for x in c.iter_mut().skip(1).step_by(2) {
        *x = -*x;
    }
}

/// `P_k^{(−½,−½)}(1) = Λ(k)/√π`, so that `T_k = P_k^{(−½,−½)}/P_k^{(−½,−½)}(1)`.
fn chebyshev_scale(n: usize) -> Vec<f64> {
    let lambda = special::lambda_sequence((2 * n).saturating_sub(1));
    lambda.iter().step_by(2).map(|l| l / SQRT_PI).collect()
}

/// `(2λ)_k / (λ+½)_k`, the factor with `C_k^{(λ)} = r_k P_k^{(λ−½,λ−½)}`.
fn ultraspherical_scale(lambda: f64, n: usize) -> Result<Vec<f64>> {
    let pref = shifted_ratio(0.0, lambda + 0.5, 2.0 * lambda)?;
    (0..n)
        .map(|k| Ok(shifted_ratio(k as f64, 2.0 * lambda, lambda + 0.5)? * pref))
        .collect()
}

/// Legendre to Chebyshev with a private converter.
pub fn leg2cheb(c: &[f64], eps: f64) -> Result<Vec<f64>> {
    with_eps(eps).leg2cheb(c)
}

/// Chebyshev to Legendre with a private converter.
pub fn cheb2leg(c: &[f64], eps: f64) -> Result<Vec<f64>> {
    with_eps(eps).cheb2leg(c)
}

/// Ultraspherical to ultraspherical with a private converter.
pub fn ultra2ultra(c: &[f64], from: f64, to: f64, eps: f64) -> Result<Vec<f64>> {
    with_eps(eps).ultra2ultra(c, from, to)
}

/// Jacobi to Jacobi with a private converter.
pub fn jac2jac(c: &[f64], from: (f64, f64), to: (f64, f64), eps: f64) -> Result<Vec<f64>> {
    with_eps(eps).jac2jac(c, from, to)
}

/// Jacobi to Chebyshev with a private converter.
pub fn jac2cheb(c: &[f64], alpha: f64, beta: f64, eps: f64) -> Result<Vec<f64>> {
    with_eps(eps).jac2cheb(c, alpha, beta)
}

/// Chebyshev to Jacobi with a private converter.
pub fn cheb2jac(c: &[f64], alpha: f64, beta: f64, eps: f64) -> Result<Vec<f64>> {
    with_eps(eps).cheb2jac(c, alpha, beta)
}

/// Laguerre to Laguerre with a private converter.
pub fn lag2lag(c: &[f64], from: f64, to: f64, eps: f64) -> Result<Vec<f64>> {
    with_eps(eps).lag2lag(c, from, to)
}

fn with_eps(eps: f64) -> Converter {
    Converter::new(ConvertOptions {
        eps,
        ..Default::default()
    })
}
