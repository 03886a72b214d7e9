use std::io::Write;
use std::time::Instant;

use polyconv::conversions::hankel_symbol;
use polyconv::{
    decaying_random_vector, pivoted_cholesky, Basis, CoefficientVector, ConvertOptions, Converter,
    Family, DEFAULT_EPS,
};

use crate::file::CoefficientFile;
use crate::{parse_basis, BenchArgs, CliError, ConvertArgs, RankProfileArgs};

fn options(eps: Option<f64>) -> Result<ConvertOptions, CliError> {
    let eps = eps.unwrap_or(DEFAULT_EPS);
    if !(eps > 0.0 && eps < 1.0) {
        return Err(CliError::Invalid(format!("--eps must lie in (0, 1), got {eps}")));
    }
    Ok(ConvertOptions {
        eps,
        ..ConvertOptions::default()
    })
}

fn csv_writer(path: Option<&str>) -> Result<csv::Writer<Box<dyn Write>>, CliError> {
    let sink: Box<dyn Write> = match path {
        Some(p) => Box::new(
            std::fs::File::create(p).map_err(|e| CliError::Io(format!("{p}: {e}")))?,
        ),
        None => Box::new(std::io::stdout()),
    };
    Ok(csv::Writer::from_writer(sink))
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}

pub fn convert(args: &ConvertArgs) -> Result<(), CliError> {
    let to = parse_basis(&args.to)?;
    let input = CoefficientFile::read(&args.input)?;
    let from = match (args.from.as_deref().map(parse_basis).transpose()?, input.basis) {
        (Some(flag), Some(header)) if flag != header => {
            return Err(CliError::Invalid(format!(
                "--from {flag} disagrees with the file header ({header})"
            )))
        }
        (Some(b), _) | (None, Some(b)) => b,
        (None, None) => {
            return Err(CliError::Parse(
                "the input has no header naming its basis; pass --from".into(),
            ))
        }
    };
    let c = CoefficientVector::new(from, input.values)?;
    let converter = Converter::new(ConvertOptions {
        max_rank: args.max_rank,
        ..options(args.eps)?
    });
    let start = Instant::now();
    let out = converter.convert(&c, to)?;
    let elapsed = start.elapsed().as_secs_f64();

    let ranks = if out.ranks.is_empty() {
        "-".to_string()
    } else {
        out.ranks.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
    };
    eprintln!("N={} K={ranks} time={elapsed:.6}s", c.degree());

    CoefficientFile {
        basis: (!args.binary).then_some(to),
        values: out.coefficients.values,
    }
    .write(args.output.as_deref(), args.binary)
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn bench(args: &BenchArgs) -> Result<(), CliError> {
    let from = parse_basis(&args.from)?;
    let to = parse_basis(&args.to)?;
    if args.sizes.iter().any(|&n| n < 1) {
        return Err(CliError::Invalid("bench sizes must be at least 1".into()));
    }
    if !args.decay.is_finite() {
        return Err(CliError::Invalid(format!("bad --decay {}", args.decay)));
    }
    let repeats = args.repeats.max(1);
    let fast_options = ConvertOptions {
        direct_threshold: 0,
        ..options(args.eps)?
    };
    let direct_options = ConvertOptions {
        direct_threshold: usize::MAX,
        ..options(args.eps)?
    };

    let mut out = csv_writer(args.output.as_deref())?;
    out.write_record([
        "N",
        "method",
        "wall-time-seconds",
        "plan-seconds",
        "max-abs-error-vs-oracle",
    ])
    .map_err(csv_error)?;

    for &n in &args.sizes {
        let c = CoefficientVector::new(from, decaying_random_vector(n + 1, args.decay, args.seed))?;

        // the direct method is the dense product with compensated sums,
        // which is also the reference
        let mut oracle = None;
        if n <= args.max_direct {
            let mut best = f64::INFINITY;
            for _ in 0..repeats {
                let converter = Converter::new(direct_options);
                let start = Instant::now();
                let result = converter.convert(&c, to)?;
                best = best.min(start.elapsed().as_secs_f64());
                oracle = Some(result.coefficients.values);
            }
            out.write_record([n.to_string(), "direct".into(), format!("{best:e}"), "0".into(), "0".into()])
                .map_err(csv_error)?;
        }

        let (mut wall, mut plan) = (f64::INFINITY, f64::INFINITY);
        let mut fast = Vec::new();
        for _ in 0..repeats {
            let converter = Converter::new(fast_options);
            let start = Instant::now();
            fast = converter.convert(&c, to)?.coefficients.values;
            let total = start.elapsed().as_secs_f64();
            let start = Instant::now();
            converter.convert(&c, to)?;
            let apply = start.elapsed().as_secs_f64();
            wall = wall.min(total);
            plan = plan.min((total - apply).max(0.0));
        }
        let error = oracle
            .as_ref()
            .map(|o| format!("{:e}", max_abs_diff(&fast, o)))
            .unwrap_or_default();
        out.write_record([n.to_string(), "fast".into(), format!("{wall:e}"), format!("{plan:e}"), error])
            .map_err(csv_error)?;
        out.flush().map_err(|e| CliError::Io(e.to_string()))?;
    }
    Ok(())
}

/// The single-step family whose Hankel part `from → to` factors.
pub fn single_step_family(from: Basis, to: Basis) -> Result<Family, CliError> {
    let jacobi = |b: Basis| match b {
        Basis::Legendre => Some((0.0, 0.0)),
        Basis::Jacobi(a, b) => Some((a, b)),
        _ => None,
    };
    let ultra = |b: Basis| match b {
        Basis::Legendre => Some(0.5),
        Basis::Ultraspherical(l) => Some(l),
        _ => None,
    };
    Ok(match (from, to) {
        (Basis::Legendre, Basis::Chebyshev) => Family::LegendreToChebyshev,
        (Basis::Chebyshev, Basis::Legendre) => Family::ChebyshevToLegendre,
        (Basis::Laguerre(_), _) | (_, Basis::Laguerre(_)) => {
            return Err(CliError::Invalid(
                "Laguerre conversions are purely Toeplitz and have no Hankel part".into(),
            ))
        }
        _ => match (ultra(from), ultra(to), jacobi(from), jacobi(to)) {
            (Some(a), Some(b), _, _) if matches!(from, Basis::Ultraspherical(_)) || matches!(to, Basis::Ultraspherical(_)) => {
                Family::Ultraspherical { from: a, to: b }
            }
            (_, _, Some((a, b)), Some((c, d))) if b == d => Family::Jacobi { alpha: a, beta: b, gamma: c },
            _ => {
                return Err(CliError::Invalid(format!(
                    "{from} -> {to} is not a single step with a Hankel part"
                )))
            }
        },
    })
}

pub fn rank_profile(args: &RankProfileArgs) -> Result<(), CliError> {
    let family = single_step_family(parse_basis(&args.from)?, parse_basis(&args.to)?)?;
    if args.sizes.iter().any(|&n| n < 2) {
        return Err(CliError::Invalid("rank-profile sizes must be at least 2".into()));
    }
    let eps = args.eps.unwrap_or(f64::EPSILON);
    if !(eps > 0.0 && eps < 1.0) {
        return Err(CliError::Invalid(format!("--eps must lie in (0, 1), got {eps}")));
    }
    let mut out = csv_writer(args.output.as_deref())?;
    out.write_record(["N", "K", "residual-tolerance-achieved", "pivots"])
        .map_err(csv_error)?;
    for &n in &args.sizes {
        let h = hankel_symbol(&family, n + 1)?;
        let factor = pivoted_cholesky(&h, eps, n + 1)?;
        let pivots: Vec<String> = factor.pivots.iter().map(|p| p.to_string()).collect();
        out.write_record([
            n.to_string(),
            factor.rank().to_string(),
            format!("{:e}", factor.achieved_tol),
            pivots.join(";"),
        ])
        .map_err(csv_error)?;
    }
    out.flush().map_err(|e| CliError::Io(e.to_string()))
}
