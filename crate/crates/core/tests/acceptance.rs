//! Acceptance checks. Runs sequentially (timings are part of the suite),
//! prints one PASS/FAIL line per criterion and fails if any criterion does.

use std::cell::RefCell;
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, SymmetricEigen};
use polyconv::conversions::{hankel_symbol, BandedKind, BandedUpperFactor};
use polyconv::lowrank::{pivoted_cholesky, pivoted_cholesky_rank};
use polyconv::oracle::NeumaierSum;
use polyconv::{
    decaying_random_vector, ConvertOptions, Converter, DenseConversion, DenseConversionSpec,
    Family, PsdMatrixOracle, ToeplitzOperator,
};
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config as ProptestConfig, RngAlgorithm, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

const EPS: f64 = f64::EPSILON;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn max_abs(a: &[f64]) -> f64 {
    a.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

fn oracle(family: Family, v: &[f64]) -> Vec<f64> {
    DenseConversion::new(DenseConversionSpec { family, n: v.len() })
        .unwrap()
        .apply(v)
        .unwrap()
}

/// Fast-path conversion by family, always through a plan (or Toeplitz for
/// Laguerre).
fn fast(conv: &Converter, family: Family, v: &[f64]) -> Vec<f64> {
    match family {
        Family::LegendreToChebyshev => conv.leg2cheb(v),
        Family::ChebyshevToLegendre => conv.cheb2leg(v),
        Family::Ultraspherical { from, to } => conv.ultra2ultra(v, from, to),
        Family::Jacobi { alpha, beta, gamma } => conv.jac2jac(v, (alpha, beta), (gamma, beta)),
        Family::Laguerre { from, to } => conv.lag2lag(v, from, to),
    }
    .unwrap()
}

fn oracle_equivalence() -> Outcome {
    let families = [
        ("leg2cheb", Family::LegendreToChebyshev),
        ("cheb2leg", Family::ChebyshevToLegendre),
        ("ultra 0.25->0.75", Family::Ultraspherical { from: 0.25, to: 0.75 }),
        (
            "jac (0,s)->(-1/4,s)",
            Family::Jacobi {
                alpha: 0.0,
                beta: std::f64::consts::FRAC_1_SQRT_2,
                gamma: -0.25,
            },
        ),
        ("lag 0.7->0.2", Family::Laguerre { from: 0.7, to: 0.2 }),
    ];
    let mut pass = true;
    let mut worst = (0.0, "", 0);
    let mut slowest = Duration::ZERO;
    for (name, family) in families {
        for n in [16, 64, 256, 1024, 4096] {
            let v = decaying_random_vector(n + 1, 1.5, n as u64);
            let conv = Converter::new(ConvertOptions::fast_only());
            let start = Instant::now();
            let got = fast(&conv, family, &v);
            let elapsed = start.elapsed();
            let err = max_abs_diff(&got, &oracle(family, &v));
            slowest = slowest.max(elapsed);
            if err > worst.0 {
                worst = (err, name, n);
            }
            if err > 1e-10 || elapsed > Duration::from_secs(5) {
                pass = false;
                println!("    {name} N={n}: error {err:.2e}, {elapsed:?}");
            }
        }
    }
    outcome(
        pass,
        format!(
            "worst error {:.2e} ({} N={}), slowest case {:.3}s",
            worst.0,
            worst.1,
            worst.2,
            slowest.as_secs_f64()
        ),
    )
}

/// Mean over seeds of the max-abs error of fast leg2cheb against the oracle.
fn leg2cheb_error(n: usize, decay: f64, seeds: u64) -> f64 {
    let conv = Converter::new(ConvertOptions::fast_only());
    let total: f64 = (0..seeds)
        .map(|seed| {
            let v = decaying_random_vector(n + 1, decay, 1000 + seed);
            max_abs_diff(&conv.leg2cheb(&v).unwrap(), &oracle(Family::LegendreToChebyshev, &v))
        })
        .sum();
    total / seeds as f64
}

fn error_growth() -> Outcome {
    let sizes = [100usize, 1_000, 10_000];
    let seeds = 5;
    let decaying: Vec<f64> = sizes.iter().map(|&n| leg2cheb_error(n, 1.5, seeds)).collect();
    let flat: Vec<f64> = sizes.iter().map(|&n| leg2cheb_error(n, 0.0, seeds)).collect();
    let growth = decaying[2] / decaying[0];
    // least-squares slope of log(error) against log(N)
    let xs: Vec<f64> = sizes.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = flat.iter().map(|e| e.ln()).collect();
    let (mx, my) = (xs.iter().sum::<f64>() / 3.0, ys.iter().sum::<f64>() / 3.0);
    let slope = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / xs.iter().map(|x| (x - mx) * (x - mx)).sum::<f64>();
    outcome(
        growth <= 3.0 && slope <= 0.9,
        format!(
            "decay 1.5 errors {:.2e} {:.2e} {:.2e} (growth {growth:.2}x); decay 0 errors {:.2e} {:.2e} {:.2e} (exponent {slope:.2})",
            decaying[0], decaying[1], decaying[2], flat[0], flat[1], flat[2]
        ),
    )
}

fn leg2cheb_rank(n: usize) -> usize {
    let h = hankel_symbol(&Family::LegendreToChebyshev, n).unwrap();
    pivoted_cholesky(&h, f64::EPSILON, n).unwrap().rank()
}

fn rank_profile() -> Outcome {
    let k300 = leg2cheb_rank(301);
    let k100 = leg2cheb_rank(101);
    let k10000 = leg2cheb_rank(10_001);
    outcome(
        (19..=35).contains(&k300) && k10000 <= k100 + 20,
        format!("K(300) = {k300}, K(100) = {k100}, K(10000) = {k10000}"),
    )
}

fn min_eigenvalue(h: &dyn PsdMatrixOracle) -> f64 {
    let n = h.size();
    let cols: Vec<Vec<f64>> = (0..n).map(|j| h.column(j)).collect();
    let m = DMatrix::from_fn(n, n, |i, j| cols[j][i]);
    SymmetricEigen::new(m).eigenvalues.min()
}

fn psd_certificates() -> Outcome {
    let cases = [
        ("leg2cheb", Family::LegendreToChebyshev),
        ("cheb2leg (1..12)", Family::ChebyshevToLegendre),
        ("ultra 0.25->0.75", Family::Ultraspherical { from: 0.25, to: 0.75 }),
        ("jac (0,0.3)->(0.4,0.3)", Family::Jacobi { alpha: 0.0, beta: 0.3, gamma: 0.4 }),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, family) in cases {
        let h = hankel_symbol(&family, 13).unwrap();
        let lo = min_eigenvalue(&h);
        pass &= lo >= -1e-12;
        parts.push(format!("{name} {lo:.2e} (n={})", h.size()));
    }
    outcome(pass, format!("min eigenvalues: {}", parts.join(", ")))
}

fn round_trips() -> Outcome {
    let n = 4096;
    let conv = Converter::default();
    let v = decaying_random_vector(n + 1, 1.5, 17);
    let leg = max_abs_diff(&conv.cheb2leg(&conv.leg2cheb(&v).unwrap()).unwrap(), &v);
    let jac = max_abs_diff(
        &conv.cheb2jac(&conv.jac2cheb(&v, 0.1, 0.3).unwrap(), 0.1, 0.3).unwrap(),
        &v,
    );
    outcome(
        leg <= 1e-10 && jac <= 1e-10,
        format!("cheb2leg∘leg2cheb {leg:.2e}, cheb2jac∘jac2cheb {jac:.2e}"),
    )
}

fn family_strategy() -> impl Strategy<Value = Family> {
    prop_oneof![
        Just(Family::LegendreToChebyshev),
        Just(Family::ChebyshevToLegendre),
        Just(Family::Ultraspherical { from: 0.25, to: 0.75 }),
        Just(Family::Jacobi {
            alpha: 0.0,
            beta: std::f64::consts::FRAC_1_SQRT_2,
            gamma: -0.25,
        }),
        Just(Family::Jacobi { alpha: 0.0, beta: 0.3, gamma: 0.4 }),
        Just(Family::Laguerre { from: 0.7, to: 0.2 }),
    ]
}

fn structural_invariants() -> Outcome {
    let conv = Converter::new(ConvertOptions::fast_only());
    let worst = RefCell::new((0.0_f64, 0.0_f64, 0.0_f64));
    let config = ProptestConfig {
        cases: 200,
        failure_persistence: None,
        ..ProptestConfig::default()
    };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let cases = (family_strategy(), 1usize..=257).prop_flat_map(|(family, n)| {
        (
            Just(family),
            0..n,
            vec(-1.0..1.0f64, n),
            vec(-1.0..1.0f64, n),
            -2.0..2.0f64,
            -2.0..2.0f64,
        )
    });
    let result = runner.run(&cases, |(family, k, u, v, a, b)| {
        let n = u.len();
        let mut e = vec![0.0; n];
        e[k] = 1.0;
        let out = fast(&conv, family, &e);
        let triangular = max_abs(&out[k + 1..]);
        let mut parity: f64 = 0.0;
        if family.has_parity() {
            for j in (0..k).filter(|j| (k - j) % 2 == 1) {
                parity = parity.max(out[j].abs());
            }
        }
        let mut linear: f64 = 0.0;
        if !matches!(family, Family::Laguerre { .. }) {
            let plan = conv.plan(&family, n).unwrap();
            let mix: Vec<f64> = u.iter().zip(&v).map(|(x, y)| a * x + b * y).collect();
            let (au, av, am) = (
                plan.apply(&u).unwrap(),
                plan.apply(&v).unwrap(),
                plan.apply(&mix).unwrap(),
            );
            let combo: Vec<f64> = au.iter().zip(&av).map(|(x, y)| a * x + b * y).collect();
            let scale = a.abs() * max_abs(&au) + b.abs() * max_abs(&av);
            if scale > 0.0 {
                linear = max_abs_diff(&am, &combo) / scale;
            }
        }
        let mut w = worst.borrow_mut();
        *w = (w.0.max(triangular), w.1.max(parity), w.2.max(linear));
        prop_assert!(triangular <= 1e-13, "{family:?} n={n} k={k}: leakage {triangular:e}");
        prop_assert!(parity <= 1e-12, "{family:?} n={n} k={k}: parity {parity:e}");
        prop_assert!(linear <= 10.0 * EPS, "{family:?} n={n}: linearity {linear:e}");
        Ok(())
    });
    let (triangular, parity, linear) = *worst.borrow();
    let mut detail = format!(
        "triangular leakage {triangular:.2e}, parity leakage {parity:.2e}, linearity {:.2} eps",
        linear / EPS
    );
    if let Err(e) = &result {
        detail.push_str(&format!("; {e}"));
    }
    outcome(result.is_ok(), detail)
}

fn toeplitz_kernel() -> Outcome {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for n in [1usize, 2, 3, 5, 64, 257, 1000] {
        for _ in 0..100 {
            let col: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let mut row: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            row[0] = col[0];
            let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let op = ToeplitzOperator::new(col, row).unwrap();
            let dense: Vec<f64> = (0..n)
                .map(|j| {
                    let mut s = NeumaierSum::default();
                    (0..n).for_each(|k| s.add(op.entry(j, k) * v[k]));
                    s.total()
                })
                .collect();
            let tmax = (0..n).map(|k| op.entry(0, k).abs().max(op.entry(k, 0).abs())).fold(0.0, f64::max);
            let bound = 50.0 * n as f64 * EPS * tmax * max_abs(&v);
            worst = worst.max(max_abs_diff(&op.apply(&v).unwrap(), &dense) / bound);
        }
    }
    outcome(worst <= 1.0, format!("worst error is {worst:.3} of the bound"))
}

fn banded_product(kinds: &[BandedKind], v: &[f64]) -> Vec<f64> {
    let n = v.len();
    let mut out = v.to_vec();
    for kind in kinds {
        let s = BandedUpperFactor::new(*kind).to_dense(n);
        out = (0..n).map(|j| (0..n).map(|k| s[j * n + k] * out[k]).sum()).collect();
    }
    out
}

fn sparse_factor_cases() -> Outcome {
    let n = 129;
    let conv = Converter::default();
    let v = decaying_random_vector(n, 1.0, 21);
    let ultra = max_abs_diff(
        &conv.ultra2ultra(&v, 1.0, 2.0).unwrap(),
        &banded_product(&[BandedKind::Ultraspherical { lambda: 1.0 }], &v),
    );
    let jac = max_abs_diff(
        &conv.jac2jac(&v, (0.0, 0.0), (1.0, 0.0)).unwrap(),
        &banded_product(&[BandedKind::Jacobi { alpha: 0.0, beta: 0.0 }], &v),
    );
    let ultra_back = max_abs_diff(&conv.ultra2ultra(&conv.ultra2ultra(&v, 1.0, 2.0).unwrap(), 2.0, 1.0).unwrap(), &v);
    let jac_back = max_abs_diff(
        &conv.jac2jac(&conv.jac2jac(&v, (0.0, 0.0), (1.0, 0.0)).unwrap(), (1.0, 0.0), (0.0, 0.0)).unwrap(),
        &v,
    );
    outcome(
        ultra <= 1e-13 && jac <= 1e-13 && ultra_back <= 1e-11 && jac_back <= 1e-11,
        format!(
            "raising vs banded product: ultra {ultra:.2e}, jacobi {jac:.2e}; lowering after raising: ultra {ultra_back:.2e}, jacobi {jac_back:.2e}"
        ),
    )
}

/// Best of `reps` fresh runs (plan construction included).
fn time_leg2cheb(n: usize, reps: usize) -> f64 {
    let v = decaying_random_vector(n + 1, 1.5, 3);
    (0..reps)
        .map(|_| {
            let conv = Converter::new(ConvertOptions::fast_only());
            let start = Instant::now();
            std::hint::black_box(conv.leg2cheb(&v).unwrap());
            start.elapsed().as_secs_f64()
        })
        .fold(f64::INFINITY, f64::min)
}

fn performance_scaling() -> Outcome {
    let t100k = time_leg2cheb(100_000, 3);
    let t: Vec<f64> = [1usize << 14, 1 << 15, 1 << 16].iter().map(|&n| time_leg2cheb(n, 5)).collect();
    let (r1, r2) = (t[1] / t[0], t[2] / t[1]);
    outcome(
        t100k <= 1.0 && r1 <= 3.0 && r2 <= 3.0,
        format!(
            "N=1e5 in {t100k:.3}s; 2^14, 2^15, 2^16 in {:.4}s, {:.4}s, {:.4}s (ratios {r1:.2}, {r2:.2})",
            t[0], t[1], t[2]
        ),
    )
}

fn cholesky_near_best() -> Outcome {
    let n = 200;
    let h = hankel_symbol(&Family::LegendreToChebyshev, n).unwrap();
    let dense = DMatrix::from_fn(n, n, |i, j| h.entry(i, j));
    let eig = SymmetricEigen::new(dense.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].abs().total_cmp(&eig.eigenvalues[a].abs()));
    let mut pass = true;
    let mut parts = Vec::new();
    for k in [5usize, 10, 15] {
        let mut best = dense.clone();
        for &idx in &order[..k] {
            let q = eig.eigenvectors.column(idx);
            best -= eig.eigenvalues[idx] * q * q.transpose();
        }
        let best_err = best.amax();
        let f = pivoted_cholesky_rank(&h, k).unwrap();
        let rec = f.reconstruct();
        let chol_err = (0..n * n)
            .map(|i| (rec[i] - h.entry(i / n, i % n)).abs())
            .fold(0.0, f64::max);
        let ratio = chol_err / best_err;
        pass &= ratio <= 100.0;
        parts.push(format!("K={k}: {chol_err:.2e} vs {best_err:.2e} ({ratio:.1}x)"));
    }
    outcome(pass, parts.join(", "))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 oracle equivalence", oracle_equivalence),
        ("2 error growth", error_growth),
        ("3 rank profile", rank_profile),
        ("4 PSD certificates", psd_certificates),
        ("5 round trips", round_trips),
        ("6 structural invariants", structural_invariants),
        ("7 Toeplitz kernel", toeplitz_kernel),
        ("8 sparse-factor cases", sparse_factor_cases),
        ("9 performance scaling", performance_scaling),
        ("10 Cholesky near-bestness", cholesky_near_best),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let Outcome { pass, detail } = check();
        println!(
            "{} criterion {name}: {detail} [{:.2}s]",
            if pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
        failed += usize::from(!pass);
    }
    if failed > 0 {
        println!("{failed} of 10 acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 10 acceptance criteria passed");
}
