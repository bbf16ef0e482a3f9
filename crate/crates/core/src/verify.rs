//! Self-contained verification suite.
//!
//! Every check pairs an implementation path with an independent oracle
//! (quadrature, finite Fourier sums, brute-force dense algebra, closed
//! forms) and a pinned tolerance. The CLI `verify` subcommand runs this
//! suite; the `acceptance` integration tests assert each check
//! individually. All checks run in `f64`.

use std::time::Instant;

use crate::chain::{
    bvk_matrix, characteristic_matrix, dispersion, laplacian_matrix, periodized_element,
    spectral_element, ChainSpec, Method,
};
use crate::diffusion::{evolve_spectral, EvolutionSpec, FieldOnRing};
use crate::elements::{asymptotic_element, infinite_element};
use crate::kernels::{
    continuum_limit_residual, periodic_kernel, periodic_kernel_extrapolated, riesz_kernel_infinite,
    ContinuumScaling, PeriodicMethod,
};
use crate::order::FractionalOrder;
use crate::quadrature::{
    beta_closed_form, beta_integral, duplication_check, element_by_quadrature,
    nd_element_by_quadrature, QuadratureSpec,
};
use crate::zeta::hurwitz_zeta;

/// Result of one verification check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl Check {
    fn finish(name: &'static str, started: Instant, passed: bool, detail: String) -> Self {
        Check {
            name,
            passed,
            detail,
            seconds: started.elapsed().as_secs_f64(),
        }
    }
}

fn order(alpha: f64) -> FractionalOrder<f64> {
    FractionalOrder::new(alpha).expect("verification orders are valid")
}

fn unit_chain(alpha: f64, n: usize) -> ChainSpec<f64> {
    ChainSpec::unit(n, order(alpha)).expect("verification chains are valid")
}

const ALPHA_GRID: [f64; 5] = [0.5, 1.0, 1.5, 2.5, 3.7];

/// Integer-order recovery: for `alpha = 2` the characteristic matrix is
/// the Born-von-Karman matrix to 1e-14 for every N in 3..=64 (both
/// construction methods), and for `alpha = 4` the infinite elements are
/// `[6, -4, 1, 0, ...]` exactly.
pub fn integer_order_recovery() -> Check {
    let t0 = Instant::now();
    let mut worst = 0.0f64;
    let mut passed = true;
    for n in 3..=64usize {
        let spec = unit_chain(2.0, n);
        let bvk = bvk_matrix::<f64>(n).unwrap();
        for method in [Method::Spectral, Method::Periodized] {
            let m = characteristic_matrix(&spec, method).unwrap();
            for k in 0..n {
                let diff = (m.first_row()[k] - bvk.first_row()[k]).abs();
                worst = worst.max(diff);
            }
        }
    }
    passed &= worst <= 1e-14;
    let o4 = order(4.0);
    let want = [6.0, -4.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    for (p, &w) in want.iter().enumerate() {
        if infinite_element(&o4, p as i64) != w {
            passed = false;
        }
    }
    Check::finish(
        "integer-order recovery (alpha = 2, 4)",
        t0,
        passed,
        format!("max |f_N - BvK| = {worst:.2e} over N = 3..=64; alpha=4 band exact"),
    )
}

/// Appendix validation: closed-form infinite elements match tanh-sinh
/// quadrature of the Brillouin-zone integral to 1e-10 absolute for
/// p = 0..=32 on the alpha grid, within 10 seconds.
pub fn appendix_quadrature() -> Check {
    let t0 = Instant::now();
    let spec = QuadratureSpec::with_tol(1e-12);
    let mut worst = 0.0f64;
    for &alpha in &ALPHA_GRID {
        let o = order(alpha);
        for p in 0..=32i64 {
            match element_by_quadrature(&o, p, &spec) {
                Ok(q) => worst = worst.max((q - infinite_element(&o, p)).abs()),
                Err(_) => worst = f64::INFINITY,
            }
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();
    let passed = worst <= 1e-10 && elapsed <= 10.0;
    Check::finish(
        "Brillouin-zone quadrature vs closed forms",
        t0,
        passed,
        format!("max abs deviation {worst:.2e} (tol 1e-10), {elapsed:.2}s (limit 10s)"),
    )
}

/// Finite-chain oracle equivalence: periodized elements match the exact
/// spectral sums to 1e-10 for N in {4, 8, 16, 33}, all p, alpha grid,
/// within 10 seconds.
pub fn periodization_vs_spectral() -> Check {
    let t0 = Instant::now();
    let mut worst = 0.0f64;
    for &alpha in &ALPHA_GRID {
        for &n in &[4usize, 8, 16, 33] {
            let spec = unit_chain(alpha, n);
            for p in 0..n {
                let a = periodized_element(&spec, p, 1e-12);
                let b = spectral_element(&spec, p);
                match (a, b) {
                    (Ok(a), Ok(b)) => worst = worst.max((a - b).abs()),
                    _ => worst = f64::INFINITY,
                }
            }
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();
    let passed = worst <= 1e-10 && elapsed <= 10.0;
    Check::finish(
        "periodization vs spectral oracle",
        t0,
        passed,
        format!("max abs deviation {worst:.2e} (tol 1e-10), {elapsed:.2}s (limit 10s)"),
    )
}

/// Asymptotics: |exact/asymptotic - 1| <= 0.5% at p = 10^4 for
/// alpha in {0.5, 1.5}.
pub fn asymptotic_law() -> Check {
    let t0 = Instant::now();
    let mut worst = 0.0f64;
    for &alpha in &[0.5, 1.5] {
        let o = order(alpha);
        let p = 10_000i64;
        let ratio = infinite_element(&o, p) / asymptotic_element(&o, p).unwrap();
        worst = worst.max((ratio - 1.0).abs());
    }
    Check::finish(
        "large-p asymptotic law",
        t0,
        worst <= 5e-3,
        format!("max |exact/asymptotic - 1| = {worst:.2e} at p = 1e4 (tol 5e-3)"),
    )
}

/// Spectral structure of the Laplacian matrix: eigenvalues equal
/// `-mu omega^2(kappa_l)` to 1e-12 relative, exactly one zero mode
/// (rank N-1), and vanishing row sums.
pub fn laplacian_spectral_structure() -> Check {
    let t0 = Instant::now();
    let mut passed = true;
    let mut detail = String::new();
    for &alpha in &[0.5, 1.0, 1.5, 2.5] {
        for &n in &[4usize, 9, 16] {
            let spec = ChainSpec::new(n, 1.0, 2.0, 1.5, order(alpha)).unwrap();
            let lap = laplacian_matrix(&spec, Method::Spectral).unwrap();
            let eig = lap.eigenvalues();
            let scale = (0..n)
                .map(|l| spec.mu() * dispersion(&spec, l).unwrap().omega2)
                .fold(0.0f64, f64::max);
            let mut zeros = 0usize;
            for (l, &e) in eig.iter().enumerate() {
                let want = -spec.mu() * dispersion(&spec, l).unwrap().omega2;
                if (e - want).abs() > 1e-12 * scale {
                    passed = false;
                    detail = format!("eigenvalue mismatch at alpha={alpha} N={n} l={l}");
                }
                if e > 1e-12 * scale {
                    passed = false;
                    detail = format!("positive eigenvalue at alpha={alpha} N={n} l={l}");
                }
                if e.abs() <= 1e-12 * scale {
                    zeros += 1;
                }
            }
            if zeros != 1 {
                passed = false;
                detail = format!("rank defect: {zeros} zero modes at alpha={alpha} N={n}");
            }
            let row: Vec<f64> = lap.first_row().to_vec();
            let max_entry = row.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
            let sum: f64 = row.iter().sum();
            if sum.abs() > 1e-12 * max_entry {
                passed = false;
                detail = format!("row sum {sum:.2e} at alpha={alpha} N={n}");
            }
        }
    }
    if passed {
        detail = "eigenvalues = -mu omega^2, single zero mode, row sums vanish".into();
    }
    Check::finish("Laplacian spectral structure", t0, passed, detail)
}

/// Periodic kernel: zeta route vs direct lattice sum to 1e-8 relative on
/// an (alpha, xi) grid; spot value pi at (alpha=1, L=1, x=1/2) to 1e-10;
/// zeta(2, 1/2) = pi^2/2 to 1e-12.
pub fn periodic_kernel_oracles() -> Check {
    let t0 = Instant::now();
    let mut worst_rel = 0.0f64;
    for &alpha in &[0.5, 1.0, 1.5, 2.5, 3.7] {
        let o = order(alpha);
        for &xi in &[0.1, 0.25, 0.5, 0.75, 0.9] {
            let a = periodic_kernel(&o, 1.0, xi, PeriodicMethod::Zeta).unwrap();
            let b = periodic_kernel(&o, 1.0, xi, PeriodicMethod::LatticeSum).unwrap();
            worst_rel = worst_rel.max(((a - b) / a).abs());
        }
    }
    let spot = periodic_kernel(&order(1.0), 1.0, 0.5, PeriodicMethod::Zeta).unwrap();
    let spot_err = (spot - std::f64::consts::PI).abs();
    let basel = (hurwitz_zeta(2.0, 0.5).unwrap() - std::f64::consts::PI.powi(2) / 2.0).abs();
    let passed = worst_rel <= 1e-8 && spot_err <= 1e-10 && basel <= 1e-12;
    Check::finish(
        "periodic kernel closed forms",
        t0,
        passed,
        format!(
            "zeta-vs-sum rel {worst_rel:.2e} (tol 1e-8); |K(1/2) - pi| = {spot_err:.2e}; \
             |zeta(2,1/2) - pi^2/2| = {basel:.2e}"
        ),
    )
}

/// Continuum limit: under the mass/energy scaling the lattice elements
/// converge to the periodic kernel at (alpha=1.5, x=0.3, L=1) with
/// strictly decreasing error, final relative error <= 1e-2, within 30 s.
pub fn continuum_limit() -> Check {
    let t0 = Instant::now();
    let scaling = ContinuumScaling::new(1.0, 1.0).unwrap();
    let errs = continuum_limit_residual(&scaling, &order(1.5), 0.3, 1.0, &[64, 256, 1024, 4096])
        .unwrap();
    let mut passed = true;
    for w in errs.windows(2) {
        if w[1].1 >= w[0].1 {
            passed = false;
        }
    }
    let last = errs.last().unwrap().1;
    passed &= last <= 1e-2;
    let elapsed = t0.elapsed().as_secs_f64();
    passed &= elapsed <= 30.0;
    let seq: Vec<String> = errs.iter().map(|(_, e)| format!("{e:.3e}")).collect();
    Check::finish(
        "continuum limit convergence",
        t0,
        passed,
        format!("relative errors [{}], {elapsed:.2}s (limit 30s)", seq.join(", ")),
    )
}

/// Dense matrix exponential by scaling-and-squaring Taylor summation;
/// oracle for the spectral evolution (test-side path only).
fn expm_dense(a: &[Vec<f64>], t: f64) -> Vec<Vec<f64>> {
    let n = a.len();
    let norm: f64 = a
        .iter()
        .map(|row| row.iter().map(|x| (x * t).abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = norm.max(1.0).log2().ceil().max(0.0) as u32 + 2;
    let scale = t / f64::powi(2.0, squarings as i32);

    let mut result = identity(n);
    let mut term = identity(n);
    for k in 1..=24 {
        term = mat_mul(&term, a);
        for row in term.iter_mut() {
            for v in row.iter_mut() {
                *v *= scale / k as f64;
            }
        }
        result = mat_add(&result, &term);
    }
    for _ in 0..squarings {
        result = mat_mul(&result, &result);
    }
    result
}

fn identity(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

fn mat_add(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    a.iter()
        .zip(b.iter())
        .map(|(ra, rb)| ra.iter().zip(rb.iter()).map(|(x, y)| x + y).collect())
        .collect()
}

/// Diffusion: mass conservation and the semigroup property to 1e-12,
/// positivity from nonnegative data for alpha in {0.5, 1, 2} on N = 64,
/// and agreement with the dense matrix-exponential oracle on N = 8 to
/// 1e-10.
pub fn diffusion_checks() -> Check {
    let t0 = Instant::now();
    let mut passed = true;
    let mut detail = String::new();

    // mass + positivity
    for &alpha in &[0.5, 1.0, 2.0] {
        let spec = unit_chain(alpha, 64);
        let u0 = FieldOnRing::delta_spike(64, 5).unwrap();
        let ev = EvolutionSpec::new(spec, 1.0, 1.0).unwrap();
        let u = evolve_spectral(&u0, &ev).unwrap();
        if (u.sum() - u0.sum()).abs() > 1e-12 * 64.0 {
            passed = false;
            detail = format!("mass drift at alpha={alpha}");
        }
        if u.values().iter().any(|&v| v < -1e-12) {
            passed = false;
            detail = format!("negative concentration at alpha={alpha}");
        }
    }

    // semigroup
    let spec = unit_chain(1.5, 32);
    let u0 = FieldOnRing::new((0..32).map(|i| ((i * 37 % 19) as f64) / 19.0).collect()).unwrap();
    let whole = evolve_spectral(&u0, &EvolutionSpec::new(spec, 0.8, 1.1).unwrap()).unwrap();
    let part = evolve_spectral(&u0, &EvolutionSpec::new(spec, 0.8, 0.3).unwrap()).unwrap();
    let part = evolve_spectral(&part, &EvolutionSpec::new(spec, 0.8, 0.8).unwrap()).unwrap();
    let semi_err = whole
        .values()
        .iter()
        .zip(part.values())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    if semi_err > 1e-12 {
        passed = false;
        detail = format!("semigroup deviation {semi_err:.2e}");
    }

    // dense matrix-exponential oracle on N = 8: du/dt = (c/mu) Delta u
    let spec = ChainSpec::new(8, 1.0, 1.3, 1.0, order(1.0)).unwrap();
    let c = 0.9;
    let lap = laplacian_matrix(&spec, Method::Spectral).unwrap();
    let dense: Vec<Vec<f64>> = lap
        .to_dense()
        .into_iter()
        .map(|row| row.into_iter().map(|x| x * (c / spec.mu())).collect())
        .collect();
    let u0 = FieldOnRing::new(vec![1.0, 0.0, 0.0, 2.0, 0.0, -1.0, 0.5, 0.0]).unwrap();
    let t = 0.7;
    let em = expm_dense(&dense, t);
    let want: Vec<f64> = (0..8)
        .map(|i| (0..8).map(|j| em[i][j] * u0.values()[j]).sum())
        .collect();
    let got = evolve_spectral(&u0, &EvolutionSpec::new(spec, c, t).unwrap()).unwrap();
    let expm_err = got
        .values()
        .iter()
        .zip(want.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    if expm_err > 1e-10 {
        passed = false;
        detail = format!("matrix-exponential deviation {expm_err:.2e}");
    }

    if passed {
        detail = format!(
            "mass/positivity ok; semigroup {semi_err:.2e}; expm oracle {expm_err:.2e}"
        );
    }
    Check::finish("spectral diffusion", t0, passed, detail)
}

/// nD consistency: the tensorized quadrature reduces to the 1D closed
/// forms to 1e-8, and at (alpha=2, n=2) reproduces the 2D generator
/// entries {4, -1, 0} to 1e-8.
pub fn nd_consistency() -> Check {
    let t0 = Instant::now();
    let mut worst_1d = 0.0f64;
    let spec = QuadratureSpec::with_tol(1e-12);
    for &alpha in &[1.0, 1.5, 2.5] {
        let o = order(alpha);
        for p in 0..=8i64 {
            match nd_element_by_quadrature(&o, &[p], &spec) {
                Ok(v) => worst_1d = worst_1d.max((v - infinite_element(&o, p)).abs()),
                Err(_) => worst_1d = f64::INFINITY,
            }
        }
    }
    let spec2 = QuadratureSpec::with_tol(1e-16);
    let o2 = order(2.0);
    let mut worst_2d = 0.0f64;
    for (p, want) in [([0i64, 0i64], 4.0), ([1, 0], -1.0), ([1, 1], 0.0)] {
        match nd_element_by_quadrature(&o2, &p, &spec2) {
            Ok(v) => worst_2d = worst_2d.max((v - want).abs()),
            Err(_) => worst_2d = f64::INFINITY,
        }
    }
    let passed = worst_1d <= 1e-8 && worst_2d <= 1e-8;
    Check::finish(
        "nD lattice quadrature",
        t0,
        passed,
        format!("1D reduction {worst_1d:.2e}, 2D generator {worst_2d:.2e} (tol 1e-8)"),
    )
}

/// Gamma duplication formula and Beta-integral identity on a fixed
/// pseudo-random grid.
pub fn special_function_identities() -> Check {
    let t0 = Instant::now();
    let mut passed = true;
    let mut worst_dup = 0.0f64;
    for &alpha in &[0.5, 1.0, 2.0, 3.7, 6.2] {
        let (lhs, rhs) = duplication_check(&order(alpha));
        worst_dup = worst_dup.max(((lhs - rhs) / lhs).abs());
    }
    passed &= worst_dup <= 1e-12;

    // 20 deterministic (b1, b2) pairs in (-0.9, 5)
    let mut state = 0x2545F4914F6CDD1Du64;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    let qspec = QuadratureSpec::with_tol(1e-13);
    let mut worst_beta = 0.0f64;
    for _ in 0..20 {
        let b1 = -0.9 + 5.9 * next();
        let b2 = -0.9 + 5.9 * next();
        match beta_integral(b1, b2, &qspec) {
            Ok(got) => worst_beta = worst_beta.max((got - beta_closed_form(b1, b2)).abs()),
            Err(_) => worst_beta = f64::INFINITY,
        }
    }
    passed &= worst_beta <= 1e-11;
    Check::finish(
        "duplication formula / Beta identity",
        t0,
        passed,
        format!("duplication rel {worst_dup:.2e} (tol 1e-12); Beta abs {worst_beta:.2e} (tol 1e-11)"),
    )
}

/// Kernel symmetry and limit properties: evenness/periodicity, the
/// extrapolated regularized route against the zeta route (1e-6), and the
/// L -> infinity recovery of the infinite-space kernel (1e-6).
pub fn kernel_properties() -> Check {
    let t0 = Instant::now();
    let mut passed = true;
    let mut detail = String::new();
    let o = order(1.5);
    let base = periodic_kernel(&o, 2.0, 0.6, PeriodicMethod::Zeta).unwrap();
    for &x in &[-0.6, 2.6, -4.6, 0.6 + 6.0] {
        let v = periodic_kernel(&o, 2.0, x, PeriodicMethod::Zeta).unwrap();
        if ((v - base) / base).abs() > 1e-13 {
            passed = false;
            detail = format!("evenness/periodicity broken at x={x}");
        }
    }
    let mut worst_reg = 0.0f64;
    for &alpha in &[0.5, 1.5, 2.5] {
        let o = order(alpha);
        for &xi in &[0.1, 0.25, 0.4] {
            let want = periodic_kernel(&o, 1.0, xi, PeriodicMethod::Zeta).unwrap();
            let got = periodic_kernel_extrapolated(&o, 1.0, xi, None, 6).unwrap();
            worst_reg = worst_reg.max(((got - want) / want).abs());
        }
    }
    if worst_reg > 1e-6 {
        passed = false;
        detail = format!("regularized extrapolation off by {worst_reg:.2e}");
    }
    let o1 = order(1.0);
    let inf = riesz_kernel_infinite(&o1, 1.0).unwrap();
    let per = periodic_kernel(&o1, 1e4, 1.0, PeriodicMethod::Zeta).unwrap();
    let lim_err = ((per - inf) / inf).abs();
    if lim_err > 1e-6 {
        passed = false;
        detail = format!("L -> inf limit off by {lim_err:.2e}");
    }
    if passed {
        detail = format!(
            "symmetries exact; regularized extrapolation {worst_reg:.2e}; L->inf {lim_err:.2e}"
        );
    }
    Check::finish("kernel symmetries and limits", t0, passed, detail)
}

/// Markov-generator sign structure: `-f_N` has nonnegative off-diagonal
/// entries for alpha <= 2, and the property fails for alpha = 3.
pub fn markov_signs() -> Check {
    let t0 = Instant::now();
    let mut passed = true;
    for &alpha in &[0.5, 1.0, 2.0] {
        for &n in &[4usize, 16] {
            let m = characteristic_matrix(&unit_chain(alpha, n), Method::Spectral).unwrap();
            if m.first_row()[1..].iter().any(|&x| -x < -1e-15) {
                passed = false;
            }
        }
    }
    let m = characteristic_matrix(&unit_chain(3.0, 16), Method::Spectral).unwrap();
    let alternates = m.first_row()[2] > 0.0;
    passed &= alternates;
    Check::finish(
        "Markov generator signs",
        t0,
        passed,
        "off-diagonals of -f_N nonnegative for alpha <= 2, alternating at alpha = 3".into(),
    )
}

/// Runs the verification suite. `quick` trims the continuum-limit study
/// to N <= 1024; everything else is identical.
pub fn run_suite(quick: bool) -> Vec<Check> {
    let mut checks = vec![
        integer_order_recovery(),
        appendix_quadrature(),
        periodization_vs_spectral(),
        asymptotic_law(),
        laplacian_spectral_structure(),
        periodic_kernel_oracles(),
    ];
    if quick {
        let t0 = Instant::now();
        let scaling = ContinuumScaling::new(1.0, 1.0).unwrap();
        let errs =
            continuum_limit_residual(&scaling, &order(1.5), 0.3, 1.0, &[64, 256, 1024]).unwrap();
        let monotone = errs.windows(2).all(|w| w[1].1 < w[0].1);
        let passed = monotone && errs.last().unwrap().1 <= 1e-2;
        checks.push(Check::finish(
            "continuum limit convergence (quick)",
            t0,
            passed,
            format!("errors {:?}", errs.iter().map(|e| e.1).collect::<Vec<_>>()),
        ));
    } else {
        checks.push(continuum_limit());
    }
    checks.push(diffusion_checks());
    checks.push(nd_consistency());
    checks.push(special_function_identities());
    checks.push(kernel_properties());
    checks.push(markov_signs());
    checks
}
