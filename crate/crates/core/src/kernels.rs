//! Continuum-limit kernels of the fractional Laplacian.
//!
//! Infinite space:
//!
//! ```text
//! -K_inf(|x|) = (alpha!/pi) sin(alpha pi/2) |x|^(-alpha-1)
//! ```
//!
//! and its epsilon-regularized distributional form
//! `-(alpha!/pi) Re[i^(alpha+1) / (x + i eps)^(alpha+1)]`.
//!
//! L-periodic string: the image sum
//! `-K_L(|x|) = (alpha! sin(alpha pi/2)/pi) sum_n |x - nL|^(-alpha-1)`,
//! evaluated three ways that must agree: through absolute-value Hurwitz
//! zeta functions, by direct lattice summation with an Euler-Maclaurin
//! tail, and through the regularized complex-zeta representation at
//! `eps > 0` (with Richardson extrapolation to the `eps -> 0` limit).
//!
//! All functions return the *fractional Laplacian* kernel `-K`, positive
//! for `0 < alpha < 2`; for even-integer `alpha` the prefactor
//! `sin(alpha pi/2)` vanishes and the non-regularized kernels are
//! pointwise zero away from the lattice points (their distributional
//! delta-derivative content is not a pointwise object).

use num_complex::Complex;

use crate::chain::{spectral_element, ChainSpec};
use crate::elements::asymptotic_prefactor;
use crate::error::{Error, Result};
use crate::gamma::ln_factorial;
use crate::order::FractionalOrder;
use crate::scalar::Real;
use crate::zeta::{hurwitz_zeta_abs, hurwitz_zeta_complex};

/// Continuum scaling `mu(h) = rho0 h`, `W^2(h) = A_alpha h^(-alpha)`,
/// which keeps total mass and elastic energy finite as `h -> 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuumScaling<T> {
    rho0: T,
    a_alpha: T,
}

impl<T: Real> ContinuumScaling<T> {
    pub fn new(rho0: T, a_alpha: T) -> Result<Self> {
        if !(rho0 > T::zero()) || !(a_alpha > T::zero()) {
            return Err(Error::invalid("rho0 and A_alpha must be positive"));
        }
        Ok(Self { rho0, a_alpha })
    }

    pub fn rho0(&self) -> T {
        self.rho0
    }
    pub fn a_alpha(&self) -> T {
        self.a_alpha
    }

    /// Particle mass at lattice constant `h`.
    pub fn mu_at(&self, h: T) -> T {
        self.rho0 * h
    }

    /// Frequency-squared scale at lattice constant `h`.
    pub fn omega2_at(&self, order: &FractionalOrder<T>, h: T) -> T {
        self.a_alpha * h.powf(-order.alpha())
    }

    /// Chain of `n` particles filling length `l_period` under this scaling.
    pub fn chain(
        &self,
        order: &FractionalOrder<T>,
        l_period: T,
        n: usize,
    ) -> Result<ChainSpec<T>> {
        let h = l_period / T::of_usize(n);
        ChainSpec::new(n, h, self.mu_at(h), self.omega2_at(order, h), *order)
    }
}

/// Evaluation route for the periodic kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PeriodicMethod<T> {
    /// Hurwitz-zeta closed form (default).
    Zeta,
    /// Direct image sum with Euler-Maclaurin tail (independent check).
    LatticeSum,
    /// Complex-zeta regularized representation at the given `eps > 0`.
    Regularized(T),
}

/// Infinite-space fractional Laplacian kernel
/// `-K_inf(|x|) = (alpha!/pi) sin(alpha pi/2) |x|^(-alpha-1)`.
///
/// Hyper-singular at `x = 0` (rejected); identically zero for
/// even-integer `alpha`.
pub fn riesz_kernel_infinite<T: Real>(order: &FractionalOrder<T>, x: T) -> Result<T> {
    if x == T::zero() {
        return Err(Error::singular(
            "kernel is hyper-singular at x = 0; use the regularized form",
        ));
    }
    Ok(-asymptotic_prefactor(order) * x.abs().powf(-order.alpha() - T::one()))
}

/// Regularized infinite-space kernel
/// `-(alpha!/pi) Re[i^(alpha+1) / (x + i eps)^(alpha+1)]`,
/// finite everywhere for `eps > 0` and tending to
/// [`riesz_kernel_infinite`] pointwise away from 0.
pub fn regularized_kernel_infinite<T: Real>(
    order: &FractionalOrder<T>,
    x: T,
    epsilon: T,
) -> Result<T> {
    if !(epsilon > T::zero()) {
        return Err(Error::invalid("regularization requires eps > 0"));
    }
    let alpha = order.alpha();
    let beta = alpha + T::one();
    let i_pow = Complex::from_polar(T::one(), T::FRAC_PI_2() * beta);
    let z = Complex::new(x, epsilon).powf(beta);
    Ok(-ln_factorial(alpha).exp() / T::PI() * (i_pow / z).re)
}

/// L-periodic fractional Laplacian kernel `-K_L(|x|)`, by the chosen
/// method. Exactly even and L-periodic in `x`.
pub fn periodic_kernel<T: Real>(
    order: &FractionalOrder<T>,
    l_period: T,
    x: T,
    method: PeriodicMethod<T>,
) -> Result<T> {
    if !(l_period > T::zero()) {
        return Err(Error::invalid("period L must be > 0"));
    }
    let xi = x / l_period;
    match method {
        PeriodicMethod::Zeta => periodic_zeta(order, l_period, xi),
        PeriodicMethod::LatticeSum => periodic_lattice_sum(order, l_period, xi),
        PeriodicMethod::Regularized(eps) => periodic_regularized(order, l_period, xi, eps),
    }
}

fn kernel_amplitude<T: Real>(order: &FractionalOrder<T>) -> T {
    // (alpha!/pi) sin(alpha pi/2) = -asymptotic_prefactor
    -asymptotic_prefactor(order)
}

/// Zeta route: `A/L^(alpha+1) [ -|xi|^(-alpha-1) + Z(alpha+1, xi) + Z(alpha+1, -xi) ]`
/// with `Z` the absolute-value Hurwitz zeta; the two zetas double-count
/// the `n = 0` image, hence the subtraction.
fn periodic_zeta<T: Real>(order: &FractionalOrder<T>, l_period: T, xi: T) -> Result<T> {
    if xi == xi.round() {
        return Err(Error::singular("x is a multiple of L (kernel singularity)"));
    }
    if order.is_even_integer() {
        return Ok(T::zero());
    }
    let beta = order.alpha() + T::one();
    let body = -xi.abs().powf(-beta) + hurwitz_zeta_abs(beta, xi)? + hurwitz_zeta_abs(beta, -xi)?;
    Ok(kernel_amplitude(order) * l_period.powf(-beta) * body)
}

/// Direct image sum `A/L^(alpha+1) sum_n |xi - n|^(-alpha-1)` with the
/// argument folded to `[-1/2, 1/2]` and an Euler-Maclaurin tail beyond
/// the summed images. Kept free of the Hurwitz-zeta code so the two
/// routes check each other.
fn periodic_lattice_sum<T: Real>(order: &FractionalOrder<T>, l_period: T, xi: T) -> Result<T> {
    let xi = xi - xi.round();
    if xi == T::zero() {
        return Err(Error::singular("x is a multiple of L (kernel singularity)"));
    }
    if order.is_even_integer() {
        return Ok(T::zero());
    }
    let beta = order.alpha() + T::one();
    // image count from the magnitude of the first omitted correction term
    let n_images = 64.max(tail_image_count(beta));
    let mut sum = T::zero();
    for n in (1..=n_images).rev() {
        let nf = T::of_usize(n);
        sum += (nf - xi).powf(-beta) + (nf + xi).powf(-beta);
    }
    sum += xi.abs().powf(-beta);
    // tail: integral + midpoint + B2 correction for both directions
    let a = T::of_usize(n_images + 1);
    for &side in &[-xi, xi] {
        let c = a + side;
        sum += c.powf(T::one() - beta) / (beta - T::one())
            + T::lit(0.5) * c.powf(-beta)
            + beta / T::lit(12.0) * c.powf(-beta - T::one());
    }
    Ok(kernel_amplitude(order) * l_period.powf(-beta) * sum)
}

/// Images needed so the first omitted tail correction
/// `~ b(b+1)(b+2) n^(-b-3) / 720` sits far below f64 round-off.
fn tail_image_count<T: Real>(beta: T) -> usize {
    let b = beta.to_f64().unwrap_or(2.0);
    let target = 1e-17f64;
    let scale = b * (b + 1.0) * (b + 2.0) / 720.0;
    let n = (scale / target).powf(1.0 / (b + 3.0)).ceil();
    (n as usize).clamp(64, 100_000)
}

/// Regularized route at `eps > 0`: the exact resummation of
/// `-(alpha!/pi) Re sum_n i^(alpha+1) (x - nL + i eps)^(-alpha-1)` is
///
/// ```text
/// (alpha!/(pi L^(alpha+1))) Re{ i^(alpha+1) [ (-xi + i e)^(-alpha-1)
///     - zeta(alpha+1, xi + i e) - zeta(alpha+1, -xi + i e) ] },  e = eps/L
/// ```
///
/// finite for every `x` (including lattice points).
fn periodic_regularized<T: Real>(
    order: &FractionalOrder<T>,
    l_period: T,
    xi: T,
    eps: T,
) -> Result<T> {
    if !(eps > T::zero()) {
        return Err(Error::invalid("regularization requires eps > 0"));
    }
    let alpha = order.alpha();
    let beta = alpha + T::one();
    // the regularized image sum is exactly L-periodic and even: fold to [0,1)
    let xi = xi - xi.floor();
    let e = eps / l_period;
    let i_pow = Complex::from_polar(T::one(), T::FRAC_PI_2() * beta);
    let singular = Complex::new(-xi, e).powf(-beta);
    let z_plus = hurwitz_zeta_complex(beta, Complex::new(xi, e))?;
    let z_minus = hurwitz_zeta_complex(beta, Complex::new(-xi, e))?;
    let body = (i_pow * (singular - z_plus - z_minus)).re;
    Ok(ln_factorial(alpha).exp() / (T::PI() * l_period.powf(beta)) * body)
}

/// Richardson (Neville) extrapolation of the regularized kernel to
/// `eps -> 0+` over the geometric sequence `eps0 / 2^k`.
///
/// `eps0` defaults to an eighth of the distance to the nearest kernel
/// singularity when not given.
pub fn periodic_kernel_extrapolated<T: Real>(
    order: &FractionalOrder<T>,
    l_period: T,
    x: T,
    eps0: Option<T>,
    levels: usize,
) -> Result<T> {
    if !(l_period > T::zero()) {
        return Err(Error::invalid("period L must be > 0"));
    }
    let xi = x / l_period;
    let folded = xi - xi.floor();
    let gap = folded.min(T::one() - folded);
    if gap == T::zero() {
        return Err(Error::singular("eps -> 0 limit diverges at lattice points"));
    }
    let eps0 = eps0.unwrap_or(gap * l_period / T::lit(8.0));
    let levels = levels.max(2);
    let mut eps = Vec::with_capacity(levels);
    let mut tab = Vec::with_capacity(levels);
    let mut e = eps0;
    for _ in 0..levels {
        eps.push(e);
        tab.push(periodic_kernel(order, l_period, x, PeriodicMethod::Regularized(e))?);
        e *= T::lit(0.5);
    }
    // Neville tableau evaluated at eps = 0
    for m in 1..levels {
        for i in 0..levels - m {
            tab[i] = (eps[i] * tab[i + 1] - eps[i + m] * tab[i]) / (eps[i] - eps[i + m]);
        }
    }
    Ok(tab[0])
}

/// Convergence study of the scaled lattice elements toward the periodic
/// kernel: for each `n` in `n_values`, builds the chain under `scaling`,
/// snaps `x` to the nearest site `p = round(x/h)`, and reports
/// `(h, relative error of (mu/h^2) f_N(p) against rho0 A_alpha K_L(x))`.
pub fn continuum_limit_residual<T: Real>(
    scaling: &ContinuumScaling<T>,
    order: &FractionalOrder<T>,
    x: T,
    l_period: T,
    n_values: &[usize],
) -> Result<Vec<(T, T)>> {
    if order.is_even_integer() {
        return Err(Error::invalid(
            "integer orders have distributional kernels; no pointwise limit",
        ));
    }
    if !(x > T::zero()) || !(x < l_period) {
        return Err(Error::invalid("need 0 < x < L"));
    }
    let minus_k_l = periodic_kernel(order, l_period, x, PeriodicMethod::Zeta)?;
    let target = -scaling.rho0 * scaling.a_alpha * minus_k_l;
    let mut out = Vec::with_capacity(n_values.len());
    for &n in n_values {
        let chain = scaling.chain(order, l_period, n)?;
        let h = chain.h();
        let p = (x / h).round();
        let p = p
            .to_usize()
            .ok_or_else(|| Error::invalid("x/h does not round to a lattice site"))?;
        if p == 0 || p >= n {
            return Err(Error::invalid(format!(
                "lattice with N = {n} too coarse: x/h rounds to {p}"
            )));
        }
        let lattice = chain.mu() / (h * h) * spectral_element(&chain, p)?;
        out.push((h, ((lattice - target) / target).abs()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn ord(alpha: f64) -> FractionalOrder<f64> {
        FractionalOrder::new(alpha).unwrap()
    }

    #[test]
    fn infinite_kernel_values() {
        let o = ord(1.0);
        assert!((riesz_kernel_infinite(&o, 1.0).unwrap() - 1.0 / PI).abs() < 5e-15);
        assert!((riesz_kernel_infinite(&o, 2.0).unwrap() - 1.0 / (4.0 * PI)).abs() < 5e-15);
        // even kernel
        assert_eq!(
            riesz_kernel_infinite(&o, -2.0).unwrap(),
            riesz_kernel_infinite(&o, 2.0).unwrap()
        );
        // integer orders vanish pointwise
        assert_eq!(riesz_kernel_infinite(&ord(2.0), 0.7).unwrap(), 0.0);
        assert!(riesz_kernel_infinite(&o, 0.0).is_err());
    }

    #[test]
    fn regularized_limits_to_hypersingular() {
        let o = ord(1.0);
        let v = regularized_kernel_infinite(&o, 1.0, 1e-8).unwrap();
        assert!((v - 1.0 / PI).abs() < 1e-7);
        // finite at the origin for eps > 0
        let v = regularized_kernel_infinite(&o, 0.0, 1.0).unwrap();
        assert!(v.is_finite());
        assert!(regularized_kernel_infinite(&o, 1.0, 0.0).is_err());
    }

    #[test]
    fn regularized_alpha2_matches_poisson_second_derivative() {
        // For alpha = 2 the regularized kernel equals d^2/dx^2 of the
        // Poisson kernel pi^-1 eps/(x^2+eps^2); finite-difference oracle.
        let o = ord(2.0);
        let (x, eps) = (0.7, 0.1);
        let poisson = |x: f64| eps / (PI * (x * x + eps * eps));
        let dd = 1e-4;
        let fd = (poisson(x + dd) - 2.0 * poisson(x) + poisson(x - dd)) / (dd * dd);
        let got = regularized_kernel_infinite(&o, x, eps).unwrap();
        assert!((got - fd).abs() < 1e-6, "got {got}, fd {fd}");
    }

    #[test]
    fn periodic_spot_value_pi() {
        // -K_L = (1/pi) sum |1/2 - n|^-2 = pi at alpha=1, L=1, x=1/2
        for method in [PeriodicMethod::Zeta, PeriodicMethod::LatticeSum] {
            let v = periodic_kernel(&ord(1.0), 1.0, 0.5, method).unwrap();
            assert!((v - PI).abs() < 1e-10, "{method:?}: {v}");
        }
    }

    #[test]
    fn zeta_and_lattice_sum_agree() {
        for &alpha in &[0.5, 1.5, 2.5, 3.7] {
            for &xi in &[0.1, 0.25, 0.5, 0.9] {
                let o = ord(alpha);
                let a = periodic_kernel(&o, 1.0, xi, PeriodicMethod::Zeta).unwrap();
                let b = periodic_kernel(&o, 1.0, xi, PeriodicMethod::LatticeSum).unwrap();
                assert!(
                    ((a - b) / a).abs() < 1e-8,
                    "alpha={alpha} xi={xi}: zeta {a} vs sum {b}"
                );
            }
        }
    }

    #[test]
    fn evenness_and_periodicity() {
        let o = ord(1.5);
        let l = 2.5;
        let x = 0.4;
        let base = periodic_kernel(&o, l, x, PeriodicMethod::Zeta).unwrap();
        for &shifted in &[-x, x + l, x - 3.0 * l, -x + 2.0 * l] {
            let v = periodic_kernel(&o, l, shifted, PeriodicMethod::Zeta).unwrap();
            assert!(
                ((v - base) / base).abs() < 1e-13,
                "x={shifted}: {v} vs {base}"
            );
        }
        // regularized route is even and periodic at finite eps too
        let m = PeriodicMethod::Regularized(0.05);
        let base = periodic_kernel(&o, l, x, m).unwrap();
        for &shifted in &[-x, x + l, -x - l] {
            let v = periodic_kernel(&o, l, shifted, m).unwrap();
            assert!(((v - base) / base).abs() < 1e-12);
        }
    }

    #[test]
    fn regularized_extrapolation_agrees_with_zeta() {
        for &alpha in &[0.5, 1.5, 2.5, 3.7] {
            for &xi in &[0.1, 0.25, 0.4] {
                let o = ord(alpha);
                let want = periodic_kernel(&o, 1.0, xi, PeriodicMethod::Zeta).unwrap();
                let got = periodic_kernel_extrapolated(&o, 1.0, xi, None, 6).unwrap();
                assert!(
                    ((got - want) / want).abs() < 1e-6,
                    "alpha={alpha} xi={xi}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn large_period_recovers_infinite_kernel() {
        let o = ord(1.0);
        let inf = riesz_kernel_infinite(&o, 1.0).unwrap();
        let per = periodic_kernel(&o, 1e6, 1.0, PeriodicMethod::Zeta).unwrap();
        assert!(((per - inf) / inf).abs() < 1e-6);
        for &ratio in &[1e4, 1e5] {
            let per = periodic_kernel(&o, ratio, 1.0, PeriodicMethod::Zeta).unwrap();
            assert!(((per - inf) / inf).abs() < 1e-6, "L={ratio}");
        }
    }

    #[test]
    fn singular_points_rejected() {
        let o = ord(1.0);
        assert!(periodic_kernel(&o, 1.0, 0.0, PeriodicMethod::Zeta).is_err());
        assert!(periodic_kernel(&o, 1.0, 3.0, PeriodicMethod::LatticeSum).is_err());
        // finite under regularization
        assert!(periodic_kernel(&o, 1.0, 0.0, PeriodicMethod::Regularized(0.5)).is_ok());
        assert!(periodic_kernel_extrapolated(&o, 1.0, 0.0, None, 5).is_err());
    }

    #[test]
    fn integer_orders_vanish_pointwise() {
        let v = periodic_kernel(&ord(2.0), 1.0, 0.3, PeriodicMethod::Zeta).unwrap();
        assert_eq!(v, 0.0);
        let v = periodic_kernel(&ord(4.0), 1.0, 0.3, PeriodicMethod::LatticeSum).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn regularized_kernel_acts_as_distribution() {
        // Convolving the regularized kernel with a smooth periodic field
        // converges as eps -> 0; for alpha = 2 the limit is u''(x).
        let l = 2.0 * PI;
        let x = 2.3;
        let u = |y: f64| y.sin() + 0.3 * (2.0 * y).cos();
        let m = 4096usize;
        let conv = |order: &FractionalOrder<f64>, eps: f64| -> f64 {
            let mut s = 0.0;
            for j in 0..m {
                let y = j as f64 * l / m as f64;
                s += periodic_kernel(order, l, x - y, PeriodicMethod::Regularized(eps)).unwrap()
                    * u(y);
            }
            s * l / m as f64
        };
        let eps = [0.1, 0.05, 0.025];

        let o2 = ord(2.0);
        let vals: Vec<f64> = eps.iter().map(|&e| conv(&o2, e)).collect();
        let dd = 1e-4;
        let fd = (u(x + dd) - 2.0 * u(x) + u(x - dd)) / (dd * dd);
        // successive values approach the finite-difference second derivative
        assert!((vals[1] - fd).abs() < (vals[0] - fd).abs());
        assert!((vals[2] - fd).abs() < (vals[1] - fd).abs());
        // Neville extrapolation of the three prescribed eps values
        let mut tab = vals.clone();
        for w in 1..3 {
            for i in 0..3 - w {
                tab[i] = (eps[i] * tab[i + 1] - eps[i + w] * tab[i]) / (eps[i] - eps[i + w]);
            }
        }
        assert!(
            ((tab[0] - fd) / fd).abs() < 1e-3,
            "extrapolated {} vs u'' {}",
            tab[0],
            fd
        );

        // fractional order: the eps sequence still converges
        let o = ord(1.2);
        let vals: Vec<f64> = eps.iter().map(|&e| conv(&o, e)).collect();
        assert!((vals[2] - vals[1]).abs() < (vals[1] - vals[0]).abs());
    }

    #[test]
    fn scaling_relations() {
        let s = ContinuumScaling::new(2.0f64, 3.0).unwrap();
        let o = ord(1.5);
        assert!((s.mu_at(0.1) - 0.2).abs() < 1e-15);
        assert!((s.omega2_at(&o, 0.1) - 3.0 * 0.1f64.powf(-1.5)).abs() < 1e-12);
        let chain = s.chain(&o, 1.0, 64).unwrap();
        assert_eq!(chain.n(), 64);
        assert!((chain.h() - 1.0 / 64.0).abs() < 1e-18);
        assert!(ContinuumScaling::new(0.0f64, 1.0).is_err());
    }

    #[test]
    fn continuum_limit_converges() {
        let s = ContinuumScaling::new(1.0f64, 1.0).unwrap();
        let o = ord(1.5);
        let errs = continuum_limit_residual(&s, &o, 0.3, 1.0, &[64, 256, 1024]).unwrap();
        for w in errs.windows(2) {
            assert!(w[1].1 < w[0].1, "errors should decrease: {errs:?}");
        }
        assert!(errs.last().unwrap().1 < 1e-2);
        // excluded cases
        assert!(continuum_limit_residual(&s, &ord(2.0), 0.3, 1.0, &[64]).is_err());
        assert!(continuum_limit_residual(&s, &o, 0.0, 1.0, &[64]).is_err());
        // too coarse: x/h rounds to 0
        assert!(continuum_limit_residual(&s, &o, 0.05, 1.0, &[4]).is_err());
    }

    #[test]
    fn continuum_limit_target_is_pi_at_alpha_one() {
        // (mu/h^2) f_N(x/h) -> rho0 A K_L = -rho0 A pi at alpha=1, x=1/2, L=1
        let rho0 = 2.0;
        let a = 1.5;
        let s = ContinuumScaling::new(rho0, a).unwrap();
        let o = ord(1.0);
        let errs = continuum_limit_residual(&s, &o, 0.5, 1.0, &[64, 256, 1024]).unwrap();
        assert!(errs.last().unwrap().1 < 1e-2);
        let chain = s.chain(&o, 1.0, 1024).unwrap();
        let lattice = chain.mu() / (chain.h() * chain.h())
            * spectral_element(&chain, 512).unwrap();
        let target = -rho0 * a * PI;
        assert!(
            ((lattice - target) / target).abs() < 1e-2,
            "lattice {lattice} vs rho0 A K_L {target}"
        );
    }
}
