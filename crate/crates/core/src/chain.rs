//! Fractional characteristic and Laplacian matrices on the finite cyclic
//! chain.
//!
//! Two independent constructions are provided and must agree:
//!
//! * [`spectral_element`]: the exact finite Fourier sum
//!   `f_N(|p|) = (W^2/N) sum_l cos(kappa_l p) (4 sin^2(kappa_l/2))^(alpha/2)`
//!   over Bloch wavenumbers `kappa_l = 2 pi l / N`. This is the designated
//!   oracle.
//! * [`periodized_element`]: the infinite-chain closed forms summed over
//!   periodic images `f_N(|p|) = sum_n f_inf(|p - nN|)`.
//!
//! The image series converges only like `n^-alpha`, far too slowly to
//! truncate term by term at small `alpha`. The tail beyond the exact
//! images is therefore summed analytically: the Gamma-function ratio in
//! the element is expanded around the symmetric midpoint
//! `w = q + 1/2`,
//!
//! ```text
//! Gamma(w-s)/Gamma(w+s) = w^(-2s) (1 + s/w + c2/w^2 + s c2/w^3 + ...),
//! s = (alpha+1)/2,
//! ```
//!
//! and each power of `1/w` sums over images to a Hurwitz zeta value. With
//! the default budget the periodized elements match the spectral sums to
//! about 1e-14 on the whole supported range.

use crate::diffusion::FieldOnRing;
use crate::elements::{asymptotic_prefactor, infinite_element};
use crate::error::{Error, Result};
use crate::order::FractionalOrder;
use crate::scalar::Real;
use crate::zeta::hurwitz_zeta;
use num_complex::Complex;

/// Default absolute tolerance for periodized elements.
pub const DEFAULT_PERIODIZATION_TOL: f64 = 1e-12;

/// Default cap on periodic images summed exactly.
pub const DEFAULT_MAX_IMAGES: usize = 1_000_000;

/// Finite cyclic chain: `N` particles of mass `mu` spaced `h` apart, with
/// fractional order `alpha` and frequency-squared scale `omega2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainSpec<T> {
    n: usize,
    h: T,
    mu: T,
    omega2: T,
    order: FractionalOrder<T>,
}

impl<T: Real> ChainSpec<T> {
    pub fn new(n: usize, h: T, mu: T, omega2: T, order: FractionalOrder<T>) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid("chain needs N >= 3 particles"));
        }
        if !(h > T::zero()) || !(mu > T::zero()) || !(omega2 > T::zero()) {
            return Err(Error::invalid("h, mu, omega2 must all be positive"));
        }
        Ok(Self { n, h, mu, omega2, order })
    }

    /// Chain with `h = mu = omega2 = 1`.
    pub fn unit(n: usize, order: FractionalOrder<T>) -> Result<Self> {
        Self::new(n, T::one(), T::one(), T::one(), order)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn h(&self) -> T {
        self.h
    }
    pub fn mu(&self) -> T {
        self.mu
    }
    pub fn omega2(&self) -> T {
        self.omega2
    }
    pub fn order(&self) -> &FractionalOrder<T> {
        &self.order
    }

    /// Chain length `L = N h`.
    pub fn length(&self) -> T {
        T::of_usize(self.n) * self.h
    }
}

/// One point of the dispersion relation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionPoint<T> {
    /// Mode index `0..N-1`.
    pub l: usize,
    /// Bloch wavenumber `kappa_l = 2 pi l / N`.
    pub kappa: T,
    /// Eigenvalue `omega^2_alpha(kappa_l)`.
    pub omega2: T,
}

/// Element construction method for the finite chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Exact finite Fourier sum (the reference oracle).
    Spectral,
    /// Periodization of the infinite-chain closed forms.
    Periodized,
}

/// Dispersion `omega^2_alpha(kappa_l) = W^2 2^alpha |sin(kappa_l/2)|^alpha`.
pub fn dispersion<T: Real>(spec: &ChainSpec<T>, l: usize) -> Result<DispersionPoint<T>> {
    if l >= spec.n {
        return Err(Error::invalid(format!(
            "mode index {l} out of range 0..{}",
            spec.n
        )));
    }
    let kappa = T::lit(2.0) * T::PI() * T::of_usize(l) / T::of_usize(spec.n);
    let omega2 = spec.omega2 * mode_eigenvalue(spec.order.alpha(), kappa);
    Ok(DispersionPoint { l, kappa, omega2 })
}

/// `(4 sin^2(kappa/2))^(alpha/2) = |2 sin(kappa/2)|^alpha`.
fn mode_eigenvalue<T: Real>(alpha: T, kappa: T) -> T {
    let s = (T::lit(2.0) * (kappa * T::lit(0.5)).sin()).abs();
    if s == T::zero() {
        T::zero()
    } else {
        s.powf(alpha)
    }
}

/// Exact spectral element `f_N(|p|)` via the finite Fourier sum.
///
/// Compensated (Kahan) summation keeps the integer-order entries exact to
/// a few ulps even at `N = 64`.
pub fn spectral_element<T: Real>(spec: &ChainSpec<T>, p: usize) -> Result<T> {
    if p >= spec.n {
        return Err(Error::invalid(format!(
            "element offset {p} out of range 0..{}",
            spec.n
        )));
    }
    let n = spec.n;
    let alpha = spec.order.alpha();
    let two_pi = T::lit(2.0) * T::PI();
    let mut sum = T::zero();
    let mut carry = T::zero();
    for l in 0..n {
        let kappa = two_pi * T::of_usize(l) / T::of_usize(n);
        let term = (kappa * T::of_usize(p)).cos() * mode_eigenvalue(alpha, kappa);
        let y = term - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    Ok(spec.omega2 * sum / T::of_usize(n))
}

/// Periodized element `f_N(|p|) = sum_n f_inf(|p - nN|)`, truncated when
/// the analytically summed tail settles below `tol` (absolute, per unit
/// `W^2`).
///
/// Even-integer orders terminate after the finitely many images inside
/// the bandwidth. Signals [`Error::NonConvergence`] only if the tolerance
/// is unreachable within [`DEFAULT_MAX_IMAGES`] exact images.
pub fn periodized_element<T: Real>(spec: &ChainSpec<T>, p: usize, tol: T) -> Result<T> {
    if p >= spec.n {
        return Err(Error::invalid(format!(
            "element offset {p} out of range 0..{}",
            spec.n
        )));
    }
    if !(tol > T::zero()) {
        return Err(Error::invalid("periodization tolerance must be > 0"));
    }
    let order = &spec.order;
    let n = spec.n as i64;
    let p = p as i64;

    if let Some(m) = order.even_integer_half() {
        // localized band: only images with |p + kN| <= m contribute
        let m = m as i64;
        let mut sum = T::zero();
        let k_lo = (-m - p).div_euclid(n);
        let k_hi = (m - p).div_euclid(n);
        for k in k_lo..=k_hi {
            sum += infinite_element(order, p + k * n);
        }
        return Ok(spec.omega2 * sum);
    }

    // round-off floor: the image sums carry terms of the diagonal's
    // magnitude, so tolerances below one ulp of it cannot be certified
    let floor = crate::elements::diagonal_element(order) * T::epsilon();
    if tol < floor {
        return Err(Error::no_convergence(format!(
            "tolerance {tol:e} is below the attainable round-off floor {floor:e}"
        )));
    }

    let mut images = 16usize;
    let mut prev = periodized_sum(order, n, p, images);
    loop {
        images *= 2;
        let next = periodized_sum(order, n, p, images);
        if (next - prev).abs() <= tol * T::lit(0.5) {
            return Ok(spec.omega2 * next);
        }
        if images > DEFAULT_MAX_IMAGES {
            return Err(Error::no_convergence(format!(
                "periodization did not reach tol {tol:e} within {DEFAULT_MAX_IMAGES} images"
            )));
        }
        prev = next;
    }
}

/// Image sum with `n0` exact images per side plus the zeta-summed tail.
fn periodized_sum<T: Real>(order: &FractionalOrder<T>, n: i64, p: i64, n0: usize) -> T {
    let mut sum = infinite_element(order, p);
    for k in 1..=n0 as i64 {
        sum += infinite_element(order, p + k * n) + infinite_element(order, p - k * n);
    }
    sum + periodization_tail(order, n, p, n0)
}

/// Analytic tail `sum_{k>n0} [f_inf(p+kN) + f_inf(kN-p)]` from the
/// Gamma-ratio expansion; each `1/w` power sums to a Hurwitz zeta value.
fn periodization_tail<T: Real>(order: &FractionalOrder<T>, n: i64, p: i64, n0: usize) -> T {
    let alpha = order.alpha();
    let s = (alpha + T::one()) * T::lit(0.5);
    let coeffs = gamma_ratio_coefficients(s);
    let nf = T::lit(n as f64);
    let base = T::of_usize(n0) + T::one();
    let half = T::lit(0.5);
    let pf = T::lit(p as f64);
    let mut total = T::zero();
    for &offset in &[pf, -pf] {
        let a = base + (offset + half) / nf;
        for (k, &c) in coeffs.iter().enumerate() {
            let beta = alpha + T::one() + T::of_usize(k);
            // beta > 1 and a > 0 always hold here
            total += c * nf.powf(-beta) * hurwitz_zeta(beta, a).expect("tail zeta arguments");
        }
    }
    asymptotic_prefactor(order) * total
}

/// Coefficients `c_k(s)` of
/// `Gamma(w-s)/Gamma(w+s) = w^(-2s) sum_k c_k / w^k`; odd entries are `s`
/// times the preceding even ones.
fn gamma_ratio_coefficients<T: Real>(s: T) -> [T; 8] {
    let one = T::one();
    let two = T::lit(2.0);
    let c2 = s * (s + one) * (two * s + one) / T::lit(6.0);
    let c4 = s * (s + one) * (s + two) * (two * s + one) * (two * s + T::lit(3.0))
        * (T::lit(5.0) * s - one)
        / T::lit(360.0);
    let c6 = s
        * (s + one)
        * (s + two)
        * (s + T::lit(3.0))
        * (two * s + one)
        * (two * s + T::lit(3.0))
        * (two * s + T::lit(5.0))
        * (T::lit(35.0) * s * s - T::lit(21.0) * s + T::lit(4.0))
        / T::lit(45360.0);
    [one, s, c2, s * c2, c4, s * c4, c6, s * c6]
}

/// Symmetric circulant `N x N` matrix stored by its first row.
///
/// Entry `(i, j)` is `first_row[(j - i) mod N]`; assembly mirrors
/// `first_row[k]` onto `first_row[N-k]`, so the reflection symmetry
/// holds bit-exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantMatrix<T> {
    first_row: Vec<T>,
}

impl<T: Real> CirculantMatrix<T> {
    /// Builds from an explicit first row (used by tests and file loading).
    pub fn from_first_row(first_row: Vec<T>) -> Result<Self> {
        if first_row.len() < 3 {
            return Err(Error::invalid("circulant matrix needs N >= 3"));
        }
        Ok(Self { first_row })
    }

    pub fn n(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[T] {
        &self.first_row
    }

    /// Entry `(i, j)` by the cyclic index convention.
    pub fn entry(&self, i: usize, j: usize) -> T {
        let n = self.n();
        self.first_row[((j % n) + n - (i % n)) % n]
    }

    /// Matrix-vector product by direct circular convolution, `O(N^2)`.
    pub fn apply_direct(&self, u: &[T]) -> Result<Vec<T>> {
        let n = self.n();
        if u.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: u.len() });
        }
        let mut out = vec![T::zero(); n];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = T::zero();
            for (j, &x) in u.iter().enumerate() {
                acc += self.first_row[(j + n - i) % n] * x;
            }
            *o = acc;
        }
        Ok(out)
    }

    /// Eigenvalues by the real cosine transform of the first row,
    /// ordered by mode index `l`. Valid for reflection-symmetric rows,
    /// which is all this crate constructs.
    pub fn eigenvalues(&self) -> Vec<T> {
        let n = self.n();
        let two_pi = T::lit(2.0) * T::PI();
        (0..n)
            .map(|l| {
                let kappa = two_pi * T::of_usize(l) / T::of_usize(n);
                let mut sum = T::zero();
                let mut carry = T::zero();
                for (k, &r) in self.first_row.iter().enumerate() {
                    let term = r * (kappa * T::of_usize(k)).cos();
                    let y = term - carry;
                    let t = sum + y;
                    carry = (t - sum) - y;
                    sum = t;
                }
                sum
            })
            .collect()
    }

    /// Dense representation, for small-N oracles.
    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let n = self.n();
        (0..n)
            .map(|i| (0..n).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    fn scaled(&self, factor: T) -> Self {
        Self {
            first_row: self.first_row.iter().map(|&x| x * factor).collect(),
        }
    }
}

/// Assembles the `N x N` fractional characteristic matrix `f_N` with the
/// default periodization tolerance.
///
/// Elements are computed for `k <= N/2` and mirrored, making the
/// reflection symmetry `first_row[k] = first_row[N-k]` exact.
pub fn characteristic_matrix<T: Real>(
    spec: &ChainSpec<T>,
    method: Method,
) -> Result<CirculantMatrix<T>> {
    characteristic_matrix_with_tol(spec, method, T::lit(DEFAULT_PERIODIZATION_TOL))
}

/// [`characteristic_matrix`] with an explicit per-element tolerance for
/// the periodized method (ignored by the spectral method, which is exact).
pub fn characteristic_matrix_with_tol<T: Real>(
    spec: &ChainSpec<T>,
    method: Method,
    tol: T,
) -> Result<CirculantMatrix<T>> {
    let n = spec.n;
    let mut row = vec![T::zero(); n];
    for k in 0..=n / 2 {
        let value = match method {
            Method::Spectral => spectral_element(spec, k)?,
            Method::Periodized => periodized_element(spec, k, tol)?,
        };
        row[k] = value;
        if k != 0 {
            row[n - k] = value;
        }
    }
    Ok(CirculantMatrix { first_row: row })
}

/// Fractional Laplacian matrix `Delta_alpha = -mu f_N`: negative
/// semi-definite with a single zero mode at `l = 0`.
pub fn laplacian_matrix<T: Real>(spec: &ChainSpec<T>, method: Method) -> Result<CirculantMatrix<T>> {
    Ok(characteristic_matrix(spec, method)?.scaled(-spec.mu))
}

/// [`laplacian_matrix`] with an explicit periodization tolerance.
pub fn laplacian_matrix_with_tol<T: Real>(
    spec: &ChainSpec<T>,
    method: Method,
    tol: T,
) -> Result<CirculantMatrix<T>> {
    Ok(characteristic_matrix_with_tol(spec, method, tol)?.scaled(-spec.mu))
}

/// Born-von-Karman generator `2*1 - D - D^dagger` as a circulant matrix:
/// first row `[2, -1, 0, ..., 0, -1]`.
pub fn bvk_matrix<T: Real>(n: usize) -> Result<CirculantMatrix<T>> {
    if n < 3 {
        return Err(Error::invalid("Born-von-Karman matrix needs N >= 3"));
    }
    let mut row = vec![T::zero(); n];
    row[0] = T::lit(2.0);
    row[1] -= T::one();
    row[n - 1] -= T::one();
    Ok(CirculantMatrix { first_row: row })
}

/// Elastic energy `V = (mu/2) sum_{p,q} u_q f(|p-q|) u_p` of a real
/// displacement field against a characteristic matrix (`f`, not `Delta`).
///
/// Non-negative, and exactly translation invariant: zero for uniform `u`.
pub fn elastic_energy<T: Real>(
    matrix: &CirculantMatrix<T>,
    u: &FieldOnRing<T>,
    mu: T,
) -> Result<T> {
    let fu = matrix.apply_direct(u.values())?;
    let dot = u
        .values()
        .iter()
        .zip(fu.iter())
        .map(|(&a, &b)| a * b)
        .sum::<T>();
    Ok(mu * T::lit(0.5) * dot)
}

/// Elastic energy of a complex displacement field,
/// `V = (mu/2) sum u_q^* f(|p-q|) u_p` (real by self-adjointness).
pub fn elastic_energy_complex<T: Real>(
    matrix: &CirculantMatrix<T>,
    u: &[Complex<T>],
    mu: T,
) -> Result<T> {
    let n = matrix.n();
    if u.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: u.len() });
    }
    let mut acc = Complex::new(T::zero(), T::zero());
    for q in 0..n {
        for (p, &up) in u.iter().enumerate() {
            acc += u[q].conj() * matrix.entry(q, p) * up;
        }
    }
    Ok(mu * T::lit(0.5) * acc.re)
}
