//! Closed-form matrix elements of the fractional characteristic matrix on
//! the infinite chain.
//!
//! All values are dimensionless ratios `f(|p|) / W^2`; the dimensional
//! factor `W^2` (units `1/s^2`) lives on [`crate::chain::ChainSpec`].
//!
//! Three regimes are distinguished:
//!
//! * `alpha = 2m` even integer: the matrix localizes; elements are signed
//!   integer binomials `(-1)^p C(2m, m+p)`, exactly zero for `|p| > m`.
//! * non-integer `alpha/2`, small `|p| <= alpha/2`: the generalized
//!   binomial `(-1)^p alpha! / ((alpha/2-p)! (alpha/2+p)!)` is evaluated
//!   directly in log space (all Gamma arguments positive there).
//! * non-integer `alpha/2`, large `p`: the reflection form
//!   `-(alpha!/pi) sin(alpha pi/2) Gamma(p-alpha/2)/Gamma(alpha/2+p+1)`
//!   keeps every Gamma argument positive for arbitrarily large `p`.

use crate::error::{Error, Result};
use crate::gamma::{binomial_exact, ln_factorial, ln_gamma_diff_sym, sin_half_pi};
use crate::order::FractionalOrder;
use crate::scalar::Real;

/// Largest even-integer half-order evaluated through exact integer
/// binomials; beyond this the log-space path takes over.
const EXACT_BINOMIAL_MAX_HALF: u64 = 30;

/// Diagonal element `f(0)/W^2 = alpha! / ((alpha/2)!)^2`, strictly positive.
pub fn diagonal_element<T: Real>(order: &FractionalOrder<T>) -> T {
    if let Some(m) = order.even_integer_half() {
        if m <= EXACT_BINOMIAL_MAX_HALF {
            return binomial_exact(2 * m, m);
        }
    }
    let alpha = order.alpha();
    (ln_factorial(alpha) - T::lit(2.0) * ln_factorial(order.half())).exp()
}

/// Off-diagonal and diagonal element `f(|p|)/W^2` of the infinite chain.
///
/// Depends on `|p|` only (Toeplitz symmetry); negative `p` is folded at
/// entry. `p = 0` is routed to [`diagonal_element`], which is the
/// well-conditioned direct form.
pub fn infinite_element<T: Real>(order: &FractionalOrder<T>, p: i64) -> T {
    let p_abs = p.unsigned_abs();
    if p_abs == 0 {
        return diagonal_element(order);
    }
    if let Some(m) = order.even_integer_half() {
        // localization: identically zero beyond the bandwidth m
        if p_abs > m {
            return T::zero();
        }
        if m <= EXACT_BINOMIAL_MAX_HALF {
            let mag: T = binomial_exact(2 * m, m + p_abs);
            return if p_abs.is_multiple_of(2) { mag } else { -mag };
        }
    }
    let alpha = order.alpha();
    let half = order.half();
    let pf = T::lit(p_abs as f64);
    if pf < half + T::lit(0.5) {
        // direct generalized binomial; (alpha/2 - p + 1) > 0 here
        let mag =
            (ln_factorial(alpha) - ln_factorial(half - pf) - ln_factorial(half + pf)).exp();
        if p_abs.is_multiple_of(2) {
            mag
        } else {
            -mag
        }
    } else {
        // reflection form; both Gamma arguments positive. The ratio
        // Gamma(p - alpha/2)/Gamma(p + alpha/2 + 1) is the symmetric
        // difference around w = p + 1/2 with s = (alpha+1)/2.
        let w = pf + T::lit(0.5);
        let s = (alpha + T::one()) * T::lit(0.5);
        let mag = (ln_factorial(alpha) + ln_gamma_diff_sym(w, s)).exp();
        -sin_half_pi(alpha) / T::PI() * mag
    }
}

/// First `p_max + 1` elements `f(0..=p_max)/W^2` by the multiplicative
/// recursion `f(p+1) = -f(p) (alpha/2 - p) / (alpha/2 + p + 1)`.
///
/// This path shares no Gamma evaluations with [`infinite_element`] beyond
/// the seed, so the two serve as mutual consistency checks.
pub fn element_row<T: Real>(order: &FractionalOrder<T>, p_max: usize) -> Vec<T> {
    let half = order.half();
    let mut row = Vec::with_capacity(p_max + 1);
    let mut value = diagonal_element(order);
    row.push(value);
    for p in 0..p_max {
        let pf = T::of_usize(p);
        value = -value * (half - pf) / (half + pf + T::one());
        row.push(value);
    }
    row
}

/// Large-`p` asymptotic element
/// `-(alpha!/pi) sin(alpha pi/2) |p|^(-alpha-1)`.
///
/// Requires `p != 0`; exact for no finite `p` but the ratio to the exact
/// element tends to 1 as `p` grows. For even-integer `alpha` the
/// prefactor vanishes, consistent with localization.
pub fn asymptotic_element<T: Real>(order: &FractionalOrder<T>, p: i64) -> Result<T> {
    if p == 0 {
        return Err(Error::invalid(
            "asymptotic element is defined for p != 0 (use diagonal_element)",
        ));
    }
    let pf = T::lit(p.unsigned_abs() as f64);
    Ok(asymptotic_prefactor(order) * pf.powf(-order.alpha() - T::one()))
}

/// Signed amplitude `-(alpha!/pi) sin(alpha pi/2)` of the power-law decay.
///
/// Also the (negated) amplitude of the continuum-limit kernel; the
/// magnitude drives truncation bounds for image sums.
pub fn asymptotic_prefactor<T: Real>(order: &FractionalOrder<T>) -> T {
    if order.is_even_integer() {
        return T::zero();
    }
    let alpha = order.alpha();
    -sin_half_pi(alpha) / T::PI() * ln_factorial(alpha).exp()
}
