//! Validated fractional order.


use crate::error::{Error, Result};
use crate::scalar::Real;

/// Tolerance for classifying `alpha/2` as an integer.
///
/// At integer `alpha/2` the reflection formula degenerates into a `0 * inf`
/// form, so those orders are dispatched to the exact binomial branch.
const EVEN_INTEGER_TOL: f64 = 1e-12;

/// Power-law exponent `alpha > 0` with its integer/non-integer classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalOrder<T> {
    alpha: T,
    even_half: Option<u64>,
}

impl<T: Real> FractionalOrder<T> {
    /// Validates the exponent. `alpha` must be finite and strictly positive;
    /// the value 0 is rejected (uniform translations would carry energy).
    pub fn new(alpha: T) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::invalid("alpha must be finite"));
        }
        if alpha <= T::zero() {
            return Err(Error::invalid("alpha must satisfy alpha > 0"));
        }
        let half = alpha / T::lit(2.0);
        let rounded = half.round();
        let even_half = if rounded >= T::one() && (half - rounded).abs() <= T::lit(EVEN_INTEGER_TOL)
        {
            rounded.to_u64()
        } else {
            None
        };
        Ok(Self { alpha, even_half })
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// `alpha / 2`.
    pub fn half(&self) -> T {
        self.alpha / T::lit(2.0)
    }

    /// True when `alpha = 2m` for an integer `m >= 1` (within tolerance).
    pub fn is_even_integer(&self) -> bool {
        self.even_half.is_some()
    }

    /// The integer `m` with `alpha = 2m`, when it exists.
    pub fn even_integer_half(&self) -> Option<u64> {
        self.even_half
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_forbidden_orders() {
        assert!(FractionalOrder::new(0.0f64).is_err());
        assert!(FractionalOrder::new(-1.5f64).is_err());
        assert!(FractionalOrder::new(f64::NAN).is_err());
        assert!(FractionalOrder::new(f64::INFINITY).is_err());
    }

    #[test]
    fn classifies_even_integers() {
        assert_eq!(FractionalOrder::new(2.0f64).unwrap().even_integer_half(), Some(1));
        assert_eq!(FractionalOrder::new(4.0f64).unwrap().even_integer_half(), Some(2));
        assert_eq!(FractionalOrder::new(10.0f64).unwrap().even_integer_half(), Some(5));
        assert_eq!(FractionalOrder::new(1.0f64).unwrap().even_integer_half(), None);
        assert_eq!(FractionalOrder::new(3.7f64).unwrap().even_integer_half(), None);
        // within the 1e-12 tolerance window
        assert_eq!(
            FractionalOrder::new(2.0f64 + 1e-13).unwrap().even_integer_half(),
            Some(1)
        );
        // alpha = 1 has half = 0.5: not integer
        assert!(!FractionalOrder::new(1.0f64).unwrap().is_even_integer());
        // odd integer alpha is not an even-integer order
        assert!(!FractionalOrder::new(3.0f64).unwrap().is_even_integer());
    }
}
