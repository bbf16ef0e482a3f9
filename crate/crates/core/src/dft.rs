//! Thin FFT wrappers (any length, forward/normalized-inverse).

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::scalar::Real;

/// In-place forward DFT, `X_l = sum_p x_p exp(-2 pi i l p / N)`.
pub fn fft_forward<T: Real>(data: &mut [Complex<T>]) {
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(data.len()).process(data);
}

/// In-place inverse DFT with `1/N` normalization.
pub fn fft_inverse<T: Real>(data: &mut [Complex<T>]) {
    let n = data.len();
    let mut planner = FftPlanner::new();
    planner.plan_fft_inverse(n).process(data);
    let scale = T::one() / T::of_usize(n);
    for x in data.iter_mut() {
        *x *= scale;
    }
}

/// Lifts a real signal into the complex plane.
pub fn to_complex<T: Real>(real: &[T]) -> Vec<Complex<T>> {
    real.iter().map(|&x| Complex::new(x, T::zero())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_odd_length() {
        let x = vec![1.0f64, -2.0, 0.5, 3.25, -0.75];
        let mut data = to_complex(&x);
        fft_forward(&mut data);
        fft_inverse(&mut data);
        for (a, b) in x.iter().zip(data.iter()) {
            assert!((a - b.re).abs() < 1e-14 && b.im.abs() < 1e-14);
        }
    }
}
