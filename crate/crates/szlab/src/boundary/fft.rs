use num_complex::Complex64;
use rustfft::FftPlanner;

pub(crate) fn forward(data: &mut [Complex64]) {
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_forward(data.len()).process(data);
}

/// Unnormalized inverse transform, `x_j = Σ_k X_k e^{+2πijk/N}`.
pub(crate) fn inverse(data: &mut [Complex64]) {
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_inverse(data.len()).process(data);
}

/// Values of the polynomial `Σ c_k z^k` at the `m` points `exp(2πij/m)`.
///
/// Coefficients are folded modulo `m` first, so any degree is fine.
pub(crate) fn eval_on_circle(coeffs: &[Complex64], m: usize) -> Vec<Complex64> {
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    for (k, c) in coeffs.iter().enumerate() {
        buf[k % m] += c;
    }
    inverse(&mut buf);
    buf
}

/// Fourier coefficients `c_k = (1/N) Σ_j u_j e^{-2πijk/N}` of real samples.
pub(crate) fn real_coefficients(u: &[f64]) -> Vec<Complex64> {
    let n = u.len() as f64;
    let mut buf: Vec<Complex64> = u.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    forward(&mut buf);
    for c in &mut buf {
        *c /= n;
    }
    buf
}
