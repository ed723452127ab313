//! Truncated power-series arithmetic on `f64` coefficients, sized for
//! renewal recursions with up to ~10⁷ terms.
//!
//! The only entry point is the series reciprocal, computed by Newton
//! doubling: if `v ≡ 1/a mod s^m` then `v(2 - av) ≡ 1/a mod s^{2m}`. Each
//! doubling costs two truncated multiplications, done by FFT with both real
//! operands packed into one complex transform.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

/// Linear convolution of `a` and `b`, truncated to `out_len` coefficients.
pub(crate) fn poly_mul_truncated(a: &[f64], b: &[f64], out_len: usize) -> Vec<f64> {
    debug_assert!(!a.is_empty() && !b.is_empty());
    let full = a.len() + b.len() - 1;
    let out_len = out_len.min(full);
    if a.len().min(b.len()) <= 32 || full <= 256 {
        return schoolbook_mul(a, b, out_len);
    }
    let size = full.next_power_of_two();
    let mut buf: Vec<Complex<f64>> = vec![Complex::new(0.0, 0.0); size];
    for (i, &x) in a.iter().enumerate() {
        buf[i].re = x;
    }
    for (i, &x) in b.iter().enumerate() {
        buf[i].im = x;
    }
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(size).process(&mut buf);

    // With p = a + ib, spectra separate through conjugate symmetry:
    //   A(k) = (P(k) + conj(P(-k))) / 2,  B(k) = (P(k) - conj(P(-k))) / 2i,
    // and the product spectrum A·B lands back in the same buffer.
    let half = size / 2;
    for k in 0..=half {
        let krev = (size - k) & (size - 1);
        let pk = buf[k];
        let pr = buf[krev];
        let ak = (pk + pr.conj()) * 0.5;
        let bk = (pk - pr.conj()) * Complex::new(0.0, -0.5);
        let ck = ak * bk;
        buf[k] = ck;
        if krev != k {
            buf[krev] = ck.conj();
        }
    }
    planner.plan_fft_inverse(size).process(&mut buf);
    let scale = 1.0 / size as f64;
    buf[..out_len].iter().map(|c| c.re * scale).collect()
}

fn schoolbook_mul(a: &[f64], b: &[f64], out_len: usize) -> Vec<f64> {
    let mut out = vec![0.0; out_len];
    for (i, &ai) in a.iter().enumerate() {
        if i >= out_len || ai == 0.0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if i + j >= out_len {
                break;
            }
            out[i + j] += ai * bj;
        }
    }
    out
}

/// First `n_out` coefficients of `1 / a(s)`; requires `a[0] = 1`.
pub(crate) fn series_reciprocal(a: &[f64], n_out: usize) -> Vec<f64> {
    assert!(!a.is_empty() && a[0] == 1.0, "reciprocal needs unit constant term");
    assert!(n_out >= 1);
    let mut v = vec![1.0];
    while v.len() < n_out {
        let m = (2 * v.len()).min(n_out);
        let e = poly_mul_truncated(&a[..m.min(a.len())], &v, m);
        let mut t = vec![0.0; m];
        t[0] = 2.0 - e[0];
        for i in 1..e.len() {
            t[i] = -e[i];
        }
        v = poly_mul_truncated(&v, &t, m);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fft_product_matches_schoolbook() {
        let a: Vec<f64> = (0..700).map(|i| ((i * 37 + 11) % 97) as f64 / 97.0).collect();
        let b: Vec<f64> = (0..500).map(|i| ((i * 53 + 5) % 89) as f64 / 89.0).collect();
        let fast = poly_mul_truncated(&a, &b, 1199);
        let slow = schoolbook_mul(&a, &b, 1199);
        for (i, (x, y)) in fast.iter().zip(&slow).enumerate() {
            assert!((x - y).abs() < 1e-9, "coefficient {i}: {x} vs {y}");
        }
    }

    #[test]
    fn reciprocal_of_one_minus_s() {
        // 1/(1-s) = 1 + s + s² + ...
        let mut a = vec![0.0; 2000];
        a[0] = 1.0;
        a[1] = -1.0;
        let v = series_reciprocal(&a, 2000);
        for (i, &c) in v.iter().enumerate() {
            assert!((c - 1.0).abs() < 1e-10, "coefficient {i}: {c}");
        }
    }

    #[test]
    fn reciprocal_times_input_is_one() {
        let n = 5000;
        let mut a = vec![0.0; n];
        a[0] = 1.0;
        // Sub-unit total mass keeps 1/a(s) zero-free on the unit disk.
        for (k, slot) in a.iter_mut().enumerate().skip(1) {
            *slot = -0.3 * (k as f64).powf(-1.5);
        }
        let v = series_reciprocal(&a, n);
        let prod = poly_mul_truncated(&a, &v, n);
        assert!((prod[0] - 1.0).abs() < 1e-10);
        for (i, &c) in prod.iter().enumerate().skip(1) {
            assert!(c.abs() < 1e-10, "residual at {i}: {c}");
        }
    }
}
