//! Spectral quantities of the finite sub-shift: the Perron eigenvalue (whose
//! log is the topological entropy), the Parry measure built from the left
//! and right Perron vectors, and the Kolmogorov–Sinai entropy of Markov
//! measures.
//!
//! Matrices here are at most 65×65, so everything is dense. Power iteration
//! runs on `M + I`: adding the identity shifts every eigenvalue by one,
//! leaves the eigenvectors alone, and makes the iteration converge even for
//! periodic fixtures like permutation matrices.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::symbolic::TransitionMatrix;

const MAX_ITERATIONS: usize = 100_000;

/// Default Rayleigh-quotient stopping tolerance.
pub const DEFAULT_EIGEN_TOL: f64 = 1e-12;

/// Left and right Perron data of a nonnegative irreducible matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PerronEigen {
    /// Largest eigenvalue.
    pub value: f64,
    /// Right eigenvector, normalized to unit sum, strictly positive.
    pub right: Vec<f64>,
    /// Left eigenvector, normalized to unit sum, strictly positive.
    pub left: Vec<f64>,
}

fn multiply(m: &TransitionMatrix, v: &[f64], transpose: bool) -> Vec<f64> {
    let size = m.size();
    let mut out = vec![0.0; size];
    for i in 0..size {
        for j in 0..size {
            if m.entry(i, j) {
                if transpose {
                    out[j] += v[i];
                } else {
                    out[i] += v[j];
                }
            }
        }
    }
    out
}

fn power_iterate(m: &TransitionMatrix, tol: f64, transpose: bool) -> Result<(f64, Vec<f64>)> {
    let size = m.size();
    let mut v = vec![1.0 / size as f64; size];
    let mut rayleigh_prev = f64::NAN;
    for _ in 0..MAX_ITERATIONS {
        // w = (M + I) v
        let mut w = multiply(m, &v, transpose);
        for (wi, vi) in w.iter_mut().zip(&v) {
            *wi += vi;
        }
        let dot_wv: f64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
        let dot_vv: f64 = v.iter().map(|a| a * a).sum();
        let rayleigh = dot_wv / dot_vv;
        // The Rayleigh quotient settles before the vector does; require the
        // eigen-residual itself to clear the tolerance as well.
        let vmax = v.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        let residual = w
            .iter()
            .zip(&v)
            .map(|(wi, vi)| (wi - rayleigh * vi).abs())
            .fold(0.0f64, f64::max);
        let norm: f64 = w.iter().sum();
        if !(norm > 0.0) {
            return Err(Error::Numeric("power iteration collapsed to zero".into()));
        }
        for wi in &mut w {
            *wi /= norm;
        }
        v = w;
        if (rayleigh - rayleigh_prev).abs() < tol && residual <= tol.max(1e-15) * vmax.max(1e-300) {
            let value = rayleigh - 1.0;
            if v.iter().any(|&x| !(x > 0.0)) {
                return Err(Error::Numeric("Perron vector not strictly positive".into()));
            }
            return Ok((value, v));
        }
        rayleigh_prev = rayleigh;
    }
    Err(Error::Numeric(format!("power iteration did not converge in {MAX_ITERATIONS} steps")))
}

/// Largest eigenvalue and right Perron vector. The topological entropy of
/// the sub-shift is `ln` of the returned eigenvalue.
pub fn largest_eigenvalue(m: &TransitionMatrix, tol: f64) -> Result<(f64, Vec<f64>)> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance {tol} must be positive")));
    }
    power_iterate(m, tol, false)
}

/// Both Perron vectors.
pub fn perron_pair(m: &TransitionMatrix, tol: f64) -> Result<PerronEigen> {
    let (value, right) = largest_eigenvalue(m, tol)?;
    let (_, left) = power_iterate(m, tol, true)?;
    Ok(PerronEigen { value, right, left })
}

/// A Markov measure on the sub-shift: a row-stochastic matrix supported on
/// the structure matrix together with its stationary distribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarkovMeasure {
    transition: Vec<Vec<f64>>,
    stationary: Vec<f64>,
}

impl MarkovMeasure {
    /// Validates row-stochasticity (1e-12), stationarity of `π` (1e-10),
    /// and unit total mass.
    pub fn new(transition: Vec<Vec<f64>>, stationary: Vec<f64>) -> Result<Self> {
        let size = transition.len();
        if size == 0 || transition.iter().any(|r| r.len() != size) || stationary.len() != size {
            return Err(Error::Domain("Markov measure dimensions are inconsistent".into()));
        }
        for (i, row) in transition.iter().enumerate() {
            if row.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
                return Err(Error::Domain(format!("row {i} has entries outside [0, 1]")));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > 1e-12 {
                return Err(Error::Domain(format!("row {i} sums to {sum}, not 1")));
            }
        }
        let total: f64 = stationary.iter().sum();
        if (total - 1.0).abs() > 1e-10 || stationary.iter().any(|&p| p < 0.0) {
            return Err(Error::Domain("stationary vector is not a distribution".into()));
        }
        for j in 0..size {
            let flow: f64 = (0..size).map(|i| stationary[i] * transition[i][j]).sum();
            if (flow - stationary[j]).abs() > 1e-10 {
                return Err(Error::Domain(format!(
                    "stationary vector fails balance at state {j}: {flow} vs {}",
                    stationary[j]
                )));
            }
        }
        Ok(Self { transition, stationary })
    }

    pub fn transition(&self) -> &[Vec<f64>] {
        &self.transition
    }

    pub fn stationary(&self) -> &[f64] {
        &self.stationary
    }

    /// Whether positive transitions sit exactly on the structure matrix.
    pub fn supported_on(&self, m: &TransitionMatrix) -> bool {
        if m.size() != self.transition.len() {
            return false;
        }
        self.transition.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, &p)| (p > 0.0) == m.entry(i, j))
        })
    }
}

/// The Markov measure of maximal entropy: `P_ij = m_ij v_j / (λ v_i)` with
/// stationary mass `π_i ∝ u_i v_i` from the two Perron vectors.
pub fn parry_measure(m: &TransitionMatrix, tol: f64) -> Result<MarkovMeasure> {
    let eigen = perron_pair(m, tol)?;
    let size = m.size();
    let mut transition = vec![vec![0.0; size]; size];
    for (i, row) in transition.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            if m.entry(i, j) {
                *slot = eigen.right[j] / (eigen.value * eigen.right[i]);
            }
        }
    }
    let mut stationary: Vec<f64> =
        (0..size).map(|i| eigen.left[i] * eigen.right[i]).collect();
    let total: f64 = stationary.iter().sum();
    for p in &mut stationary {
        *p /= total;
    }
    // Remove the residual row-sum drift left by the iterative eigenvector so
    // the validated invariants hold at full precision.
    for row in &mut transition {
        let sum: f64 = row.iter().sum();
        for p in row.iter_mut() {
            *p /= sum;
        }
    }
    MarkovMeasure::new(transition, stationary)
}

/// Entropy reported in both units (the natural log is the internal one).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Entropy {
    pub nats: f64,
    pub bits: f64,
}

impl Entropy {
    pub fn from_nats(nats: f64) -> Self {
        Self { nats, bits: nats / std::f64::consts::LN_2 }
    }
}

/// Kolmogorov–Sinai entropy `-Σ_i π_i Σ_j P_ij ln P_ij` of a Markov
/// measure, with `0 ln 0 = 0`.
pub fn markov_ks_entropy(mm: &MarkovMeasure) -> Entropy {
    let mut nats = 0.0;
    for (pi, row) in mm.stationary().iter().zip(mm.transition()) {
        for &p in row {
            if p > 0.0 {
                nats -= pi * p * p.ln();
            }
        }
    }
    Entropy::from_nats(nats)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual_inf(m: &TransitionMatrix, value: f64, v: &[f64], transpose: bool) -> f64 {
        let mv = multiply(m, v, transpose);
        mv.iter()
            .zip(v)
            .map(|(a, b)| (a - value * b).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn two_by_two_eigenvalue_is_two() {
        // Hand computation: eigenvalues of [[1,1],[1,1]] are {0, 2}.
        let m = TransitionMatrix::countdown(1).unwrap();
        let (value, v) = largest_eigenvalue(&m, 1e-12).unwrap();
        assert!((value - 2.0).abs() < 1e-10);
        assert!((v[0] - v[1]).abs() < 1e-10);
    }

    #[test]
    fn three_by_three_matches_characteristic_polynomial() {
        // Cofactor expansion of the N = 2 matrix gives λ²(2 - λ), so the
        // spectrum is {0, 0, 2}.
        let m = TransitionMatrix::countdown(2).unwrap();
        let (value, _) = largest_eigenvalue(&m, 1e-12).unwrap();
        assert!((value - 2.0).abs() < 1e-10);
    }

    #[test]
    fn eigenvalue_is_two_for_all_small_alphabets() {
        for n in 1..=12 {
            let m = TransitionMatrix::countdown(n).unwrap();
            let (value, v) = largest_eigenvalue(&m, 1e-12).unwrap();
            assert!((value - 2.0).abs() < 1e-9, "N = {n}: {value}");
            assert!(residual_inf(&m, value, &v, false) < 1e-9 * v.iter().fold(0.0f64, |a, &b| a.max(b)));
        }
    }

    #[test]
    fn perron_residuals_small_both_sides() {
        for n in [1, 4, 9, 12] {
            let m = TransitionMatrix::countdown(n).unwrap();
            let eigen = perron_pair(&m, 1e-12).unwrap();
            let vmax = eigen.right.iter().fold(0.0f64, |a, &b| a.max(b));
            let umax = eigen.left.iter().fold(0.0f64, |a, &b| a.max(b));
            assert!(residual_inf(&m, eigen.value, &eigen.right, false) < 1e-9 * vmax);
            assert!(residual_inf(&m, eigen.value, &eigen.left, true) < 1e-9 * umax);
        }
    }

    #[test]
    fn parry_measure_two_states_is_uniform() {
        let m = TransitionMatrix::countdown(1).unwrap();
        let mm = parry_measure(&m, 1e-12).unwrap();
        assert!((mm.stationary()[0] - 0.5).abs() < 1e-12);
        assert!((mm.stationary()[1] - 0.5).abs() < 1e-12);
        for row in mm.transition() {
            for &p in row {
                assert!((p - 0.5).abs() < 1e-12);
            }
        }
    }

    /// Closed-form Perron data for the countdown matrix, verified here by
    /// residuals and used as the oracle for the stationary vector: the right
    /// vector halves down to the last state, which repeats the previous
    /// value, and the left vector is uniform. The stationary mass is then
    /// `π_i = 2^{-(i+1)}` for `i < N` and `π_N = 2^{-N}`.
    fn stationary_oracle(n: usize) -> Vec<f64> {
        let m = TransitionMatrix::countdown(n).unwrap();
        let mut v: Vec<f64> = (0..=n).map(|i| 0.5f64.powi(i as i32)).collect();
        v[n] = v[n - 1];
        let u = vec![1.0; n + 1];
        assert!(residual_inf(&m, 2.0, &v, false) < 1e-12);
        assert!(residual_inf(&m, 2.0, &u, true) < 1e-12);
        let total: f64 = v.iter().sum();
        v.iter().map(|x| x / total).collect()
    }

    #[test]
    fn parry_stationary_matches_eigenvector_oracle() {
        for n in 4..=12 {
            let mm = parry_measure(&TransitionMatrix::countdown(n).unwrap(), 1e-12).unwrap();
            let oracle = stationary_oracle(n);
            for (i, (&got, &want)) in mm.stationary().iter().zip(&oracle).enumerate() {
                assert!((got - want).abs() < 1e-9, "N = {n}, i = {i}: {got} vs {want}");
            }
            // Interior masses follow the printed halving rule; the last two
            // masses coincide at 2^{-N} (the would-be 2^{-(N-1)} does not
            // normalize together with the rest).
            for i in 0..n - 1 {
                assert!((mm.stationary()[i] - 0.5f64.powi(i as i32 + 1)).abs() < 1e-9);
            }
            assert!((mm.stationary()[n] - 0.5f64.powi(n as i32)).abs() < 1e-9);
        }
    }

    #[test]
    fn parry_support_and_stochasticity() {
        for n in [1, 3, 12] {
            let m = TransitionMatrix::countdown(n).unwrap();
            let mm = parry_measure(&m, 1e-12).unwrap();
            assert!(mm.supported_on(&m));
        }
    }

    #[test]
    fn circulant_permutation_is_uniform() {
        let m = TransitionMatrix::from_rows(vec![
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, 0, 0],
        ])
        .unwrap();
        let mm = parry_measure(&m, 1e-12).unwrap();
        for &p in mm.stationary() {
            assert!((p - 1.0 / 3.0).abs() < 1e-10);
        }
        // Deterministic rows carry no entropy.
        assert!(markov_ks_entropy(&mm).nats.abs() < 1e-12);
    }

    #[test]
    fn parry_entropy_is_log_two() {
        for n in 1..=12 {
            let m = TransitionMatrix::countdown(n).unwrap();
            let mm = parry_measure(&m, 1e-12).unwrap();
            let h = markov_ks_entropy(&mm);
            assert!((h.nats - std::f64::consts::LN_2).abs() < 1e-8, "N = {n}: {}", h.nats);
            assert!((h.bits - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn parry_attains_topological_entropy() {
        for n in 1..=12 {
            let m = TransitionMatrix::countdown(n).unwrap();
            let (value, _) = largest_eigenvalue(&m, 1e-12).unwrap();
            let h = markov_ks_entropy(&parry_measure(&m, 1e-12).unwrap());
            assert!((h.nats - value.ln()).abs() < 1e-8);
        }
    }

    #[test]
    fn markov_measure_validation_rejects_bad_input() {
        assert!(MarkovMeasure::new(vec![vec![0.6, 0.3]], vec![1.0]).is_err());
        assert!(MarkovMeasure::new(
            vec![vec![0.5, 0.5], vec![0.5, 0.5]],
            vec![0.9, 0.2],
        )
        .is_err());
        // Not stationary for the chain.
        assert!(MarkovMeasure::new(
            vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            vec![0.3, 0.7],
        )
        .is_ok());
        assert!(MarkovMeasure::new(
            vec![vec![0.0, 1.0], vec![1.0, 0.0]],
            vec![0.3, 0.7],
        )
        .is_err());
    }
}
