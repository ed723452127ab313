//! Parametric generators for the defining sequence `(ε_k)` and the renewal
//! law it induces.
//!
//! A sequence `ε_{-1} = 1 > ε_0 > ε_1 > ... → 0` cuts `(0, 1]` into cells
//! `A_i = (ε_i, ε_{i-1}]` of Lebesgue mass `p_i = ε_{i-1} - ε_i`. Because the
//! masses telescope, every tail quantity of the induced recurrence-time law
//! (`P[X = k] = p_{k-1}`) has a closed form in `ε` and is computed from it
//! directly rather than by summing masses.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index cap past which searches over `k` saturate instead of overflowing.
const INDEX_SATURATION: u64 = u64::MAX;

/// A parametric generator for the defining sequence `(ε_k)`.
///
/// Every variant defines `ε_k` for integer `k ≥ -1` with `ε_{-1} = 1`
/// regardless of the parameters. The offsets inside each formula keep
/// `ε_0 < 1` so that the outermost cell `A_0 = (ε_0, 1]` is nonempty.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EpsilonSequence {
    /// `ε_k = c (k+1)^{-alpha}` — polynomial decay, heavy-tailed cells.
    Power { alpha: f64, c: f64 },
    /// `ε_k = c a^{-(k+1)}` — exponential decay, light-tailed cells.
    Geometric { a: f64, c: f64 },
    /// `ε_k = c (k+2)^{-alpha} ln(k+2)^{-beta}` — polynomial decay with a
    /// logarithmic correction.
    LogCorrected { alpha: f64, beta: f64, c: f64 },
    /// `ε_k = c / ln(k+2)` — slower than any power law.
    InverseLog { c: f64 },
}

impl EpsilonSequence {
    pub fn power(alpha: f64, c: f64) -> Result<Self> {
        let seq = Self::Power { alpha, c };
        seq.check_params()?;
        Ok(seq)
    }

    pub fn geometric(a: f64, c: f64) -> Result<Self> {
        let seq = Self::Geometric { a, c };
        seq.check_params()?;
        Ok(seq)
    }

    pub fn log_corrected(alpha: f64, beta: f64, c: f64) -> Result<Self> {
        let seq = Self::LogCorrected { alpha, beta, c };
        seq.check_params()?;
        Ok(seq)
    }

    pub fn inverse_log(c: f64) -> Result<Self> {
        let seq = Self::InverseLog { c };
        seq.check_params()?;
        Ok(seq)
    }

    /// Checks the static parameter ranges. Monotonicity and the difference
    /// ratio condition are dynamic properties checked by [`Self::validate`].
    pub fn check_params(&self) -> Result<()> {
        let ok = match *self {
            Self::Power { alpha, c } => alpha > 0.0 && c > 0.0 && c < 1.0,
            Self::Geometric { a, c } => a > 1.0 && c > 0.0 && c <= 1.0,
            Self::LogCorrected { alpha, beta, c } => {
                alpha.is_finite() && beta.is_finite() && c > 0.0 && c < 1.0
            }
            Self::InverseLog { c } => c > 0.0 && c < 1.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain(format!("invalid sequence parameters: {self:?}")))
        }
    }

    /// `ε_k` for integer `k ≥ -1`; `ε_{-1} = 1` by definition.
    pub fn epsilon(&self, k: i64) -> Result<f64> {
        if k < -1 {
            return Err(Error::Domain(format!("epsilon index {k} < -1")));
        }
        Ok(self.eps(k))
    }

    /// Unchecked `ε_k`; callers guarantee `k ≥ -1`.
    pub(crate) fn eps(&self, k: i64) -> f64 {
        debug_assert!(k >= -1);
        if k == -1 {
            return 1.0;
        }
        self.eps_real(k as f64)
    }

    /// The generating formula evaluated at real `k ≥ 0`. Used by index
    /// searches that run past the exactly-representable integer range.
    pub(crate) fn eps_real(&self, k: f64) -> f64 {
        debug_assert!(k >= 0.0);
        match *self {
            Self::Power { alpha, c } => c * (k + 1.0).powf(-alpha),
            Self::Geometric { a, c } => c * a.powf(-(k + 1.0)),
            Self::LogCorrected { alpha, beta, c } => {
                let t = k + 2.0;
                c * t.powf(-alpha) * t.ln().powf(-beta)
            }
            Self::InverseLog { c } => c / (k + 2.0).ln(),
        }
    }

    /// Smallest `k ≥ 0` with `ε_k < u`, for `0 < u ≤ 1`.
    ///
    /// Power and geometric generators invert the formula in closed form and
    /// correct the float guess locally; the log families gallop and bisect.
    /// Saturates at `u64::MAX` when the index would overflow (only reachable
    /// for the inverse-log family at tiny `u`).
    pub fn first_index_below(&self, u: f64) -> u64 {
        debug_assert!(u > 0.0 && u <= 1.0);
        if self.eps_real(0.0) < u {
            return 0;
        }
        match *self {
            Self::Power { alpha, c } => {
                let guess = (c / u).powf(1.0 / alpha) - 1.0;
                self.refine_index(guess, u)
            }
            Self::Geometric { a, c } => {
                let guess = (c / u).ln() / a.ln() - 1.0;
                self.refine_index(guess, u)
            }
            Self::LogCorrected { .. } | Self::InverseLog { .. } => self.gallop_index(u),
        }
    }

    /// Clamps a closed-form guess and walks it to the exact crossing.
    fn refine_index(&self, guess: f64, u: f64) -> u64 {
        if !guess.is_finite() || guess >= 9.0e18 {
            return INDEX_SATURATION;
        }
        let mut k = guess.max(0.0).floor() as u64;
        while self.eps_real(k as f64) >= u {
            k = match k.checked_add(1) {
                Some(next) => next,
                None => return INDEX_SATURATION,
            };
        }
        while k > 0 && self.eps_real((k - 1) as f64) < u {
            k -= 1;
        }
        k
    }

    fn gallop_index(&self, u: f64) -> u64 {
        // Invariant: ε_lo ≥ u. Doubling overshoots in ≤ 64 steps.
        let mut lo: u64 = 0;
        let mut hi: u64 = 1;
        while self.eps_real(hi as f64) >= u {
            lo = hi;
            hi = match hi.checked_mul(2) {
                Some(next) => next,
                None => return INDEX_SATURATION,
            };
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.eps_real(mid as f64) >= u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    }

    /// Checks positivity, strict decrease, and the difference-ratio
    /// condition `(ε_{k-1} - ε_k) < (ε_{k-2} - ε_{k-1})` for all `k ≤ k_max`.
    pub fn validate(&self, k_max: i64) -> Result<ValidityReport> {
        validate_epsilon(|k| self.eps(k), k_max)
    }

    /// The recurrence-time law induced by this sequence.
    pub fn law(self) -> RenewalLaw {
        RenewalLaw::new(self)
    }
}

/// Outcome of one validity condition over a checked index range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConditionOutcome {
    pub pass: bool,
    /// First index `k` at which the condition failed.
    pub first_violation: Option<i64>,
}

impl ConditionOutcome {
    fn passing() -> Self {
        Self { pass: true, first_violation: None }
    }

    fn record(&mut self, k: i64) {
        if self.pass {
            self.pass = false;
            self.first_violation = Some(k);
        }
    }
}

/// Per-condition validity report for a candidate sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    /// `ε_k > 0` for `-1 ≤ k ≤ k_max`.
    pub positivity: ConditionOutcome,
    /// `ε_k < ε_{k-1}` for `0 ≤ k ≤ k_max`.
    pub strict_decrease: ConditionOutcome,
    /// `(ε_{k-1} - ε_k) < (ε_{k-2} - ε_{k-1})` for `1 ≤ k ≤ k_max`.
    pub difference_ratio: ConditionOutcome,
}

impl ValidityReport {
    pub fn pass(&self) -> bool {
        self.positivity.pass && self.strict_decrease.pass && self.difference_ratio.pass
    }
}

/// Validates an arbitrary `ε` table (used directly by tests with hand-built
/// counterexamples; library sequences go through [`EpsilonSequence::validate`]).
pub fn validate_epsilon(eps: impl Fn(i64) -> f64, k_max: i64) -> Result<ValidityReport> {
    if k_max < 2 {
        return Err(Error::Domain(format!("validation range k_max = {k_max} < 2")));
    }
    let mut positivity = ConditionOutcome::passing();
    let mut strict_decrease = ConditionOutcome::passing();
    let mut difference_ratio = ConditionOutcome::passing();

    let mut prev2 = eps(-1); // ε_{k-2}
    if !(prev2 > 0.0) {
        positivity.record(-1);
    }
    let mut prev = eps(0); // ε_{k-1}
    if !(prev > 0.0) {
        positivity.record(0);
    }
    if !(prev < prev2) {
        strict_decrease.record(0);
    }
    for k in 1..=k_max {
        let cur = eps(k);
        if !(cur > 0.0) {
            positivity.record(k);
        }
        if !(cur < prev) {
            strict_decrease.record(k);
        }
        if !(prev - cur < prev2 - prev) {
            difference_ratio.record(k);
        }
        prev2 = prev;
        prev = cur;
    }
    Ok(ValidityReport { positivity, strict_decrease, difference_ratio })
}

/// A possibly-infinite moment value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ExtendedReal {
    Finite(f64),
    Infinite,
}

impl ExtendedReal {
    pub fn is_finite(&self) -> bool {
        matches!(self, Self::Finite(_))
    }

    /// The finite value, if any.
    pub fn value(&self) -> Option<f64> {
        match *self {
            Self::Finite(v) => Some(v),
            Self::Infinite => None,
        }
    }
}

/// First and second moments of the recurrence time, with the unresolved
/// analytic tail bound left after partial summation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    /// `m_0 = Σ_{k≥1} k p_{k-1}`.
    pub mean: ExtendedReal,
    /// `V = Σ_{k≥1} k² p_{k-1}` (the second moment, not the variance).
    pub second_moment: ExtendedReal,
    pub mean_tail_bound: f64,
    pub second_moment_tail_bound: f64,
}

/// Pure power-law tail parameters: `1 - F(x) ~ prefactor · x^{-exponent}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerTail {
    pub prefactor: f64,
    pub exponent: f64,
}

/// The recurrence-time law `P[X = k] = p_{k-1}` induced by a sequence,
/// together with every tail quantity derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RenewalLaw {
    seq: EpsilonSequence,
}

impl RenewalLaw {
    pub fn new(seq: EpsilonSequence) -> Self {
        Self { seq }
    }

    pub fn sequence(&self) -> &EpsilonSequence {
        &self.seq
    }

    /// Cell mass `p_i = ε_{i-1} - ε_i`, evaluated in a cancellation-free
    /// form where the generator admits one.
    pub fn cell_mass(&self, i: u64) -> f64 {
        if i == 0 {
            return 1.0 - self.seq.eps(0);
        }
        let k = i as f64;
        match *self.sequence() {
            // c k^{-α} (1 - (1 + 1/k)^{-α}) without subtracting near-equal terms.
            EpsilonSequence::Power { alpha, c } => {
                c * k.powf(-alpha) * (-(-alpha * (1.0 / k).ln_1p()).exp_m1())
            }
            EpsilonSequence::Geometric { a, c } => c * a.powf(-k) * (a - 1.0) / a,
            // ln((k+2)/(k+1)) / (ln(k+1) ln(k+2)) stays accurate for large k.
            EpsilonSequence::InverseLog { c } => {
                let lo = (k + 1.0).ln();
                let hi = (k + 2.0).ln();
                c * (1.0 / (k + 1.0)).ln_1p() / (lo * hi)
            }
            EpsilonSequence::LogCorrected { .. } => {
                self.seq.eps_real(k - 1.0) - self.seq.eps_real(k)
            }
        }
    }

    /// Distribution function `F(x) = Σ_{r=0}^{⌊x⌋} p_r = 1 - ε_{⌊x⌋}`.
    pub fn distribution_function(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(Error::Domain(format!("distribution function at x = {x} < 0")));
        }
        Ok(1.0 - self.seq.eps_real(x.floor()))
    }

    /// Survival `P[X > k] = ε_{k-1}` for integer `k ≥ 0`.
    pub fn survival(&self, k: u64) -> f64 {
        if k == 0 {
            1.0
        } else {
            self.seq.eps_real((k - 1) as f64)
        }
    }

    /// Invariant mass `p̄(k) = Σ_{n≥0} p_{k+n}` for `k ≥ 1`; telescopes to
    /// `ε_{k-1}` exactly.
    pub fn invariant_cell_mass(&self, k: u64) -> Result<f64> {
        if k == 0 {
            return Err(Error::Domain("invariant cell mass defined for k >= 1".into()));
        }
        Ok(self.seq.eps_real((k - 1) as f64))
    }

    /// Whether `Σ_k p̄(k)` converges, i.e. whether the invariant measure
    /// normalizes to a probability; equivalent to a finite mean.
    pub fn invariant_measure_normalizable(&self) -> bool {
        self.mean_is_finite()
    }

    /// Whether `m_0 < ∞`, decided from the closed-form tail.
    pub fn mean_is_finite(&self) -> bool {
        match *self.sequence() {
            EpsilonSequence::Power { alpha, .. } => alpha > 1.0,
            EpsilonSequence::Geometric { .. } => true,
            EpsilonSequence::LogCorrected { alpha, beta, .. } => {
                alpha > 1.0 || (alpha == 1.0 && beta > 1.0)
            }
            EpsilonSequence::InverseLog { .. } => false,
        }
    }

    /// Whether `V = Σ k² p_{k-1} < ∞`, decided from the closed-form tail.
    pub fn second_moment_is_finite(&self) -> bool {
        match *self.sequence() {
            EpsilonSequence::Power { alpha, .. } => alpha > 2.0,
            EpsilonSequence::Geometric { .. } => true,
            EpsilonSequence::LogCorrected { alpha, beta, .. } => {
                alpha > 2.0 || (alpha == 2.0 && beta > 1.0)
            }
            EpsilonSequence::InverseLog { .. } => false,
        }
    }

    /// Power-law tail parameters `1 - F(x) ~ A x^{-α}`, when the tail is a
    /// pure power law. Taken from the generator's closed form, never fitted.
    pub fn power_tail(&self) -> Option<PowerTail> {
        match *self.sequence() {
            EpsilonSequence::Power { alpha, c } => {
                Some(PowerTail { prefactor: c, exponent: alpha })
            }
            _ => None,
        }
    }

    /// Recurrence-time moments. Finiteness is decided analytically; finite
    /// values are partial sums over the telescoped identities
    /// `m_0 = 1 + Σ_j ε_j` and `V = 1 + Σ_j (2j+3) ε_j`, extended until the
    /// analytic tail estimate resolves the remainder or the term cap is hit
    /// (the unresolved residual is reported either way).
    pub fn recurrence_moments(&self, tail_cutoff: u64) -> Moments {
        const TERM_CAP: u64 = 1 << 24;
        const REL_TOL: f64 = 1e-11;

        let mean_finite = self.mean_is_finite();
        let second_finite = self.second_moment_is_finite();
        if !mean_finite {
            // V ≥ m_0 for integer recurrence times, so both diverge.
            return Moments {
                mean: ExtendedReal::Infinite,
                second_moment: ExtendedReal::Infinite,
                mean_tail_bound: f64::INFINITY,
                second_moment_tail_bound: f64::INFINITY,
            };
        }

        let mut mean_acc = KahanAccumulator::default();
        let mut second_acc = KahanAccumulator::default();
        let mut summed: u64 = 0; // terms j < summed are in the accumulators
        let mut cutoff = tail_cutoff.clamp(1 << 10, TERM_CAP);
        loop {
            for j in summed..=cutoff {
                let eps = self.seq.eps_real(j as f64);
                mean_acc.add(eps);
                second_acc.add((2.0 * j as f64 + 3.0) * eps);
            }
            summed = cutoff + 1;
            let (mean_tail, mean_err) = self.tail_sum_estimate(cutoff, 0);
            let (second_tail, second_err) = if second_finite {
                self.tail_sum_estimate(cutoff, 1)
            } else {
                (0.0, f64::INFINITY)
            };
            let mean_sum = 1.0 + mean_acc.total() + mean_tail;
            let second_sum = 1.0 + second_acc.total() + second_tail;
            let converged = mean_err <= REL_TOL * mean_sum.max(1.0)
                && (!second_finite || second_err <= REL_TOL * second_sum.max(1.0));
            if converged || cutoff >= TERM_CAP {
                return Moments {
                    mean: ExtendedReal::Finite(mean_sum),
                    second_moment: if second_finite {
                        ExtendedReal::Finite(second_sum)
                    } else {
                        ExtendedReal::Infinite
                    },
                    mean_tail_bound: mean_err,
                    second_moment_tail_bound: if second_finite {
                        second_err
                    } else {
                        f64::INFINITY
                    },
                };
            }
            cutoff = (cutoff * 2).min(TERM_CAP);
        }
    }

    /// Estimate of the tail `Σ_{j>K} g(j)` with a rigorous half-width, for
    /// `g(j) = ε_j` (weight 0) or `g(j) = (2j+3) ε_j` (weight 1). The
    /// summand is decreasing, so the tail lies between the integrals of `g`
    /// from `K+1` and from `K`; closed-form generators take the midpoint,
    /// the log-corrected family returns a conservative one-sided bound.
    fn tail_sum_estimate(&self, cutoff: u64, weight: u32) -> (f64, f64) {
        let k = cutoff as f64;
        match *self.sequence() {
            EpsilonSequence::Power { alpha, c } => {
                let integral = |a: f64| {
                    let base = c * (a + 1.0).powf(1.0 - alpha) / (alpha - 1.0);
                    if weight == 0 {
                        base
                    } else {
                        2.0 * c * (a + 1.0).powf(2.0 - alpha) / (alpha - 2.0) + base
                    }
                };
                let hi = integral(k);
                let lo = integral(k + 1.0);
                (0.5 * (hi + lo), 0.5 * (hi - lo))
            }
            EpsilonSequence::Geometric { a, c } => {
                let x = 1.0 / a;
                let est = if weight == 0 {
                    c * x.powf(k + 2.0) / (1.0 - x)
                } else {
                    // Σ_{j>K} (2j+3) x^{j+1} in closed form.
                    c * x.powf(k + 2.0)
                        * ((2.0 * k + 5.0) / (1.0 - x) + 2.0 * x / ((1.0 - x) * (1.0 - x)))
                };
                (est, 1e-14 * est.abs())
            }
            EpsilonSequence::LogCorrected { alpha, beta, c } => {
                // Effective polynomial order of the summand's decay.
                let order = alpha - weight as f64;
                debug_assert!(order > 1.0);
                let scale = if weight == 0 { 1.0 } else { 3.0 };
                let t = k + 2.0;
                let bound = if beta >= 0.0 {
                    scale * c * t.ln().powf(-beta) * t.powf(1.0 - order) / (order - 1.0)
                } else {
                    // ln(t)^{|β|} ≤ ln(K+2)^{|β|} (t/(K+2))^η for t ≥ K+2 once
                    // K+2 ≥ exp(|β|/η); the caller grows the cutoff until the
                    // bound is small, which also satisfies that requirement.
                    let eta = (order - 1.0) / 2.0;
                    if t.ln() * eta < -beta {
                        return (0.0, f64::INFINITY);
                    }
                    scale * c * t.ln().powf(-beta) * t.powf(1.0 - order) / eta
                };
                (0.0, bound)
            }
            EpsilonSequence::InverseLog { .. } => (0.0, f64::INFINITY),
        }
    }
}

#[derive(Default)]
struct KahanAccumulator {
    sum: f64,
    comp: f64,
}

impl KahanAccumulator {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}
