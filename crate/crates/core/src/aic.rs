//! Compression of symbol strings into recurrence times, and the information
//! content estimated from it.
//!
//! An admissible string is a concatenation of countdown runs `s, s-1, ...,
//! 1, 0`, possibly cut mid-run at the end. The compression keeps one symbol
//! per completed run (its leading value, equivalently the recurrence time
//! minus one); a trailing partial run is held separately so the round trip
//! is exact. The information estimate charges `log2(s + 2)` bits per run,
//! so every run costs at least one bit, and the two-sided bounds in terms
//! of `(n, N_n)` apply to strings that end exactly at a run boundary — for
//! a string cut mid-run they are evaluated on its completed prefix.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::renewal::{trial_rng, InterarrivalLaw};
use crate::stats::fit_line;
use crate::symbolic::SymbolString;

/// A trailing run cut by the end of the string: `len` symbols counting down
/// from `start` (never reaching 0, or it would be a completed run).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PartialRun {
    pub start: u32,
    pub len: u32,
}

/// The recurrence-time compression of an admissible string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompressedString {
    runs: Vec<u32>,
    head: Option<PartialRun>,
    n: usize,
}

impl CompressedString {
    /// Leading symbols of the completed runs, in order.
    pub fn runs(&self) -> &[u32] {
        &self.runs
    }

    /// The trailing partial run, if the string was cut mid-countdown.
    pub fn head(&self) -> Option<PartialRun> {
        self.head
    }

    /// `N_n`: number of completed runs = number of zeros in the original.
    pub fn event_count(&self) -> usize {
        self.runs.len()
    }

    /// Length of the original string.
    pub fn original_len(&self) -> usize {
        self.n
    }

    /// Length of the completed prefix (everything up to the last zero).
    pub fn completed_len(&self) -> usize {
        self.n - self.head.map_or(0, |h| h.len as usize)
    }

    /// Information estimate in bits: `Σ log2(σ + 2)` over completed runs,
    /// plus the cost of the partial run's leading symbol when present.
    pub fn estimate_bits(&self) -> f64 {
        self.completed_estimate_bits()
            + self.head.map_or(0.0, |h| (h.start as f64 + 2.0).log2())
    }

    /// Information estimate of the completed prefix only.
    pub fn completed_estimate_bits(&self) -> f64 {
        self.runs.iter().map(|&s| (s as f64 + 2.0).log2()).sum()
    }
}

/// Two-sided bounds on the information content of a run-terminated string.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AicEstimate {
    /// `Σ log2(σ + 2)` over the completed runs.
    pub estimate: f64,
    pub lower: f64,
    pub upper: f64,
}

/// Bounds from the pair `(n, N)`: `(N-1) + log2(n - N + 2)` below and
/// `N log2((n + N)/N)` above.
fn bounds_from_counts(n: usize, events: usize) -> (f64, f64) {
    debug_assert!(events >= 1 && n >= events);
    let nf = n as f64;
    let ef = events as f64;
    let lower = (ef - 1.0) + (nf - ef + 2.0).log2();
    let upper = ef * ((nf + ef) / ef).log2();
    (lower, upper)
}

/// Estimate and bounds for a compression; both are evaluated on the
/// completed prefix, so the sandwich `lower ≤ estimate ≤ upper` holds
/// unconditionally. Errors when no run has completed.
pub fn aic_estimate_and_bounds(c: &CompressedString) -> Result<AicEstimate> {
    if c.event_count() == 0 {
        return Err(Error::EmptyCompression);
    }
    let (lower, upper) = bounds_from_counts(c.completed_len(), c.event_count());
    Ok(AicEstimate { estimate: c.completed_estimate_bits(), lower, upper })
}

/// Compresses an admissible string into its run symbols.
pub fn compress(s: &SymbolString) -> Result<CompressedString> {
    let symbols = s.symbols();
    let mut runs = Vec::new();
    let mut head = None;
    let mut i = 0usize;
    while i < symbols.len() {
        let start = symbols[i];
        let run_len = start as usize + 1;
        let available = symbols.len() - i;
        let take = run_len.min(available);
        for j in 1..take {
            if symbols[i + j] != start - j as u32 {
                return Err(Error::Inadmissible { position: i + j });
            }
        }
        if take == run_len {
            runs.push(start);
        } else {
            head = Some(PartialRun { start, len: take as u32 });
        }
        i += take;
    }
    Ok(CompressedString { runs, head, n: symbols.len() })
}

/// Exact inverse of [`compress`].
pub fn decompress(c: &CompressedString) -> SymbolString {
    let mut symbols = Vec::with_capacity(c.n);
    for &run in &c.runs {
        for s in (0..=run).rev() {
            symbols.push(s);
        }
    }
    if let Some(h) = c.head {
        for j in 0..h.len {
            symbols.push(h.start - j);
        }
    }
    SymbolString::new(symbols)
}

/// Ensemble means of the compression statistics at one checkpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnsembleRow {
    pub checkpoint: u64,
    /// Mean number of completed runs.
    pub mean_events: f64,
    /// Mean information estimate (including any partial-run cost).
    pub mean_estimate: f64,
    /// Mean lower bound over trials with at least one completed run.
    pub mean_lower: f64,
    /// Mean upper bound over the same trials.
    pub mean_upper: f64,
    /// How many trials had a completed run at this checkpoint.
    pub bounded_trials: u64,
}

#[derive(Default, Clone)]
struct RowAccumulator {
    events: f64,
    estimate: f64,
    lower: f64,
    upper: f64,
    bounded: u64,
}

/// Per-checkpoint record of one trajectory: event count, estimate, and
/// completed-prefix bounds when at least one run has finished.
type CheckpointRecord = (f64, f64, Option<(f64, f64)>);

/// Draws seeded renewal trajectories (each equivalent to an orbit with a
/// Lebesgue-random start) and averages the per-trajectory compression
/// statistics at each checkpoint. Checkpoints must be sorted ascending.
pub fn ensemble_mean_aic<L: InterarrivalLaw + ?Sized>(
    law: &L,
    checkpoints: &[u64],
    trials: u64,
    seed: u64,
) -> Vec<EnsembleRow> {
    assert!(trials >= 1);
    assert!(!checkpoints.is_empty());
    assert!(checkpoints.windows(2).all(|w| w[0] <= w[1]));
    assert!(checkpoints[0] >= 1);

    let per_trial: Vec<Vec<CheckpointRecord>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            trajectory_records(law, checkpoints, &mut rng)
        })
        .collect();

    let mut acc = vec![RowAccumulator::default(); checkpoints.len()];
    for records in &per_trial {
        for (slot, &(events, estimate, bounds)) in acc.iter_mut().zip(records) {
            slot.events += events;
            slot.estimate += estimate;
            if let Some((lo, up)) = bounds {
                slot.lower += lo;
                slot.upper += up;
                slot.bounded += 1;
            }
        }
    }
    let t = trials as f64;
    checkpoints
        .iter()
        .zip(acc)
        .map(|(&checkpoint, a)| EnsembleRow {
            checkpoint,
            mean_events: a.events / t,
            mean_estimate: a.estimate / t,
            mean_lower: if a.bounded > 0 { a.lower / a.bounded as f64 } else { f64::NAN },
            mean_upper: if a.bounded > 0 { a.upper / a.bounded as f64 } else { f64::NAN },
            bounded_trials: a.bounded,
        })
        .collect()
}

/// Walks one trajectory, emitting `(events, estimate, bounds)` per
/// checkpoint. A checkpoint inside a run charges the in-progress run's
/// leading symbol to the estimate; bounds cover the completed prefix.
fn trajectory_records<L: InterarrivalLaw + ?Sized>(
    law: &L,
    checkpoints: &[u64],
    rng: &mut dyn rand::RngCore,
) -> Vec<CheckpointRecord> {
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut elapsed = 0u64;
    let mut events = 0u64;
    let mut cost = 0.0f64;
    let mut cp = 0usize;
    while cp < checkpoints.len() {
        let x = law.sample(rng);
        while cp < checkpoints.len() && checkpoints[cp] - elapsed < x {
            let c = checkpoints[cp];
            let partial_len = c - elapsed;
            // log2(σ + 2) with σ = x - 1; saturated draws cost ~64 bits.
            let head_cost =
                if partial_len > 0 { (x as f64 + 1.0).log2() } else { 0.0 };
            let bounds = (events >= 1)
                .then(|| bounds_from_counts(elapsed as usize, events as usize));
            out.push((events as f64, cost + head_cost, bounds));
            cp += 1;
        }
        if cp == checkpoints.len() {
            break;
        }
        elapsed += x;
        events += 1;
        cost += (x as f64 + 1.0).log2();
    }
    out
}

/// A fitted power-law exponent from a log–log regression.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingFit {
    pub exponent: f64,
    /// Intercept in log space: `ln` of the fitted amplitude.
    pub intercept: f64,
    pub r_squared: f64,
}

/// Least squares on `(ln n, ln value)` over the points with `n` inside
/// `window`. Needs at least three points, all with positive values.
pub fn scaling_fit(points: &[(f64, f64)], window: (f64, f64)) -> Result<ScalingFit> {
    let selected: Vec<(f64, f64)> = points
        .iter()
        .filter(|(n, _)| *n >= window.0 && *n <= window.1)
        .copied()
        .collect();
    if selected.len() < 3 {
        return Err(Error::Domain(format!(
            "scaling fit needs at least 3 points in window, found {}",
            selected.len()
        )));
    }
    if selected.iter().any(|&(n, v)| !(n > 0.0) || !(v > 0.0)) {
        return Err(Error::Domain("scaling fit requires positive coordinates".into()));
    }
    let logs: Vec<(f64, f64)> = selected.iter().map(|&(n, v)| (n.ln(), v.ln())).collect();
    let fit = fit_line(&logs);
    Ok(ScalingFit { exponent: fit.slope, intercept: fit.intercept, r_squared: fit.r_squared })
}

/// Log-spaced integer checkpoints between `lo` and `hi`, `per_decade`
/// points per factor of ten, deduplicated and always containing both ends.
pub fn log_checkpoints(lo: u64, hi: u64, per_decade: u32) -> Vec<u64> {
    assert!(lo >= 1 && hi >= lo && per_decade >= 1);
    let mut out = vec![lo];
    let decades = (hi as f64 / lo as f64).log10();
    let steps = (decades * per_decade as f64).ceil() as usize;
    for i in 1..=steps {
        let v = (lo as f64 * 10f64.powf(i as f64 / per_decade as f64)).round() as u64;
        out.push(v.min(hi));
    }
    out.push(hi);
    out.dedup();
    out
}
