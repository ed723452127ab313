//! Piecewise-linear models of the intermittent Manneville map.
//!
//! The map `f(x) = x + x^z (mod 1)` with `z > 1` alternates long laminar
//! passages near its neutral fixed point with turbulent reinjections. This
//! crate implements a family of piecewise-linear maps with the same cell
//! structure, parametrized by a decreasing sequence `(ε_k)`, together with
//! the three descriptions that make them computable:
//!
//! - **Symbolic**: orbits code into countdown strings over a countable
//!   alphabet; the finite truncations are sub-shifts whose transition
//!   matrix has Perron eigenvalue 2 ([`symbolic`], [`spectral`]).
//! - **Stochastic**: under Lebesgue-random seeding the coding is exactly a
//!   renewal process with interarrival law `P[X = k] = ε_{k-2} - ε_{k-1}`;
//!   occurrence probabilities and expected counts solve an exact
//!   convolution recursion ([`seq`], [`renewal`]).
//! - **Algorithmic**: compressing a string to its recurrence times is a
//!   bijection, and the compressed length estimates the information
//!   content, with two-sided bounds in terms of the event count
//!   ([`aic`]).
//!
//! Heavy-tailed `(ε_k)` produce anomalous scaling of the information
//! content (`n^α`, or slower than any power), the regime the sequence
//! family is designed to explore.

// Negated comparisons like `!(x > 0.0)` are deliberate: they reject NaN
// along with the out-of-range values, which `x <= 0.0` would let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod aic;
pub mod error;
pub mod maps;
pub mod renewal;
pub mod seq;
mod series;
pub mod spectral;
pub mod stats;
pub mod symbolic;

pub use aic::{
    aic_estimate_and_bounds, compress, decompress, ensemble_mean_aic, log_checkpoints,
    scaling_fit, AicEstimate, CompressedString, EnsembleRow, PartialRun, ScalingFit,
};
pub use error::{Error, Result};
pub use maps::{
    conjugacy_approx, linear_apply, manneville_apply, ConjugacyApprox, IntervalMap, MapSpec,
    PreimageLadder,
};
pub use renewal::{
    occurrence_probabilities, simulate_counts, trial_rng, CountsSim, ExactCounts,
    FellerPrediction, InterarrivalLaw, Regime, RenewalModel,
};
pub use seq::{
    validate_epsilon, EpsilonSequence, ExtendedReal, Moments, PowerTail, RenewalLaw,
    ValidityReport,
};
pub use spectral::{
    largest_eigenvalue, markov_ks_entropy, parry_measure, perron_pair, Entropy, MarkovMeasure,
    PerronEigen,
};
pub use symbolic::{
    encode_orbit, is_admissible, truncate_alphabet, SymbolString, TransitionMatrix,
};
