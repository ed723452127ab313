//! Scaling of the ensemble information content across tail regimes: linear
//! for light tails, `n^alpha` for heavy power tails.

use manneville::{ensemble_mean_aic, log_checkpoints, scaling_fit, EpsilonSequence, RenewalModel};

fn exponent_of(rows: &[manneville::EnsembleRow], value: impl Fn(&manneville::EnsembleRow) -> f64, window: (f64, f64)) -> f64 {
    let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.checkpoint as f64, value(r))).collect();
    scaling_fit(&pts, window).unwrap().exponent
}

#[test]
fn geometric_information_grows_linearly() {
    let model = RenewalModel::new(EpsilonSequence::geometric(2.0, 1.0).unwrap().law());
    let checkpoints = log_checkpoints(100, 1_000_000, 10);
    let rows = ensemble_mean_aic(&model, &checkpoints, 200, 501);
    let est = exponent_of(&rows, |r| r.mean_estimate, (1e4, 1e6));
    assert!((est - 1.0).abs() < 0.02, "estimate exponent {est}");
    let events = exponent_of(&rows, |r| r.mean_events, (1e4, 1e6));
    assert!((events - 1.0).abs() < 0.02, "event exponent {events}");
}

#[test]
fn heavy_tail_events_grow_as_square_root() {
    let model = RenewalModel::new(EpsilonSequence::power(0.5, 0.5).unwrap().law());
    let checkpoints = log_checkpoints(100, 1_000_000, 10);
    let rows = ensemble_mean_aic(&model, &checkpoints, 400, 502);
    let events = exponent_of(&rows, |r| r.mean_events, (1e4, 1e6));
    assert!((events - 0.5).abs() < 0.05, "event exponent {events}");
    // The estimate is wedged between the event count and its log-boosted
    // multiple at every checkpoint.
    for r in &rows {
        assert!(r.mean_estimate >= r.mean_events);
        assert!(r.mean_estimate <= r.mean_events * ((r.checkpoint as f64) + 2.0).log2() + 64.0);
    }
}
