//! Frozen experiment configurations for the standard runs: one per example
//! family and one per map exponent of interest. Seeds are fixed so preset
//! outputs are reproducible byte for byte.

use manneville::EpsilonSequence;

use crate::{AicConfig, RenewalConfig};

#[derive(Debug, Clone, PartialEq)]
pub enum PresetExperiment {
    Renewal(RenewalConfig),
    Aic(AicConfig),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub about: &'static str,
    pub experiment: PresetExperiment,
}

fn power(alpha: f64) -> EpsilonSequence {
    EpsilonSequence::Power { alpha, c: 0.5 }
}

/// The shipped preset table.
pub fn presets() -> Vec<Preset> {
    vec![
        Preset {
            name: "example1-alpha05",
            about: "power family, exponent 1/2: sublinear n^0.5 information growth",
            experiment: PresetExperiment::Aic(AicConfig {
                seq: power(0.5),
                horizon: 1_000_000,
                trials: 1000,
                seed: 11_001,
                checkpoints_per_decade: 20,
            }),
        },
        Preset {
            name: "example1-alpha15",
            about: "power family, exponent 3/2: ergodic renewal with u_n -> 1/m_0",
            experiment: PresetExperiment::Renewal(RenewalConfig {
                seq: power(1.5),
                horizon: 100_000,
                trials: 1000,
                seed: 11_002,
                checkpoints_per_decade: 20,
            }),
        },
        Preset {
            name: "example2-geometric",
            about: "geometric family: linear information growth, exact n/2 counts",
            experiment: PresetExperiment::Aic(AicConfig {
                seq: EpsilonSequence::Geometric { a: 2.0, c: 1.0 },
                horizon: 1_000_000,
                trials: 1000,
                seed: 11_003,
                checkpoints_per_decade: 20,
            }),
        },
        Preset {
            name: "example3-logcorrected",
            about: "log-corrected family at the null boundary: sublinear counts",
            experiment: PresetExperiment::Renewal(RenewalConfig {
                seq: EpsilonSequence::LogCorrected { alpha: 1.0, beta: 0.5, c: 0.5 },
                horizon: 1_000_000,
                trials: 1000,
                seed: 11_004,
                checkpoints_per_decade: 20,
            }),
        },
        Preset {
            name: "example4-invlog",
            about: "inverse-log family: growth slower than any power law",
            experiment: PresetExperiment::Aic(AicConfig {
                seq: EpsilonSequence::InverseLog { c: 0.5 },
                horizon: 10_000_000,
                trials: 20_000,
                seed: 11_005,
                checkpoints_per_decade: 20,
            }),
        },
        Preset {
            name: "corollary2-z3",
            about: "map exponent z = 3 via alpha = 1/(z-1) = 0.5: sporadic scaling",
            experiment: PresetExperiment::Aic(AicConfig {
                seq: power(0.5),
                horizon: 1_000_000,
                trials: 1000,
                seed: 11_006,
                checkpoints_per_decade: 20,
            }),
        },
        Preset {
            name: "corollary2-z15",
            about: "map exponent z = 1.5 via alpha = 1/(z-1) = 2: linear scaling",
            experiment: PresetExperiment::Aic(AicConfig {
                seq: power(2.0),
                horizon: 1_000_000,
                trials: 1000,
                seed: 11_007,
                checkpoints_per_decade: 20,
            }),
        },
    ]
}

pub fn find(name: &str) -> Option<Preset> {
    presets().into_iter().find(|p| p.name == name)
}
