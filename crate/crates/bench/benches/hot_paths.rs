//! Hot-path benchmarks: recurrence sampling, the exact renewal recursion on
//! both routes, orbit encoding, and compression.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::Rng;

use manneville::{
    compress, encode_orbit, occurrence_probabilities, trial_rng, EpsilonSequence, IntervalMap,
    RenewalModel, SymbolString,
};

fn sampler(c: &mut Criterion) {
    let mut group = c.benchmark_group("sample_recurrence");
    let families = [
        ("geometric", EpsilonSequence::geometric(2.0, 1.0).unwrap()),
        ("power05", EpsilonSequence::power(0.5, 0.5).unwrap()),
        ("power20", EpsilonSequence::power(2.0, 0.5).unwrap()),
        ("invlog", EpsilonSequence::inverse_log(0.5).unwrap()),
    ];
    for (name, seq) in families {
        let model = RenewalModel::new(seq.law());
        group.bench_function(name, |b| {
            let mut rng = trial_rng(1, 0);
            b.iter(|| black_box(model.sample_recurrence(&mut rng)))
        });
    }
    group.finish();
}

fn renewal_recursion(c: &mut Criterion) {
    let model = RenewalModel::new(EpsilonSequence::power(1.5, 0.5).unwrap().law());
    let mut group = c.benchmark_group("occurrence_probabilities");
    group.sample_size(10);
    for n in [8_192usize, 32_768, 262_144] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| black_box(occurrence_probabilities(&model, n)))
        });
    }
    group.finish();
}

fn orbit_encoding(c: &mut Criterion) {
    let map = IntervalMap::piecewise_linear(EpsilonSequence::power(1.5, 0.5).unwrap());
    c.bench_function("encode_orbit_10k", |b| {
        let mut rng = trial_rng(2, 0);
        b.iter(|| {
            let x0: f64 = 1.0 - rng.gen::<f64>();
            black_box(encode_orbit(&map, x0, 10_000).unwrap())
        })
    });
}

fn compression(c: &mut Criterion) {
    let mut rng = trial_rng(3, 0);
    let s = SymbolString::random_admissible(&mut rng, 100_000, 40);
    c.bench_function("compress_100k", |b| b.iter(|| black_box(compress(&s).unwrap())));
}

criterion_group!(benches, sampler, renewal_recursion, orbit_encoding, compression);
criterion_main!(benches);
