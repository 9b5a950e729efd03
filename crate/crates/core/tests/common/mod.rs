#![allow(dead_code)]

use std::path::PathBuf;

use prn_core::{Function, Prn, RawPrn};
use rand::Rng;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture(name: &str) -> String {
    let path = fixture_dir().join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Network with `1..=max_states` states and `1..=max_fns` random functions
/// whose probabilities are positive and sum to one.
pub fn random_prn<R: Rng>(rng: &mut R, name: &str, max_states: usize, max_fns: usize) -> Prn {
    let n = rng.gen_range(1..=max_states);
    let k = rng.gen_range(1..=max_fns);
    let weights: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    RawPrn {
        name: name.into(),
        states: (0..n).map(|i| format!("s{i}")).collect(),
        functions: (0..k)
            .map(|i| {
                Function::new(
                    format!("f{i}"),
                    (0..n).map(|_| rng.gen_range(0..n)).collect(),
                )
            })
            .collect(),
        probs: weights.iter().map(|w| w / total).collect(),
    }
    .build()
    .expect("random network is valid")
}

pub fn max_abs(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .flat_map(|(r, s)| {
            assert_eq!(r.len(), s.len());
            r.iter().zip(s).map(|(x, y)| (x - y).abs())
        })
        .fold(0.0, f64::max)
}
