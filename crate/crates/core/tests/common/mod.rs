#![allow(dead_code)]

use hardy_core::{Exponents, WeightedInterval};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Log-uniform weights in `[10^-spread, 10^spread]`.
pub fn weights(rng: &mut ChaCha8Rng, len: usize, spread: f64) -> Vec<f64> {
    (0..len).map(|_| 10f64.powf(rng.gen_range(-spread..spread))).collect()
}

pub fn interval(rng: &mut ChaCha8Rng, len: usize, e: &Exponents) -> WeightedInterval {
    let offset = rng.gen_range(-5i64..=5);
    let u = weights(rng, len, 1.0);
    let v = weights(rng, len, 1.0);
    WeightedInterval::new(offset, u, v, e).unwrap()
}

pub fn signed(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

pub mod strategies {
    use hardy_core::{Exponents, WeightedInterval};
    use proptest::prelude::*;

    /// Raw weights: offset, `u`, `v`, each weight log-uniform in `[0.1, 10]`.
    #[derive(Debug, Clone)]
    pub struct RawWeights {
        pub offset: i64,
        pub u: Vec<f64>,
        pub v: Vec<f64>,
    }

    impl RawWeights {
        pub fn build(&self, e: &Exponents) -> WeightedInterval {
            WeightedInterval::new(self.offset, self.u.clone(), self.v.clone(), e).unwrap()
        }
    }

    pub fn raw(min_len: usize, max_len: usize) -> impl Strategy<Value = RawWeights> {
        (min_len..=max_len).prop_flat_map(|len| {
            let w = || prop::collection::vec((-1.0f64..1.0).prop_map(|t| 10f64.powf(t)), len);
            (-5i64..=5, w(), w()).prop_map(|(offset, u, v)| RawWeights { offset, u, v })
        })
    }

    /// `1 < p <= q`, with the diagonal drawn a quarter of the time.
    pub fn ordered() -> impl Strategy<Value = Exponents> {
        prop_oneof![
            1 => (1.1f64..4.0).prop_map(|p| Exponents::new(p, p).unwrap()),
            3 => (1.1f64..4.0, 0.0f64..3.0).prop_map(|(p, d)| Exponents::new(p, p + d).unwrap()),
        ]
    }

    pub fn values(len: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-1.0f64..1.0, len)
    }
}
