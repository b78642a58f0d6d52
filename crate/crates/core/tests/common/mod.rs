#![allow(dead_code)]

use ebbi_core::nonneg::FuncTable3;
use ebbi_core::quantum::UnitVector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform on the sphere via normalized Gaussian-free rejection.
pub fn unit(rng: &mut impl Rng) -> UnitVector3 {
    loop {
        let v = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        let n2: f64 = v.iter().map(|x: &f64| x * x).sum();
        if n2 > 1e-4 && n2 <= 1.0 {
            return UnitVector3::normalized(v).unwrap();
        }
    }
}

/// Point in the closed unit ball.
pub fn ball(rng: &mut impl Rng) -> [f64; 3] {
    loop {
        let v = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        if v.iter().map(|x: &f64| x * x).sum::<f64>() <= 1.0 {
            return v;
        }
    }
}

/// Entries uniform on [0, 1], optionally normalized.
pub fn nonneg_table3(rng: &mut impl Rng, normalize: bool) -> FuncTable3 {
    let mut v = [0.0; 8];
    v.iter_mut().for_each(|x| *x = rng.random::<f64>());
    if normalize {
        let s: f64 = v.iter().sum();
        v.iter_mut().for_each(|x| *x /= s);
    }
    FuncTable3::new(v).unwrap()
}
