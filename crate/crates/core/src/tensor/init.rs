use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::tensor::Array2;

/// Seedable generator used for parameter initialization and shuffling.
pub type Prng = Xoshiro256PlusPlus;

pub fn prng(seed: u64) -> Prng {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

/// Uniform in `[-k, k]` with `k = 1 / sqrt(fan_in)`.
pub fn uniform_fan_in(rng: &mut Prng, rows: usize, cols: usize, fan_in: usize) -> Array2 {
    let k = 1.0 / (fan_in.max(1) as f64).sqrt();
    let data = (0..rows * cols).map(|_| rng.random_range(-k..=k)).collect();
    Array2::new(rows, cols, data).expect("length matches shape")
}
