use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::Wave;
use crate::tensor::init::prng;
use crate::train::{Dataset, Split, WavePair};

/// Sums of random sines paired with their time reversal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToySpec {
    pub num_pairs: usize,
    pub channels: usize,
    pub steps: usize,
    pub num_sines: usize,
    pub magnitude: (f64, f64),
    /// Period range in steps.
    pub period: (f64, f64),
    pub seed: u64,
}

impl Default for ToySpec {
    fn default() -> Self {
        Self {
            num_pairs: 16,
            channels: 1,
            steps: 1000,
            num_sines: 3,
            magnitude: (0.1, 0.4),
            period: (200.0, 1000.0),
            seed: 0,
        }
    }
}

impl ToySpec {
    pub fn validate(&self) -> Result<()> {
        let range_ok = |(lo, hi): (f64, f64)| lo.is_finite() && hi.is_finite() && lo <= hi;
        if self.num_pairs == 0 || self.channels == 0 || self.num_sines == 0 || self.steps < 2 {
            return Err(Error::InvalidArgument(
                "toy spec needs pairs, channels and sines >= 1 and steps >= 2".into(),
            ));
        }
        if !range_ok(self.magnitude) || !range_ok(self.period) || self.period.0 <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "toy ranges must satisfy lo <= hi (periods positive): magnitude {:?}, period {:?}",
                self.magnitude, self.period
            )));
        }
        Ok(())
    }
}

fn draw(rng: &mut impl Rng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.random_range(lo..hi)
    }
}

/// Source `x[t] = sum_k A_k sin(2 pi t / P_k + phi_k)` per channel, target
/// `y[t] = x[T-1-t]`.
pub fn generate_toy(spec: &ToySpec) -> Result<Dataset> {
    spec.validate()?;
    let mut rng = prng(spec.seed);
    let t_len = spec.steps;
    let mut pairs = Vec::with_capacity(spec.num_pairs);
    for _ in 0..spec.num_pairs {
        let mut src = Vec::with_capacity(spec.channels);
        for _ in 0..spec.channels {
            let mut x = vec![0.0; t_len];
            for _ in 0..spec.num_sines {
                let a = draw(&mut rng, spec.magnitude);
                let p = draw(&mut rng, spec.period);
                let phi = rng.random_range(0.0..2.0 * PI);
                for (t, v) in x.iter_mut().enumerate() {
                    *v += a * (2.0 * PI * t as f64 / p + phi).sin();
                }
            }
            src.push(x);
        }
        let tgt: Vec<Vec<f64>> = src.iter().map(|x| x.iter().rev().copied().collect()).collect();
        pairs.push(WavePair::new(Wave::from_channels(&src)?, Wave::from_channels(&tgt)?));
    }
    Dataset::new(pairs, Split::Train)
}
