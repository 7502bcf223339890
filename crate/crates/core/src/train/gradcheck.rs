use rand::Rng;

use crate::error::Result;
use crate::model::{ModelConfig, Network, Wave2Wave};
use crate::signal::Wave;
use crate::tensor::gradcheck::grad_check;
use crate::tensor::init::prng;
use crate::tensor::GradCheckReport;
use crate::train::squared_loss;

/// Random source/target waves with samples uniform in `[-1, 1]`.
pub fn random_pair(config: &ModelConfig, source_steps: usize, seed: u64) -> Result<(Wave, Wave)> {
    let mut rng = prng(seed ^ 0xD1B5_4A32_D192_ED03);
    let mut draw = |n: usize| (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect::<Vec<f64>>();
    let source = Wave::new(
        config.source_channels,
        source_steps,
        draw(config.source_channels * source_steps),
    )?;
    let target_steps = config.output_steps();
    let target = Wave::new(
        config.target_channels,
        target_steps,
        draw(config.target_channels * target_steps),
    )?;
    Ok((source, target))
}

/// Finite-difference check of the full wave2wave squared loss with freshly
/// initialized parameters.
pub fn model_grad_check(
    config: &ModelConfig,
    source_steps: usize,
    seed: u64,
    tolerance: f64,
) -> Result<GradCheckReport> {
    let model = Wave2Wave::init(config.clone(), seed)?;
    let (source, target) = random_pair(config, source_steps, seed)?;
    let target_row = model.target_row(&target)?;
    let params = model.params();
    grad_check(
        params.names(),
        params.values(),
        |tape, ids| {
            let pred = model.predict_row(tape, ids, &source)?;
            squared_loss(tape, &[pred], std::slice::from_ref(&target_row))
        },
        tolerance,
    )
}
