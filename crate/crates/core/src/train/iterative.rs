use crate::error::{Error, Result};
use crate::model::{AttentionTrace, Wave2Wave};
use crate::signal::Wave;
use crate::train::{train_wave2wave, Dataset, TrainConfig, TrainReport};

/// One single-output network per target channel.
#[derive(Clone, Debug, PartialEq)]
pub struct IterativeModel {
    models: Vec<Wave2Wave>,
}

impl IterativeModel {
    pub fn new(models: Vec<Wave2Wave>) -> Result<Self> {
        let first = models
            .first()
            .ok_or_else(|| Error::InvalidArgument("iterative model needs at least one channel".into()))?
            .config()
            .clone();
        for (j, m) in models.iter().enumerate() {
            let c = m.config();
            if c.target_channels != 1 {
                return Err(Error::InvalidArgument(format!(
                    "channel model {j} has {} outputs, expected 1",
                    c.target_channels
                )));
            }
            if c.source_channels != first.source_channels || c.output_steps() != first.output_steps() {
                return Err(Error::ShapeMismatch {
                    op: "iterative",
                    detail: format!("channel model {j} disagrees with channel 0 on shape"),
                });
            }
        }
        Ok(Self { models })
    }

    pub fn channels(&self) -> usize {
        self.models.len()
    }

    pub fn models(&self) -> &[Wave2Wave] {
        &self.models
    }

    pub fn into_models(self) -> Vec<Wave2Wave> {
        self.models
    }

    pub fn channel(&self, j: usize) -> &Wave2Wave {
        &self.models[j]
    }

    /// Stacks every channel model's translation; traces are per channel.
    pub fn translate(&self, source: &Wave) -> Result<(Wave, Vec<AttentionTrace>)> {
        let mut waves = Vec::with_capacity(self.models.len());
        let mut traces = Vec::with_capacity(self.models.len());
        for m in &self.models {
            let (w, t) = m.translate(source)?;
            waves.push(w);
            traces.push(t);
        }
        Ok((Wave::stack(&waves)?.with_sample_period(source.sample_period()), traces))
    }
}

/// Per-channel training with seed `config.seed + j` for channel `j`.
pub fn train_iterative(
    train: &Dataset,
    test: Option<&Dataset>,
    config: &TrainConfig,
) -> Result<(IterativeModel, Vec<TrainReport>)> {
    let seeds: Vec<u64> = (0..train.target_channels() as u64)
        .map(|j| config.seed.wrapping_add(j))
        .collect();
    train_iterative_seeded(train, test, config, &seeds)
}

/// Per-channel training with an explicit seed for each target channel.
pub fn train_iterative_seeded(
    train: &Dataset,
    test: Option<&Dataset>,
    config: &TrainConfig,
    seeds: &[u64],
) -> Result<(IterativeModel, Vec<TrainReport>)> {
    let dy = train.target_channels();
    if seeds.len() != dy {
        return Err(Error::InvalidArgument(format!(
            "{} seeds for {dy} target channels",
            seeds.len()
        )));
    }
    let mut models = Vec::with_capacity(dy);
    let mut reports = Vec::with_capacity(dy);
    for (j, &seed) in seeds.iter().enumerate() {
        let train_j = train.target_channel(j)?;
        let test_j = test.map(|t| t.target_channel(j)).transpose()?;
        log::info!("training channel {}/{dy} (seed {seed})", j + 1);
        let (model, report) = train_wave2wave(&train_j, test_j.as_ref(), &config.with_seed(seed))?;
        models.push(model);
        reports.push(report);
    }
    Ok((IterativeModel::new(models)?, reports))
}
