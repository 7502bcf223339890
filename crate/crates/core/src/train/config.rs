use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::PadPolicy;
use crate::tensor::AdamConfig;

/// Hyper-parameters shared by every trainer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub encoder_width: usize,
    pub decoder_width: usize,
    /// Hidden size `d_r` of the wave2wave LSTMs and representations.
    pub hidden: usize,
    /// Latent size `d_z` of the simple encoder-decoder baseline.
    pub latent: usize,
    /// Decoder step count; derived from the target length when `None`.
    pub decoder_steps: Option<usize>,
    pub input_feeding: bool,
    pub pad_policy: PadPolicy,
    pub adam: AdamConfig,
    pub epochs: usize,
    /// Mini-batch size; `None` means full batch below 100 pairs, 100 otherwise.
    pub batch_size: Option<usize>,
    pub seed: u64,
    /// Elementwise gradient clamp.
    pub grad_clamp: f64,
    pub backtranslation_rounds: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            encoder_width: 100,
            decoder_width: 100,
            hidden: 50,
            latent: 100,
            decoder_steps: None,
            input_feeding: false,
            pad_policy: PadPolicy::ZeroPad,
            adam: AdamConfig::default(),
            epochs: 100,
            batch_size: None,
            seed: 0,
            grad_clamp: 10.0,
            backtranslation_rounds: 1,
        }
    }
}

pub const DEFAULT_BATCH_THRESHOLD: usize = 100;

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        let sizes = [
            ("encoder_width", self.encoder_width),
            ("decoder_width", self.decoder_width),
            ("hidden", self.hidden),
            ("latent", self.latent),
        ];
        if let Some((name, _)) = sizes.iter().find(|(_, v)| *v == 0) {
            return Err(Error::InvalidArgument(format!("{name} must be at least 1")));
        }
        if self.decoder_steps == Some(0) || self.batch_size == Some(0) {
            return Err(Error::InvalidArgument(
                "decoder_steps and batch_size must be at least 1 when given".into(),
            ));
        }
        if !(self.grad_clamp > 0.0) {
            return Err(Error::InvalidArgument("grad_clamp must be positive".into()));
        }
        let a = &self.adam;
        if !(a.learning_rate > 0.0)
            || !(0.0..1.0).contains(&a.beta1)
            || !(0.0..1.0).contains(&a.beta2)
            || !(a.epsilon > 0.0)
        {
            return Err(Error::InvalidArgument(format!("invalid optimizer settings {a:?}")));
        }
        Ok(())
    }

    pub fn effective_batch(&self, pairs: usize) -> usize {
        match self.batch_size {
            Some(b) => b.min(pairs),
            None if pairs < DEFAULT_BATCH_THRESHOLD => pairs,
            None => DEFAULT_BATCH_THRESHOLD,
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..self.clone() }
    }
}
