use crate::error::{Error, Result};
use crate::model::{ModelConfig, Wave2Wave};
use crate::train::{fit, Dataset, TrainConfig, TrainReport};

/// Model dimensions implied by a dataset and training configuration.
pub fn model_config_for(train: &Dataset, config: &TrainConfig) -> Result<ModelConfig> {
    let decoder_steps = match config.decoder_steps {
        Some(n) => n,
        None => {
            let steps = train.target_steps().ok_or_else(|| {
                Error::InvalidArgument("targets differ in length; set decoder_steps explicitly".into())
            })?;
            config.pad_policy.window_count(steps, config.decoder_width)
        }
    };
    let mc = ModelConfig {
        source_channels: train.source_channels(),
        target_channels: train.target_channels(),
        encoder_width: config.encoder_width,
        decoder_width: config.decoder_width,
        hidden: config.hidden,
        decoder_steps,
        input_feeding: config.input_feeding,
        pad_policy: config.pad_policy,
    };
    mc.validate()?;
    Ok(mc)
}

/// End-to-end training of one wave2wave network.
pub fn train_wave2wave(
    train: &Dataset,
    test: Option<&Dataset>,
    config: &TrainConfig,
) -> Result<(Wave2Wave, TrainReport)> {
    config.validate()?;
    let mc = model_config_for(train, config)?;
    if let Some(t) = test {
        check_dims(train, t)?;
    }
    let mut net = Wave2Wave::init(mc, config.seed)?;
    let report = fit(&mut net, train, test, config)?;
    Ok((net, report))
}

pub(crate) fn check_dims(train: &Dataset, test: &Dataset) -> Result<()> {
    if train.source_channels() != test.source_channels() || train.target_channels() != test.target_channels() {
        return Err(Error::ShapeMismatch {
            op: "dataset",
            detail: format!(
                "train is {}->{} channels, test is {}->{}",
                train.source_channels(),
                train.target_channels(),
                test.source_channels(),
                test.target_channels()
            ),
        });
    }
    Ok(())
}
