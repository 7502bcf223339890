use crate::error::Result;
use crate::model::{EncoderDecoderConfig, Seq2SeqConfig, SimpleEncoderDecoder, SimpleSeq2Seq};
use crate::train::standard::check_dims;
use crate::train::{fit, Dataset, TrainConfig, TrainReport};

/// Whole-wave encoder-decoder with latent size `latent`.
pub fn train_simple_encoder_decoder(
    train: &Dataset,
    test: Option<&Dataset>,
    latent: usize,
    config: &TrainConfig,
) -> Result<(SimpleEncoderDecoder, TrainReport)> {
    config.validate()?;
    let (source_steps, target_steps) = train.require_uniform_lengths()?;
    if let Some(t) = test {
        check_dims(train, t)?;
        t.require_uniform_lengths()?;
    }
    let ec = EncoderDecoderConfig {
        source_channels: train.source_channels(),
        target_channels: train.target_channels(),
        source_steps,
        target_steps,
        latent,
    };
    let mut net = SimpleEncoderDecoder::init(ec, config.seed)?;
    let report = fit(&mut net, train, test, config)?;
    Ok((net, report))
}

/// Raw-window LSTM seq2seq with window width `width` on both sides.
pub fn train_simple_seq2seq(
    train: &Dataset,
    test: Option<&Dataset>,
    width: usize,
    config: &TrainConfig,
) -> Result<(SimpleSeq2Seq, TrainReport)> {
    config.validate()?;
    let (_, target_steps) = train.require_uniform_lengths()?;
    if let Some(t) = test {
        check_dims(train, t)?;
    }
    let decoder_steps = config
        .decoder_steps
        .unwrap_or_else(|| config.pad_policy.window_count(target_steps, width));
    let sc = Seq2SeqConfig {
        source_channels: train.source_channels(),
        target_channels: train.target_channels(),
        width,
        hidden: config.hidden,
        decoder_steps,
        pad_policy: config.pad_policy,
    };
    let mut net = SimpleSeq2Seq::init(sc, config.seed)?;
    let report = fit(&mut net, train, test, config)?;
    Ok((net, report))
}
