use crate::error::{Error, Result};
use crate::signal::{crop_or_pad, Wave};
use crate::train::{train_iterative, Dataset, IterativeModel, TrainConfig, TrainReport, WavePair};

/// Iterative training augmented with back-translated pairs.
///
/// Each round trains a reverse (target to source) iterative model on the
/// swapped paired data, translates every unpaired target into a synthetic
/// source, and retrains the forward model on real and synthetic pairs with
/// equal weight. Reports are returned for every trained model in order:
/// reverse channels, then forward channels, per round.
pub fn train_iterative_backtranslation(
    train: &Dataset,
    test: Option<&Dataset>,
    unpaired_targets: &[Wave],
    config: &TrainConfig,
) -> Result<(IterativeModel, Vec<TrainReport>)> {
    if unpaired_targets.is_empty() || config.backtranslation_rounds == 0 {
        log::warn!("no back-translation performed; training the plain iterative model");
        return train_iterative(train, test, config);
    }
    let dy = train.target_channels();
    if let Some((i, w)) = unpaired_targets.iter().enumerate().find(|(_, w)| w.channels() != dy) {
        return Err(Error::ShapeMismatch {
            op: "back-translation",
            detail: format!("unpaired target {i} has {} channels, expected {dy}", w.channels()),
        });
    }
    let (source_steps, _) = train.require_uniform_lengths()?;

    let reverse_config = TrainConfig {
        encoder_width: config.decoder_width,
        decoder_width: config.encoder_width,
        decoder_steps: None,
        ..config.clone()
    };
    let reversed = train.swapped();
    let reversed_test = test.map(Dataset::swapped);

    let mut reports = Vec::new();
    let mut current = train.clone();
    let mut forward = None;
    for round in 0..config.backtranslation_rounds {
        let (reverse, rev_reports) = train_iterative(&reversed, reversed_test.as_ref(), &reverse_config)?;
        reports.extend(rev_reports);
        let synthetic = unpaired_targets
            .iter()
            .map(|y| {
                let (x, _) = reverse.translate(y)?;
                Ok(WavePair::new(crop_or_pad(&x, source_steps)?, y.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        log::info!("round {}: {} synthetic pairs", round + 1, synthetic.len());
        current = train.concat(&Dataset::new(synthetic, train.split())?)?;
        let (model, fwd_reports) = train_iterative(&current, test, config)?;
        reports.extend(fwd_reports);
        forward = Some(model);
    }
    debug_assert!(current.len() >= train.len());
    Ok((forward.expect("at least one round"), reports))
}
