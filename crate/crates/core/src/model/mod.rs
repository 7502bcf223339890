//! Trainable networks: the wave2wave model and the two baselines.

mod baselines;
mod lstm;
mod params;
mod wave2wave;

pub use baselines::{EncoderDecoderConfig, Seq2SeqConfig, SimpleEncoderDecoder, SimpleSeq2Seq};
pub use lstm::{LstmNodes, LstmState};
pub use params::ParamSet;
pub use wave2wave::{AttentionTrace, Bound, DecodeStep, EncoderMemory, ForwardPass, ModelConfig, Wave2Wave};

use crate::error::{Error, Result};
use crate::signal::{segment, PadPolicy, Wave};
use crate::tensor::{Array2, NodeId, Tape};

/// A network trained by regressing a flattened prediction row onto a
/// flattened target row.
pub trait Network {
    fn params(&self) -> &ParamSet;
    fn params_mut(&mut self) -> &mut ParamSet;

    /// Builds the `1 x n` prediction for `source` from parameter nodes `ids`.
    fn predict_row(&self, tape: &mut Tape, ids: &[NodeId], source: &Wave) -> Result<NodeId>;

    /// Flattened regression target aligned with [`Network::predict_row`].
    fn target_row(&self, target: &Wave) -> Result<Array2>;

    /// Inverse of the row layout.
    fn row_to_wave(&self, row: &Array2) -> Result<Wave>;

    /// Inference without recording gradients.
    fn predict(&self, source: &Wave) -> Result<Wave> {
        let mut tape = Tape::new();
        let ids = self.params().bind_constants(&mut tape);
        let row = self.predict_row(&mut tape, &ids, source)?;
        Ok(self
            .row_to_wave(tape.value(row))?
            .with_sample_period(source.sample_period()))
    }
}

/// Target windows of width `width`, zero-padded, concatenated in order.
pub(crate) fn windowed_target_row(
    target: &Wave,
    channels: usize,
    width: usize,
    steps: usize,
    pad: PadPolicy,
) -> Result<Array2> {
    if target.channels() != channels {
        return Err(Error::ShapeMismatch {
            op: "target",
            detail: format!("model produces {channels} channels, target has {}", target.channels()),
        });
    }
    let windows = segment(target, width, pad)?;
    if windows.len() != steps {
        return Err(Error::ShapeMismatch {
            op: "target",
            detail: format!(
                "target spans {} windows of width {width}, model decodes {steps}",
                windows.len()
            ),
        });
    }
    let mut row = Vec::with_capacity(steps * channels * width);
    for w in &windows {
        row.extend_from_slice(w.values());
    }
    Ok(Array2::row(row))
}

/// Reassembles a row of `steps` windows (each `channels x width`, row-major)
/// into a wave of `steps * width` steps.
pub(crate) fn rows_to_wave(row: &Array2, channels: usize, width: usize, steps: usize) -> Result<Wave> {
    let per = channels * width;
    if row.len() != per * steps {
        return Err(Error::ShapeMismatch {
            op: "assemble",
            detail: format!("row of {} values, expected {}", row.len(), per * steps),
        });
    }
    let total = steps * width;
    let mut samples = vec![0.0; channels * total];
    for (s, chunk) in row.data().chunks(per).enumerate() {
        for c in 0..channels {
            let dst = c * total + s * width;
            samples[dst..dst + width].copy_from_slice(&chunk[c * width..(c + 1) * width]);
        }
    }
    Wave::new(channels, total, samples)
}
