//! Comparison networks without the trained window representations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::lstm::{init_lstm, LstmNodes, LstmState};
use crate::model::{rows_to_wave, windowed_target_row, Network, ParamSet};
use crate::signal::{segment, PadPolicy, Wave};
use crate::tensor::init::{prng, uniform_fan_in};
use crate::tensor::{Array2, NodeId, Tape};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EncoderDecoderConfig {
    pub source_channels: usize,
    pub target_channels: usize,
    pub source_steps: usize,
    pub target_steps: usize,
    pub latent: usize,
}

/// Whole-wave autoencoder-style baseline:
/// `y = tanh(x W1 + b1) W2 + b2` on the flattened waves.
#[derive(Clone, Debug, PartialEq)]
pub struct SimpleEncoderDecoder {
    config: EncoderDecoderConfig,
    params: ParamSet,
}

impl SimpleEncoderDecoder {
    pub fn init(config: EncoderDecoderConfig, seed: u64) -> Result<Self> {
        let EncoderDecoderConfig {
            source_channels,
            target_channels,
            source_steps,
            target_steps,
            latent,
        } = config;
        if [source_channels, target_channels, source_steps, target_steps, latent].contains(&0) {
            return Err(Error::InvalidArgument(
                "encoder-decoder sizes must be at least 1".into(),
            ));
        }
        let mut rng = prng(seed);
        let n_in = source_channels * source_steps;
        let n_out = target_channels * target_steps;
        let mut p = ParamSet::new();
        p.push("encoder.weight", uniform_fan_in(&mut rng, n_in, latent, n_in));
        p.push("encoder.bias", uniform_fan_in(&mut rng, 1, latent, n_in));
        p.push("decoder.weight", uniform_fan_in(&mut rng, latent, n_out, latent));
        p.push("decoder.bias", uniform_fan_in(&mut rng, 1, n_out, latent));
        Ok(Self { config, params: p })
    }

    pub fn from_parts(config: EncoderDecoderConfig, params: ParamSet) -> Result<Self> {
        Self::init(config.clone(), 0)?.params.check_layout(&params)?;
        Ok(Self { config, params })
    }

    pub fn config(&self) -> &EncoderDecoderConfig {
        &self.config
    }

    pub fn into_parts(self) -> (EncoderDecoderConfig, ParamSet) {
        (self.config, self.params)
    }
}

impl Network for SimpleEncoderDecoder {
    fn params(&self) -> &ParamSet {
        &self.params
    }

    fn params_mut(&mut self) -> &mut ParamSet {
        &mut self.params
    }

    fn predict_row(&self, tape: &mut Tape, ids: &[NodeId], source: &Wave) -> Result<NodeId> {
        let c = &self.config;
        if source.channels() != c.source_channels || source.steps() != c.source_steps {
            return Err(Error::ShapeMismatch {
                op: "simple-ed",
                detail: format!(
                    "expects {}x{} source, got {}x{}",
                    c.source_channels,
                    c.source_steps,
                    source.channels(),
                    source.steps()
                ),
            });
        }
        let x = tape.constant(Array2::row(source.samples().to_vec()));
        let pre = tape.affine(x, ids[0], ids[1])?;
        let z = tape.tanh(pre)?;
        tape.affine(z, ids[2], ids[3])
    }

    fn target_row(&self, target: &Wave) -> Result<Array2> {
        let c = &self.config;
        if target.channels() != c.target_channels || target.steps() != c.target_steps {
            return Err(Error::ShapeMismatch {
                op: "simple-ed",
                detail: format!(
                    "expects {}x{} target, got {}x{}",
                    c.target_channels,
                    c.target_steps,
                    target.channels(),
                    target.steps()
                ),
            });
        }
        Ok(Array2::row(target.samples().to_vec()))
    }

    fn row_to_wave(&self, row: &Array2) -> Result<Wave> {
        Wave::new(
            self.config.target_channels,
            self.config.target_steps,
            row.data().to_vec(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Seq2SeqConfig {
    pub source_channels: usize,
    pub target_channels: usize,
    pub width: usize,
    pub hidden: usize,
    pub decoder_steps: usize,
    #[serde(default)]
    pub pad_policy: PadPolicy,
}

/// Windowed LSTM encoder-decoder with raw windows in and out.
///
/// The encoder reads flattened source windows directly. The decoder LSTM has
/// one hidden unit per target window scalar, is fed the final encoder hidden
/// state at every step, and its hidden state is the predicted window.
#[derive(Clone, Debug, PartialEq)]
pub struct SimpleSeq2Seq {
    config: Seq2SeqConfig,
    params: ParamSet,
}

impl SimpleSeq2Seq {
    pub fn init(config: Seq2SeqConfig, seed: u64) -> Result<Self> {
        let c = &config;
        if [c.source_channels, c.target_channels, c.width, c.hidden, c.decoder_steps].contains(&0) {
            return Err(Error::InvalidArgument("seq2seq sizes must be at least 1".into()));
        }
        let mut rng = prng(seed);
        let mut p = ParamSet::new();
        init_lstm(&mut p, "encoder", c.source_channels * c.width, c.hidden, &mut rng);
        init_lstm(&mut p, "decoder", c.hidden, c.target_channels * c.width, &mut rng);
        Ok(Self { config, params: p })
    }

    pub fn from_parts(config: Seq2SeqConfig, params: ParamSet) -> Result<Self> {
        Self::init(config.clone(), 0)?.params.check_layout(&params)?;
        Ok(Self { config, params })
    }

    pub fn config(&self) -> &Seq2SeqConfig {
        &self.config
    }

    pub fn into_parts(self) -> (Seq2SeqConfig, ParamSet) {
        (self.config, self.params)
    }

    fn zero_state(tape: &mut Tape, n: usize) -> LstmState {
        LstmState {
            h: tape.constant(Array2::zeros(1, n)),
            c: tape.constant(Array2::zeros(1, n)),
        }
    }
}

impl Network for SimpleSeq2Seq {
    fn params(&self) -> &ParamSet {
        &self.params
    }

    fn params_mut(&mut self) -> &mut ParamSet {
        &mut self.params
    }

    fn predict_row(&self, tape: &mut Tape, ids: &[NodeId], source: &Wave) -> Result<NodeId> {
        let c = &self.config;
        if source.channels() != c.source_channels {
            return Err(Error::ShapeMismatch {
                op: "simple-seq2seq",
                detail: format!(
                    "expects {} source channels, got {}",
                    c.source_channels,
                    source.channels()
                ),
            });
        }
        let out_len = c.target_channels * c.width;
        let encoder = LstmNodes {
            w_ih: ids[0],
            w_hh: ids[1],
            bias: ids[2],
            hidden: c.hidden,
        };
        let decoder = LstmNodes {
            w_ih: ids[3],
            w_hh: ids[4],
            bias: ids[5],
            hidden: out_len,
        };

        let mut state = Self::zero_state(tape, c.hidden);
        for window in segment(source, c.width, c.pad_policy)? {
            let x = tape.constant(Array2::row(window.values().to_vec()));
            state = encoder.step(tape, x, state)?;
        }
        let summary = state.h;

        let mut dec = Self::zero_state(tape, out_len);
        let mut outputs = Vec::with_capacity(c.decoder_steps);
        for _ in 0..c.decoder_steps {
            dec = decoder.step(tape, summary, dec)?;
            outputs.push(dec.h);
        }
        tape.concat_cols(&outputs)
    }

    fn target_row(&self, target: &Wave) -> Result<Array2> {
        let c = &self.config;
        windowed_target_row(target, c.target_channels, c.width, c.decoder_steps, c.pad_policy)
    }

    fn row_to_wave(&self, row: &Array2) -> Result<Wave> {
        let c = &self.config;
        rows_to_wave(row, c.target_channels, c.width, c.decoder_steps)
    }
}
