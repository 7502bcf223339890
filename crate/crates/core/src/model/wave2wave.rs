//! The windowed attention seq2seq network.
//!
//! Source windows pass through a trained representation `tanh(A x + b)` into
//! an LSTM encoder. The decoder LSTM starts from the final encoder state and
//! runs a fixed number of steps. Each step attends over all encoder states
//! with a bilinear score `h_dec^T W_a h_enc`, combines hidden state and context
//! in `tanh(W_o [h_dec; c] + b_o)`, and maps that representation back to a
//! target window through an affine inverse representation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::lstm::{init_lstm, LstmNodes, LstmState};
use crate::model::{rows_to_wave, windowed_target_row, Network, ParamSet};
use crate::signal::{segment, PadPolicy, Wave, WindowMatrix};
use crate::tensor::init::{prng, uniform_fan_in};
use crate::tensor::{Array2, NodeId, Tape};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub source_channels: usize,
    pub target_channels: usize,
    pub encoder_width: usize,
    pub decoder_width: usize,
    pub hidden: usize,
    pub decoder_steps: usize,
    #[serde(default)]
    pub input_feeding: bool,
    #[serde(default)]
    pub pad_policy: PadPolicy,
}

impl ModelConfig {
    pub fn validate(&self) -> Result<()> {
        let counts = [
            ("source_channels", self.source_channels),
            ("target_channels", self.target_channels),
            ("encoder_width", self.encoder_width),
            ("decoder_width", self.decoder_width),
            ("hidden", self.hidden),
            ("decoder_steps", self.decoder_steps),
        ];
        if let Some((name, _)) = counts.iter().find(|(_, v)| *v == 0) {
            return Err(Error::InvalidArgument(format!("{name} must be at least 1")));
        }
        Ok(())
    }

    /// Output length of [`Wave2Wave::translate`].
    pub fn output_steps(&self) -> usize {
        self.decoder_steps * self.decoder_width
    }

    fn window_len(&self) -> usize {
        self.target_channels * self.decoder_width
    }
}

pub(crate) const NAMES: [&str; 13] = [
    "repr.weight",
    "repr.bias",
    "encoder.w_ih",
    "encoder.w_hh",
    "encoder.bias",
    "decoder.w_ih",
    "decoder.w_hh",
    "decoder.bias",
    "attention.w_a",
    "head.weight",
    "head.bias",
    "inv_repr.weight",
    "inv_repr.bias",
];

/// Parameter node handles in a tape.
#[derive(Clone, Copy, Debug)]
pub struct Bound {
    pub repr_w: NodeId,
    pub repr_b: NodeId,
    pub encoder: LstmNodes,
    pub decoder: LstmNodes,
    pub w_a: NodeId,
    pub head_w: NodeId,
    pub head_b: NodeId,
    pub inv_w: NodeId,
    pub inv_b: NodeId,
}

impl Bound {
    fn from_ids(ids: &[NodeId], hidden: usize) -> Result<Self> {
        if ids.len() != NAMES.len() {
            return Err(Error::ShapeMismatch {
                op: "bind",
                detail: format!("expected {} parameter nodes, got {}", NAMES.len(), ids.len()),
            });
        }
        Ok(Self {
            repr_w: ids[0],
            repr_b: ids[1],
            encoder: LstmNodes {
                w_ih: ids[2],
                w_hh: ids[3],
                bias: ids[4],
                hidden,
            },
            decoder: LstmNodes {
                w_ih: ids[5],
                w_hh: ids[6],
                bias: ids[7],
                hidden,
            },
            w_a: ids[8],
            head_w: ids[9],
            head_b: ids[10],
            inv_w: ids[11],
            inv_b: ids[12],
        })
    }
}

/// Encoder outputs kept for attention.
#[derive(Clone, Debug)]
pub struct EncoderMemory {
    pub states: Vec<LstmState>,
    /// `S' x hidden`, one encoder state per row.
    pub stacked: NodeId,
    /// `hidden x S'`.
    pub stacked_t: NodeId,
}

impl EncoderMemory {
    pub fn last(&self) -> LstmState {
        *self.states.last().expect("encoder ran at least one step")
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DecodeStep {
    pub state: LstmState,
    pub repr: NodeId,
    pub context: NodeId,
    pub weights: NodeId,
}

#[derive(Clone, Debug)]
pub struct ForwardPass {
    /// `1 x (T' * d_y * w_dec)`, decoder windows in order.
    pub output: NodeId,
    pub steps: Vec<DecodeStep>,
}

/// Attention weights (`T' x S'`) and context vectors (`T' x hidden`).
#[derive(Clone, Debug, PartialEq)]
pub struct AttentionTrace {
    pub weights: Array2,
    pub contexts: Array2,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Wave2Wave {
    config: ModelConfig,
    params: ParamSet,
}

impl Wave2Wave {
    /// Fresh parameters, uniform in `[-1/sqrt(fan_in), 1/sqrt(fan_in)]`.
    pub fn init(config: ModelConfig, seed: u64) -> Result<Self> {
        config.validate()?;
        let mut rng = prng(seed);
        let h = config.hidden;
        let enc_in = config.source_channels * config.encoder_width;
        let mut p = ParamSet::new();
        p.push(NAMES[0], uniform_fan_in(&mut rng, enc_in, h, enc_in));
        p.push(NAMES[1], uniform_fan_in(&mut rng, 1, h, enc_in));
        init_lstm(&mut p, "encoder", h, h, &mut rng);
        init_lstm(&mut p, "decoder", h, h, &mut rng);
        p.push(NAMES[8], uniform_fan_in(&mut rng, h, h, h));
        p.push(NAMES[9], uniform_fan_in(&mut rng, 2 * h, h, 2 * h));
        p.push(NAMES[10], uniform_fan_in(&mut rng, 1, h, 2 * h));
        p.push(NAMES[11], uniform_fan_in(&mut rng, h, config.window_len(), h));
        p.push(NAMES[12], uniform_fan_in(&mut rng, 1, config.window_len(), h));
        debug_assert!(p.names().iter().zip(NAMES).all(|(a, b)| a == b));
        Ok(Self { config, params: p })
    }

    /// All-zero parameters of the right shapes.
    pub fn zeros(config: ModelConfig) -> Result<Self> {
        let template = Self::init(config, 0)?;
        Ok(Self {
            params: template.params.zeros_like(),
            config: template.config,
        })
    }

    pub fn from_parts(config: ModelConfig, params: ParamSet) -> Result<Self> {
        Self::zeros(config.clone())?.params.check_layout(&params)?;
        Ok(Self { config, params })
    }

    pub fn config(&self) -> &ModelConfig {
        &self.config
    }

    pub fn into_parts(self) -> (ModelConfig, ParamSet) {
        (self.config, self.params)
    }

    pub fn bind(&self, ids: &[NodeId]) -> Result<Bound> {
        Bound::from_ids(ids, self.config.hidden)
    }

    /// Source windows for this configuration.
    pub fn source_windows(&self, source: &Wave) -> Result<Vec<WindowMatrix>> {
        if source.channels() != self.config.source_channels {
            return Err(Error::ShapeMismatch {
                op: "translate",
                detail: format!(
                    "model expects {} source channels, wave has {}",
                    self.config.source_channels,
                    source.channels()
                ),
            });
        }
        segment(source, self.config.encoder_width, self.config.pad_policy)
    }

    /// `r = tanh(flatten(window) A + b)`.
    pub fn repr_forward(&self, tape: &mut Tape, b: &Bound, window: &WindowMatrix) -> Result<NodeId> {
        let (d, w) = (self.config.source_channels, self.config.encoder_width);
        if window.channels() != d || window.width() != w {
            return Err(Error::ShapeMismatch {
                op: "repr",
                detail: format!(
                    "window is {}x{}, model expects {d}x{w}",
                    window.channels(),
                    window.width()
                ),
            });
        }
        let x = tape.constant(Array2::row(window.values().to_vec()));
        let pre = tape.affine(x, b.repr_w, b.repr_b)?;
        tape.tanh(pre)
    }

    /// Affine map from a decoder representation to a flattened target window
    /// (`1 x d_y*w_dec`, row-major over channel then step).
    pub fn inv_repr_forward(&self, tape: &mut Tape, b: &Bound, r_dec: NodeId) -> Result<NodeId> {
        let cols = tape.value(r_dec).cols();
        if cols != self.config.hidden {
            return Err(Error::ShapeMismatch {
                op: "inv-repr",
                detail: format!("representation has {cols} entries, expected {}", self.config.hidden),
            });
        }
        tape.affine(r_dec, b.inv_w, b.inv_b)
    }

    fn zero_state(&self, tape: &mut Tape) -> LstmState {
        let h = self.config.hidden;
        LstmState {
            h: tape.constant(Array2::zeros(1, h)),
            c: tape.constant(Array2::zeros(1, h)),
        }
    }

    pub fn encode(&self, tape: &mut Tape, b: &Bound, windows: &[WindowMatrix]) -> Result<EncoderMemory> {
        if windows.is_empty() {
            return Err(Error::InvalidArgument("encoder needs at least one window".into()));
        }
        let mut state = self.zero_state(tape);
        let mut states = Vec::with_capacity(windows.len());
        for window in windows {
            let r = self.repr_forward(tape, b, window)?;
            state = b.encoder.step(tape, r, state)?;
            states.push(state);
        }
        let hs: Vec<NodeId> = states.iter().map(|s| s.h).collect();
        let stacked = tape.concat_rows(&hs)?;
        let stacked_t = tape.transpose(stacked)?;
        Ok(EncoderMemory {
            states,
            stacked,
            stacked_t,
        })
    }

    /// Returns `(context, weights)` for one decoder state.
    pub fn attend(
        &self,
        tape: &mut Tape,
        b: &Bound,
        h_dec: NodeId,
        memory: &EncoderMemory,
    ) -> Result<(NodeId, NodeId)> {
        let projected = tape.matmul(h_dec, b.w_a)?;
        let scores = tape.matmul(projected, memory.stacked_t)?;
        let weights = tape.softmax_row(scores)?;
        let context = tape.matmul(weights, memory.stacked)?;
        Ok((context, weights))
    }

    pub fn decode_step(
        &self,
        tape: &mut Tape,
        b: &Bound,
        state: LstmState,
        prev_repr: Option<NodeId>,
        memory: &EncoderMemory,
    ) -> Result<DecodeStep> {
        let input = match (self.config.input_feeding, prev_repr) {
            (true, Some(r)) => r,
            _ => tape.constant(Array2::zeros(1, self.config.hidden)),
        };
        let state = b.decoder.step(tape, input, state)?;
        let (context, weights) = self.attend(tape, b, state.h, memory)?;
        let joined = tape.concat_cols(&[state.h, context])?;
        let pre = tape.affine(joined, b.head_w, b.head_b)?;
        let repr = tape.tanh(pre)?;
        Ok(DecodeStep {
            state,
            repr,
            context,
            weights,
        })
    }

    pub fn forward(&self, tape: &mut Tape, b: &Bound, source: &Wave) -> Result<ForwardPass> {
        let windows = self.source_windows(source)?;
        let memory = self.encode(tape, b, &windows)?;
        let mut state = memory.last();
        let mut prev = None;
        let mut steps = Vec::with_capacity(self.config.decoder_steps);
        let mut outputs = Vec::with_capacity(self.config.decoder_steps);
        for _ in 0..self.config.decoder_steps {
            let step = self.decode_step(tape, b, state, prev, &memory)?;
            outputs.push(self.inv_repr_forward(tape, b, step.repr)?);
            state = step.state;
            prev = Some(step.repr);
            steps.push(step);
        }
        let output = tape.concat_cols(&outputs)?;
        Ok(ForwardPass { output, steps })
    }

    /// Free-running translation of one source wave.
    pub fn translate(&self, source: &Wave) -> Result<(Wave, AttentionTrace)> {
        let mut tape = Tape::new();
        let ids = self.params.bind_constants(&mut tape);
        let b = self.bind(&ids)?;
        let pass = self.forward(&mut tape, &b, source)?;
        let wave = self.row_to_wave(tape.value(pass.output))?;

        let t = pass.steps.len();
        let s = tape.value(pass.steps[0].weights).cols();
        let mut weights = Vec::with_capacity(t * s);
        let mut contexts = Vec::with_capacity(t * self.config.hidden);
        for step in &pass.steps {
            weights.extend_from_slice(tape.value(step.weights).data());
            contexts.extend_from_slice(tape.value(step.context).data());
        }
        let trace = AttentionTrace {
            weights: Array2::new(t, s, weights)?,
            contexts: Array2::new(t, self.config.hidden, contexts)?,
        };
        Ok((wave.with_sample_period(source.sample_period()), trace))
    }
}

impl Network for Wave2Wave {
    fn params(&self) -> &ParamSet {
        &self.params
    }

    fn params_mut(&mut self) -> &mut ParamSet {
        &mut self.params
    }

    fn predict_row(&self, tape: &mut Tape, ids: &[NodeId], source: &Wave) -> Result<NodeId> {
        let b = self.bind(ids)?;
        Ok(self.forward(tape, &b, source)?.output)
    }

    fn target_row(&self, target: &Wave) -> Result<Array2> {
        windowed_target_row(
            target,
            self.config.target_channels,
            self.config.decoder_width,
            self.config.decoder_steps,
            self.config.pad_policy,
        )
    }

    fn row_to_wave(&self, row: &Array2) -> Result<Wave> {
        rows_to_wave(
            row,
            self.config.target_channels,
            self.config.decoder_width,
            self.config.decoder_steps,
        )
    }
}
