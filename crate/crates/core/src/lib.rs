//! Signal-to-signal translation with windowed attention seq2seq networks.
//!
//! Waves are cut into fixed-width windows, each window is embedded by a
//! trainable representation, and an LSTM encoder-decoder with global
//! attention produces output windows that a trainable inverse
//! representation maps back to samples.
//!
//! - [`tensor`]: a reverse-mode autodiff tape over dense matrices, Adam, and
//!   finite-difference gradient checks.
//! - [`signal`]: windowing, RMS envelopes, analytic-signal decomposition,
//!   temporal pyramids, and affinity-propagation channel reduction.
//! - [`model`]: the wave2wave network and two baselines.
//! - [`train`]: losses, the training loop, per-channel and back-translation
//!   training, and the named method registry.
//! - [`data`]: generators, dataset splitting, and file formats.

pub mod data;
pub mod error;
pub mod model;
pub mod signal;
pub mod tensor;
pub mod train;

pub use error::{Error, Result};
