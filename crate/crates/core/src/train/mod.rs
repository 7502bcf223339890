//! Losses, the optimization loop, and the training methods.

mod backtranslation;
mod baselines;
mod config;
mod dataset;
mod fit;
mod gradcheck;
mod iterative;
pub mod loss;
mod registry;
mod standard;

pub use backtranslation::train_iterative_backtranslation;
pub use baselines::{train_simple_encoder_decoder, train_simple_seq2seq};
pub use config::{TrainConfig, DEFAULT_BATCH_THRESHOLD};
pub use dataset::{Dataset, Split, WavePair};
pub use fit::{dataset_loss, fit, TrainReport};
pub use gradcheck::{model_grad_check, random_pair};
pub use iterative::{train_iterative, train_iterative_seeded, IterativeModel};
pub use loss::{gaussian_nll_and_perplexity, mean_squared_error, squared_loss};
pub use registry::{MethodRegistry, TrainJob, TrainMethod, Trained, Translation, Translator};
pub use standard::{model_config_for, train_wave2wave};
