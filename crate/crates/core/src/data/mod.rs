//! Data generation, splitting, and file formats.

mod manifest;
mod modelfile;
mod quake;
mod report;
mod split;
mod toy;
mod wavefile;

pub use manifest::{resolve, Manifest};
pub use modelfile::{load_model, model_to_string, parse_model, save_model, ModelRecord, MODEL_FILE_VERSION};
pub use quake::{generate_quake_like, low_pass, QuakeSpec};
pub use report::{attention_csv, timing_csv, train_history_csv, train_summary_csv, EvalReport, PairScore};
pub use split::{split, split_counts, split_indices};
pub use toy::{generate_toy, ToySpec};
pub use wavefile::{default_channel_names, load_wave, parse_wave, save_wave, save_wave_named, wave_to_string};
