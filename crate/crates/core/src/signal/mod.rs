//! Windowing, envelopes, and channel reduction for multichannel waves.

mod affinity;
mod analytic;
mod envelope;
mod pyramid;
mod wave;
mod window;

pub use affinity::{
    affinity_propagation, channel_similarity, median_preference, reduce_channels, AffinityConfig, ClusterResult,
    CONVERGENCE_ITERATIONS,
};
pub use analytic::{hilbert, iq_decompose, IqComponents};
pub use envelope::{rms_envelope, window_steps_for};
pub use pyramid::temporal_pyramid;
pub use wave::Wave;
pub use window::{assemble, crop_or_pad, segment, PadPolicy, WindowMatrix};
