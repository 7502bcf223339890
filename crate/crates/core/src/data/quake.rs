//! Synthetic stand-in for paired long-period and broadband ground motions.
//!
//! A broadband trace is a Gaussian envelope modulating a long-period carrier
//! plus a high-frequency burst centred on the envelope peak. Its long-period counterpart is the
//! same trace with every spectral bin at or above the cutoff frequency
//! removed. Both are then optionally reduced to RMS envelopes of the
//! analytic magnitude.

use std::f64::consts::PI;

use rand::Rng;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::{iq_decompose, rms_envelope, window_steps_for, Wave};
use crate::tensor::init::prng;
use crate::train::{Dataset, Split, WavePair};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuakeSpec {
    pub num_pairs: usize,
    pub steps: usize,
    /// Seconds per step.
    pub sample_period: f64,
    /// Periods at or below this many seconds are absent from the source.
    pub cutoff_period: f64,
    /// Carrier period range in seconds; must exceed the cutoff.
    pub low_period: (f64, f64),
    pub high_period: (f64, f64),
    pub high_components: usize,
    /// High-frequency amplitude relative to the carrier.
    pub high_ratio: f64,
    /// Time constant in seconds of the high-frequency burst envelope.
    pub high_spread: f64,
    /// Envelope peak time as a fraction of the trace.
    pub peak_at: (f64, f64),
    /// Envelope time constant in seconds.
    pub spread: (f64, f64),
    pub amplitude: (f64, f64),
    /// RMS block length in seconds; `None` keeps the raw traces.
    pub rms_window: Option<f64>,
    pub seed: u64,
}

impl Default for QuakeSpec {
    fn default() -> Self {
        Self {
            num_pairs: 128,
            steps: 1000,
            sample_period: 0.01,
            cutoff_period: 1.0,
            low_period: (1.5, 3.0),
            high_period: (0.05, 0.5),
            high_components: 8,
            high_ratio: 0.8,
            high_spread: 0.3,
            peak_at: (0.3, 0.5),
            spread: (1.5, 2.5),
            amplitude: (0.5, 1.5),
            rms_window: Some(0.2),
            seed: 0,
        }
    }
}

impl QuakeSpec {
    pub fn validate(&self) -> Result<()> {
        let ordered = |(lo, hi): (f64, f64)| lo.is_finite() && hi.is_finite() && 0.0 < lo && lo <= hi;
        let ok = self.num_pairs > 0
            && self.steps >= 2
            && self.sample_period > 0.0
            && self.cutoff_period > 2.0 * self.sample_period
            && ordered(self.low_period)
            && self.low_period.0 > self.cutoff_period
            && ordered(self.high_period)
            && self.high_period.1 < self.cutoff_period
            && self.high_period.0 >= 2.0 * self.sample_period
            && self.high_ratio >= 0.0
            && self.high_spread > 0.0
            && ordered(self.spread)
            && ordered(self.amplitude)
            && ordered(self.peak_at)
            && self.peak_at.1 < 1.0
            && self.rms_window.is_none_or(|w| w > 0.0);
        if !ok {
            return Err(Error::InvalidArgument(format!("invalid quake spec {self:?}")));
        }
        Ok(())
    }

    /// Index of the first discarded DFT bin for a trace of `n` steps.
    pub fn cutoff_bin(&self, n: usize) -> usize {
        (n as f64 * self.sample_period / self.cutoff_period).ceil() as usize
    }
}

fn draw(rng: &mut impl Rng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.random_range(lo..hi)
    }
}

/// Zeroes every DFT bin whose frequency index is at least `cutoff`.
pub fn low_pass(x: &[f64], cutoff: usize) -> Vec<f64> {
    let n = x.len();
    let mut planner = FftPlanner::new();
    let mut buf: Vec<Complex<f64>> = x.iter().map(|&v| Complex::new(v, 0.0)).collect();
    planner.plan_fft_forward(n).process(&mut buf);
    for (k, v) in buf.iter_mut().enumerate() {
        let freq = k.min(n - k);
        if freq >= cutoff {
            *v = Complex::new(0.0, 0.0);
        }
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    buf.iter().map(|c| c.re / n as f64).collect()
}

fn envelope(t: f64, peak: f64, spread: f64) -> f64 {
    let u = (t - peak) / spread;
    (-u * u).exp()
}

/// Raw broadband trace and its low-passed counterpart.
fn raw_pair(spec: &QuakeSpec, rng: &mut impl Rng) -> (Vec<f64>, Vec<f64>) {
    let dt = spec.sample_period;
    let n = spec.steps;
    let duration = n as f64 * dt;
    let peak = draw(rng, spec.peak_at) * duration;
    let spread = draw(rng, spec.spread);
    let amp = draw(rng, spec.amplitude);
    let carrier_period = draw(rng, spec.low_period);
    let carrier_phase = rng.random_range(0.0..2.0 * PI);
    // High-frequency components arrive in phase at the envelope peak.
    let highs: Vec<(f64, f64)> = (0..spec.high_components)
        .map(|_| {
            let p = draw(rng, spec.high_period);
            (p, PI / 2.0 - 2.0 * PI * peak / p)
        })
        .collect();
    let high_amp = if highs.is_empty() {
        0.0
    } else {
        spec.high_ratio / (highs.len() as f64).sqrt()
    };
    let broadband: Vec<f64> = (0..n)
        .map(|i| {
            let t = i as f64 * dt;
            let low = (2.0 * PI * t / carrier_period + carrier_phase).sin();
            let high: f64 = highs.iter().map(|(p, phi)| (2.0 * PI * t / p + phi).sin()).sum();
            let burst = envelope(t, peak, spec.high_spread);
            amp * envelope(t, peak, spread) * (low + high_amp * burst * high)
        })
        .collect();
    let long = low_pass(&broadband, spec.cutoff_bin(n));
    (long, broadband)
}

fn envelope_of(x: Vec<f64>, spec: &QuakeSpec, block: usize) -> Result<Wave> {
    let wave = Wave::mono(x)?.with_sample_period(Some(spec.sample_period));
    let magnitude = iq_decompose(&wave)?.magnitude;
    rms_envelope(&magnitude, block)
}

/// Long-period source and broadband target pairs.
pub fn generate_quake_like(spec: &QuakeSpec) -> Result<Dataset> {
    spec.validate()?;
    let mut rng = prng(spec.seed);
    let block = spec
        .rms_window
        .map(|w| window_steps_for(w, spec.sample_period))
        .transpose()?;
    let mut pairs = Vec::with_capacity(spec.num_pairs);
    for _ in 0..spec.num_pairs {
        let (long, broad) = raw_pair(spec, &mut rng);
        let pair = match block {
            Some(b) => WavePair::new(envelope_of(long, spec, b)?, envelope_of(broad, spec, b)?),
            None => WavePair::new(
                Wave::mono(long)?.with_sample_period(Some(spec.sample_period)),
                Wave::mono(broad)?.with_sample_period(Some(spec.sample_period)),
            ),
        };
        pairs.push(pair);
    }
    Dataset::new(pairs, Split::Train)
}
