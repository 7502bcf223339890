use crate::error::{Error, Result};

/// A `channels x steps` real-valued time series, stored channel-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Wave {
    channels: usize,
    steps: usize,
    samples: Vec<f64>,
    sample_period: Option<f64>,
}

impl Wave {
    pub fn new(channels: usize, steps: usize, samples: Vec<f64>) -> Result<Self> {
        if channels == 0 || steps == 0 {
            return Err(Error::InvalidArgument(format!(
                "wave needs at least one channel and one step, got {channels}x{steps}"
            )));
        }
        if samples.len() != channels * steps {
            return Err(Error::ShapeMismatch {
                op: "wave",
                detail: format!(
                    "{channels}x{steps} needs {} samples, got {}",
                    channels * steps,
                    samples.len()
                ),
            });
        }
        if let Some(i) = samples.iter().position(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite sample at channel {}, step {}",
                i / steps,
                i % steps
            )));
        }
        Ok(Self {
            channels,
            steps,
            samples,
            sample_period: None,
        })
    }

    pub fn from_channels(channels: &[Vec<f64>]) -> Result<Self> {
        let steps = channels.first().map_or(0, Vec::len);
        if channels.iter().any(|c| c.len() != steps) {
            return Err(Error::ShapeMismatch {
                op: "wave",
                detail: "channels have different lengths".into(),
            });
        }
        Self::new(channels.len(), steps, channels.concat())
    }

    pub fn mono(samples: Vec<f64>) -> Result<Self> {
        let steps = samples.len();
        Self::new(1, steps, samples)
    }

    pub fn zeros(channels: usize, steps: usize) -> Result<Self> {
        Self::new(channels, steps, vec![0.0; channels * steps])
    }

    pub fn with_sample_period(mut self, seconds: Option<f64>) -> Self {
        self.sample_period = seconds;
        self
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn sample_period(&self) -> Option<f64> {
        self.sample_period
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn channel(&self, c: usize) -> &[f64] {
        &self.samples[c * self.steps..(c + 1) * self.steps]
    }

    #[inline]
    pub fn at(&self, channel: usize, step: usize) -> f64 {
        self.samples[channel * self.steps + step]
    }

    /// Builds a wave from a subset of this wave's channels, in the given order.
    pub fn select_channels(&self, indices: &[usize]) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.channels) {
            return Err(Error::InvalidArgument(format!(
                "channel {bad} out of range for {} channels",
                self.channels
            )));
        }
        let data: Vec<f64> = indices.iter().flat_map(|&i| self.channel(i).to_vec()).collect();
        Ok(Self::new(indices.len(), self.steps, data)?.with_sample_period(self.sample_period))
    }

    /// Stacks waves of equal length along the channel axis.
    pub fn stack(waves: &[Wave]) -> Result<Self> {
        let first = waves
            .first()
            .ok_or_else(|| Error::InvalidArgument("nothing to stack".into()))?;
        if waves.iter().any(|w| w.steps != first.steps) {
            return Err(Error::ShapeMismatch {
                op: "stack",
                detail: "waves have different lengths".into(),
            });
        }
        let channels = waves.iter().map(|w| w.channels).sum();
        let data = waves.iter().flat_map(|w| w.samples.iter().copied()).collect();
        Ok(Self::new(channels, first.steps, data)?.with_sample_period(first.sample_period))
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Ok(
            Self::new(self.channels, self.steps, self.samples.iter().map(|&x| f(x)).collect())?
                .with_sample_period(self.sample_period),
        )
    }
}
