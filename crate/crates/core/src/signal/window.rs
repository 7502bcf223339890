//! Fixed-width, non-overlapping windows over a wave.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::Wave;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PadPolicy {
    /// Keep a trailing partial window, filled with zeros.
    #[default]
    ZeroPad,
    /// Drop a trailing partial window.
    Truncate,
}

impl PadPolicy {
    pub fn window_count(self, steps: usize, width: usize) -> usize {
        match self {
            PadPolicy::ZeroPad => steps.div_ceil(width),
            PadPolicy::Truncate => steps / width,
        }
    }
}

impl std::str::FromStr for PadPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero-pad" => Ok(Self::ZeroPad),
            "truncate" => Ok(Self::Truncate),
            other => Err(Error::InvalidArgument(format!("unknown pad policy `{other}`"))),
        }
    }
}

impl std::fmt::Display for PadPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PadPolicy::ZeroPad => "zero-pad",
            PadPolicy::Truncate => "truncate",
        })
    }
}

/// A `channels x width` slice of a wave. `origin` is the zero-based window
/// index, so the window covers steps `origin*width .. origin*width + width`.
#[derive(Clone, Debug, PartialEq)]
pub struct WindowMatrix {
    channels: usize,
    width: usize,
    values: Vec<f64>,
    origin: usize,
}

impl WindowMatrix {
    pub fn new(channels: usize, width: usize, values: Vec<f64>, origin: usize) -> Result<Self> {
        if values.len() != channels * width {
            return Err(Error::ShapeMismatch {
                op: "window",
                detail: format!(
                    "{channels}x{width} window needs {} values, got {}",
                    channels * width,
                    values.len()
                ),
            });
        }
        Ok(Self {
            channels,
            width,
            values,
            origin,
        })
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn origin(&self) -> usize {
        self.origin
    }

    /// Row-major over (channel, step).
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, channel: usize, step: usize) -> f64 {
        self.values[channel * self.width + step]
    }

    /// First step of the wave covered by this window.
    pub fn first_step(&self) -> usize {
        self.origin * self.width
    }
}

pub fn segment(wave: &Wave, width: usize, pad: PadPolicy) -> Result<Vec<WindowMatrix>> {
    if width == 0 {
        return Err(Error::InvalidArgument("window width must be at least 1".into()));
    }
    let count = pad.window_count(wave.steps(), width);
    if count == 0 {
        return Err(Error::InvalidArgument(format!(
            "window width {width} exceeds wave length {} under truncation; no windows",
            wave.steps()
        )));
    }
    let d = wave.channels();
    (0..count)
        .map(|s| {
            let start = s * width;
            let mut values = vec![0.0; d * width];
            for c in 0..d {
                let src = wave.channel(c);
                let end = (start + width).min(src.len());
                values[c * width..c * width + (end - start)].copy_from_slice(&src[start..end]);
            }
            WindowMatrix::new(d, width, values, s)
        })
        .collect()
}

/// Concatenates windows in order and truncates to `original_steps`.
pub fn assemble(windows: &[WindowMatrix], original_steps: usize) -> Result<Wave> {
    let first = windows
        .first()
        .ok_or_else(|| Error::InvalidArgument("no windows to assemble".into()))?;
    let (d, w) = (first.channels, first.width);
    if let Some(bad) = windows.iter().find(|x| x.channels != d || x.width != w) {
        return Err(Error::ShapeMismatch {
            op: "assemble",
            detail: format!(
                "window {} is {}x{}, expected {d}x{w}",
                bad.origin, bad.channels, bad.width
            ),
        });
    }
    for (i, win) in windows.iter().enumerate() {
        if win.origin != i {
            return Err(Error::InvalidArgument(format!(
                "window at position {i} has origin {}",
                win.origin
            )));
        }
    }
    let total = windows.len() * w;
    if original_steps == 0 || original_steps > total {
        return Err(Error::InvalidArgument(format!(
            "cannot assemble {original_steps} steps from {} windows of width {w}",
            windows.len()
        )));
    }
    let mut samples = Vec::with_capacity(d * original_steps);
    for c in 0..d {
        let mut channel: Vec<f64> = windows
            .iter()
            .flat_map(|win| win.values[c * w..(c + 1) * w].iter().copied())
            .collect();
        channel.truncate(original_steps);
        samples.extend(channel);
    }
    Wave::new(d, original_steps, samples)
}

/// Truncates, or zero-pads at the tail, every channel to `target_steps`.
pub fn crop_or_pad(wave: &Wave, target_steps: usize) -> Result<Wave> {
    if target_steps == 0 {
        return Err(Error::InvalidArgument("target length must be at least 1".into()));
    }
    let mut samples = Vec::with_capacity(wave.channels() * target_steps);
    for c in 0..wave.channels() {
        let src = wave.channel(c);
        let keep = src.len().min(target_steps);
        samples.extend_from_slice(&src[..keep]);
        samples.extend(std::iter::repeat_n(0.0, target_steps - keep));
    }
    Ok(Wave::new(wave.channels(), target_steps, samples)?.with_sample_period(wave.sample_period()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn values(ws: &[WindowMatrix]) -> Vec<Vec<f64>> {
        ws.iter().map(|w| w.values().to_vec()).collect()
    }

    #[test]
    fn exact_partition() {
        let wave = Wave::mono(vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let ws = segment(&wave, 2, PadPolicy::ZeroPad).unwrap();
        assert_eq!(values(&ws), vec![vec![1.0, 2.0], vec![3.0, 4.0]]);
        assert_eq!(ws[1].first_step(), 2);
    }

    #[test]
    fn zero_pad_keeps_partial_window() {
        let wave = Wave::mono(vec![1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        let ws = segment(&wave, 2, PadPolicy::ZeroPad).unwrap();
        assert_eq!(ws.len(), 3);
        assert_eq!(ws[2].values(), &[5.0, 0.0]);
        let ws = segment(&wave, 2, PadPolicy::Truncate).unwrap();
        assert_eq!(ws.len(), 2);
    }

    #[test]
    fn figure_scale_window_count() {
        let wave = Wave::zeros(1, 10_000).unwrap();
        let ws = segment(&wave, 2000, PadPolicy::ZeroPad).unwrap();
        assert_eq!(ws.len(), 5);
        let back = assemble(&ws, 10_000).unwrap();
        assert_eq!(back.steps(), 10_000);
    }

    #[test]
    fn truncate_wider_than_wave_is_an_error() {
        let wave = Wave::mono(vec![1.0, 2.0, 3.0]).unwrap();
        assert!(segment(&wave, 4, PadPolicy::Truncate).is_err());
        assert_eq!(segment(&wave, 4, PadPolicy::ZeroPad).unwrap().len(), 1);
        assert!(segment(&wave, 0, PadPolicy::ZeroPad).is_err());
    }

    #[test]
    fn assemble_drops_padding() {
        let ws = vec![
            WindowMatrix::new(1, 2, vec![1.0, 2.0], 0).unwrap(),
            WindowMatrix::new(1, 2, vec![3.0, 0.0], 1).unwrap(),
        ];
        assert_eq!(assemble(&ws, 3).unwrap().samples(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn assemble_rejects_mixed_shapes() {
        let ws = vec![
            WindowMatrix::new(1, 2, vec![1.0, 2.0], 0).unwrap(),
            WindowMatrix::new(1, 3, vec![3.0, 0.0, 1.0], 1).unwrap(),
        ];
        assert!(assemble(&ws, 4).is_err());
    }

    #[test]
    fn multichannel_layout() {
        let wave = Wave::from_channels(&[vec![1.0, 2.0, 3.0, 4.0], vec![5.0, 6.0, 7.0, 8.0]]).unwrap();
        let ws = segment(&wave, 2, PadPolicy::ZeroPad).unwrap();
        assert_eq!(ws[1].values(), &[3.0, 4.0, 7.0, 8.0]);
        assert_eq!(ws[1].get(1, 0), 7.0);
    }

    #[test]
    fn crop_and_pad() {
        let wave = Wave::zeros(1, 12_000).unwrap();
        assert_eq!(crop_or_pad(&wave, 10_000).unwrap().steps(), 10_000);
        let short = Wave::mono(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(crop_or_pad(&short, 3).unwrap(), short);
        assert_eq!(crop_or_pad(&short, 5).unwrap().samples(), &[1.0, 2.0, 3.0, 0.0, 0.0]);
    }
}
