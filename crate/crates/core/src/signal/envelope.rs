use crate::error::{Error, Result};
use crate::signal::Wave;

/// Block RMS envelope. Each non-overlapping block of `window_steps` samples is
/// replaced by its root-mean-square value; the last block may be shorter.
pub fn rms_envelope(wave: &Wave, window_steps: usize) -> Result<Wave> {
    if window_steps == 0 {
        return Err(Error::InvalidArgument("RMS window must be at least 1 step".into()));
    }
    let mut out = Vec::with_capacity(wave.samples().len());
    for c in 0..wave.channels() {
        for block in wave.channel(c).chunks(window_steps) {
            let rms = (block.iter().map(|x| x * x).sum::<f64>() / block.len() as f64).sqrt();
            out.extend(std::iter::repeat_n(rms, block.len()));
        }
    }
    Ok(Wave::new(wave.channels(), wave.steps(), out)?.with_sample_period(wave.sample_period()))
}

/// Number of steps covering `window_seconds` at the given sample period.
pub fn window_steps_for(window_seconds: f64, sample_period: f64) -> Result<usize> {
    if !(window_seconds > 0.0 && sample_period > 0.0) {
        return Err(Error::InvalidArgument(
            "window and sample period must be positive".into(),
        ));
    }
    Ok(((window_seconds / sample_period).round() as usize).max(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_signal() {
        let wave = Wave::mono(vec![-2.5; 37]).unwrap();
        let env = rms_envelope(&wave, 5).unwrap();
        assert!(env.samples().iter().all(|&x| (x - 2.5).abs() < 1e-15));
        assert_eq!(env.steps(), 37);
    }

    #[test]
    fn sine_over_whole_periods() {
        let amp = 3.0;
        let period = 40;
        let wave = Wave::mono(
            (0..400)
                .map(|t| amp * (2.0 * PI * t as f64 / period as f64).sin())
                .collect(),
        )
        .unwrap();
        let env = rms_envelope(&wave, 2 * period).unwrap();
        for &x in env.samples() {
            assert!((x - amp / 2f64.sqrt()).abs() < 1e-3);
        }
    }

    #[test]
    fn two_hundred_ms_at_ten_ms() {
        assert_eq!(window_steps_for(0.2, 0.01).unwrap(), 20);
    }

    #[test]
    fn zero_window_rejected() {
        assert!(rms_envelope(&Wave::mono(vec![1.0]).unwrap(), 0).is_err());
    }
}
