use crate::error::{Error, Result};
use crate::signal::Wave;

/// Subsamples every `v`-th step for each `v`, truncates the results to the
/// shortest, and stacks them along the channel axis in `steps` order.
pub fn temporal_pyramid(wave: &Wave, steps: &[usize]) -> Result<Wave> {
    if steps.is_empty() {
        return Err(Error::InvalidArgument(
            "temporal pyramid needs at least one step".into(),
        ));
    }
    if steps.contains(&0) {
        return Err(Error::InvalidArgument("temporal step must be at least 1".into()));
    }
    let len = steps.iter().map(|&v| wave.steps().div_ceil(v)).min().unwrap_or(0);
    let mut samples = Vec::with_capacity(wave.channels() * steps.len() * len);
    for &v in steps {
        for c in 0..wave.channels() {
            samples.extend(wave.channel(c).iter().step_by(v).take(len));
        }
    }
    let period = wave.sample_period();
    Ok(Wave::new(wave.channels() * steps.len(), len, samples)?.with_sample_period(period))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_step_is_identity() {
        let wave = Wave::from_channels(&[vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]]).unwrap();
        assert_eq!(temporal_pyramid(&wave, &[1]).unwrap(), wave);
    }

    #[test]
    fn even_steps() {
        let wave = Wave::mono((0..8).map(f64::from).collect()).unwrap();
        let out = temporal_pyramid(&wave, &[2]).unwrap();
        assert_eq!(out.samples(), &[0.0, 2.0, 4.0, 6.0]);
    }

    #[test]
    fn multiple_steps_multiply_channels() {
        let wave = Wave::from_channels(&[(0..24).map(f64::from).collect(), vec![1.0; 24]]).unwrap();
        let out = temporal_pyramid(&wave, &[2, 3, 4]).unwrap();
        assert_eq!(out.channels(), 6);
        assert_eq!(out.steps(), 6);
        assert_eq!(out.channel(2), &[0.0, 3.0, 6.0, 9.0, 12.0, 15.0]);
    }

    #[test]
    fn empty_steps_rejected() {
        assert!(temporal_pyramid(&Wave::mono(vec![1.0]).unwrap(), &[]).is_err());
    }
}
