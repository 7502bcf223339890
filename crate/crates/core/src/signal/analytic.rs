//! In-phase / quadrature split through the analytic signal.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::signal::Wave;

#[derive(Clone, Debug, PartialEq)]
pub struct IqComponents {
    pub in_phase: Wave,
    pub quadrature: Wave,
    pub magnitude: Wave,
}

impl IqComponents {
    pub fn into_array(self) -> [Wave; 3] {
        [self.in_phase, self.quadrature, self.magnitude]
    }
}

/// Imaginary part of the analytic signal of `x` (its discrete Hilbert
/// transform), computed on a zero-padded power-of-two grid.
pub fn hilbert(x: &[f64]) -> Vec<f64> {
    let n = x.len().next_power_of_two();
    let mut buf: Vec<Complex<f64>> = x
        .iter()
        .map(|&v| Complex::new(v, 0.0))
        .chain(std::iter::repeat(Complex::new(0.0, 0.0)))
        .take(n)
        .collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut buf);

    // Keep DC and Nyquist, double positive frequencies, zero negative ones.
    let half = n / 2;
    for (k, v) in buf.iter_mut().enumerate() {
        let gain = if k == 0 || (n.is_multiple_of(2) && k == half) {
            1.0
        } else if k < half || (n % 2 == 1 && k <= half) {
            2.0
        } else {
            0.0
        };
        *v *= gain;
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    buf[..x.len()].iter().map(|v| v.im * scale).collect()
}

pub fn iq_decompose(wave: &Wave) -> Result<IqComponents> {
    if wave.steps() < 2 {
        return Err(Error::InvalidArgument(
            "I/Q decomposition needs at least 2 steps".into(),
        ));
    }
    let mut quad = Vec::with_capacity(wave.samples().len());
    for c in 0..wave.channels() {
        quad.extend(hilbert(wave.channel(c)));
    }
    let magnitude: Vec<f64> = wave.samples().iter().zip(&quad).map(|(i, q)| i.hypot(*q)).collect();
    let build = |data: Vec<f64>| -> Result<Wave> {
        Ok(Wave::new(wave.channels(), wave.steps(), data)?.with_sample_period(wave.sample_period()))
    };
    Ok(IqComponents {
        in_phase: wave.clone(),
        quadrature: build(quad)?,
        magnitude: build(magnitude)?,
    })
}
