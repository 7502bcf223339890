use serde::{Deserialize, Serialize};

use crate::error::{shape_err, Result};
use crate::tensor::Array2;

/// Adam hyper-parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdamConfig {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl Default for AdamConfig {
    fn default() -> Self {
        Self {
            learning_rate: 1e-3,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }
}

/// Moment estimates for one parameter set.
#[derive(Clone, Debug)]
pub struct AdamState {
    config: AdamConfig,
    step: u64,
    first: Vec<Array2>,
    second: Vec<Array2>,
}

impl AdamState {
    pub fn new(config: AdamConfig, params: &[Array2]) -> Self {
        let zeros = |p: &Array2| Array2::zeros(p.rows(), p.cols());
        Self {
            config,
            step: 0,
            first: params.iter().map(zeros).collect(),
            second: params.iter().map(zeros).collect(),
        }
    }

    pub fn step_count(&self) -> u64 {
        self.step
    }

    pub fn config(&self) -> &AdamConfig {
        &self.config
    }

    /// Applies one bias-corrected Adam update to `params` in place.
    pub fn step(&mut self, params: &mut [Array2], grads: &[Array2]) -> Result<()> {
        if params.len() != self.first.len() || grads.len() != params.len() {
            return shape_err(
                "adam",
                format!(
                    "{} moment slots, {} params, {} grads",
                    self.first.len(),
                    params.len(),
                    grads.len()
                ),
            );
        }
        for (i, (p, g)) in params.iter().zip(grads).enumerate() {
            if p.shape() != g.shape() || p.shape() != self.first[i].shape() {
                return shape_err(
                    "adam",
                    format!(
                        "parameter {i}: param {:?}, grad {:?}, moments {:?}",
                        p.shape(),
                        g.shape(),
                        self.first[i].shape()
                    ),
                );
            }
        }

        self.step += 1;
        let AdamConfig {
            learning_rate,
            beta1,
            beta2,
            epsilon,
        } = self.config;
        let t = self.step as i32;
        let bias1 = 1.0 - beta1.powi(t);
        let bias2 = 1.0 - beta2.powi(t);

        for ((p, g), (m, v)) in params
            .iter_mut()
            .zip(grads)
            .zip(self.first.iter_mut().zip(self.second.iter_mut()))
        {
            let (p, g, m, v) = (p.data_mut(), g.data(), m.data_mut(), v.data_mut());
            for j in 0..p.len() {
                m[j] = beta1 * m[j] + (1.0 - beta1) * g[j];
                v[j] = beta2 * v[j] + (1.0 - beta2) * g[j] * g[j];
                let m_hat = m[j] / bias1;
                let v_hat = v[j] / bias2;
                p[j] -= learning_rate * m_hat / (v_hat.sqrt() + epsilon);
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_gradient_is_identity() {
        let mut params = vec![Array2::row(vec![0.3, -1.2]), Array2::scalar(5.0)];
        let before = params.clone();
        let grads = vec![Array2::zeros(1, 2), Array2::zeros(1, 1)];
        let mut adam = AdamState::new(AdamConfig::default(), &params);
        for _ in 0..5 {
            adam.step(&mut params, &grads).unwrap();
        }
        assert_eq!(params, before);
        assert_eq!(adam.step_count(), 5);
    }

    #[test]
    fn first_step_moves_by_learning_rate() {
        // m_hat = v_hat = 1 after bias correction, so the step is lr / (1 + eps).
        let cfg = AdamConfig {
            learning_rate: 0.1,
            ..AdamConfig::default()
        };
        let mut params = vec![Array2::scalar(0.0)];
        let mut adam = AdamState::new(cfg, &params);
        adam.step(&mut params, &[Array2::scalar(1.0)]).unwrap();
        let expected = -0.1 / (1.0 + 1e-8);
        assert!((params[0].item().unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn constant_positive_gradient_decreases_monotonically() {
        let mut params = vec![Array2::scalar(1.0)];
        let mut adam = AdamState::new(AdamConfig::default(), &params);
        let mut prev = 1.0;
        for _ in 0..2 {
            adam.step(&mut params, &[Array2::scalar(1.0)]).unwrap();
            let now = params[0].item().unwrap();
            assert!(now < prev);
            prev = now;
        }
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let mut params = vec![Array2::zeros(2, 2)];
        let mut adam = AdamState::new(AdamConfig::default(), &params);
        assert!(adam.step(&mut params, &[Array2::zeros(1, 4)]).is_err());
        assert_eq!(adam.step_count(), 0);
    }
}
