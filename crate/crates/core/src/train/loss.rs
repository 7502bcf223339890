use std::f64::consts::PI;

use crate::error::{shape_err, Error, Result};
use crate::signal::Wave;
use crate::tensor::{Array2, NodeId, Tape};

/// Mean squared difference over every scalar of every prediction/target pair.
pub fn squared_loss(tape: &mut Tape, predicted: &[NodeId], targets: &[Array2]) -> Result<NodeId> {
    if predicted.len() != targets.len() || predicted.is_empty() {
        return shape_err(
            "squared-loss",
            format!("{} predictions for {} targets", predicted.len(), targets.len()),
        );
    }
    let mut total = None;
    let mut count = 0;
    for (&p, t) in predicted.iter().zip(targets) {
        let target = tape.constant(t.clone());
        let diff = tape.sub(p, target)?;
        let sq = tape.square(diff)?;
        let s = tape.sum(sq)?;
        total = Some(match total {
            None => s,
            Some(acc) => tape.add(acc, s)?,
        });
        count += t.len();
    }
    tape.scale(total.expect("non-empty"), 1.0 / count as f64)
}

pub fn mean_squared_error(predicted: &Wave, target: &Wave) -> Result<f64> {
    check_same(predicted, target)?;
    let n = target.samples().len() as f64;
    Ok(predicted
        .samples()
        .iter()
        .zip(target.samples())
        .map(|(p, t)| (p - t) * (p - t))
        .sum::<f64>()
        / n)
}

/// Per-scalar Gaussian negative log-likelihood of the residuals and its
/// exponential, the perplexity.
pub fn gaussian_nll_and_perplexity(predicted: &Wave, target: &Wave, sigma: f64) -> Result<(f64, f64)> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidArgument(format!("sigma must be positive, got {sigma}")));
    }
    let mse = mean_squared_error(predicted, target)?;
    let var = sigma * sigma;
    let nll = 0.5 * (2.0 * PI * var).ln() + mse / (2.0 * var);
    Ok((nll, nll.exp()))
}

fn check_same(a: &Wave, b: &Wave) -> Result<()> {
    if a.channels() != b.channels() || a.steps() != b.steps() {
        return shape_err(
            "residual",
            format!(
                "prediction {}x{} vs reference {}x{}",
                a.channels(),
                a.steps(),
                b.channels(),
                b.steps()
            ),
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_prediction_has_zero_loss() {
        let mut tape = Tape::new();
        let t = Array2::row(vec![0.5, -1.0, 2.0]);
        let p = tape.variable(t.clone());
        let l = squared_loss(&mut tape, &[p], &[t]).unwrap();
        assert_eq!(tape.value(l).item().unwrap(), 0.0);
    }

    #[test]
    fn off_by_one_everywhere_is_one() {
        let mut tape = Tape::new();
        let a = tape.variable(Array2::row(vec![1.0, 2.0]));
        let b = tape.variable(Array2::row(vec![0.0, -3.0, 5.0]));
        let l = squared_loss(
            &mut tape,
            &[a, b],
            &[Array2::row(vec![0.0, 1.0]), Array2::row(vec![1.0, -4.0, 4.0])],
        )
        .unwrap();
        assert_eq!(tape.value(l).item().unwrap(), 1.0);
    }

    #[test]
    fn matches_scalar_loop() {
        let preds = [vec![0.3, -0.1, 0.8], vec![1.5, 0.0, -2.2]];
        let targs = [vec![0.0, 0.2, 1.0], vec![1.0, 0.5, -2.0]];
        let mut oracle = 0.0;
        let mut n = 0;
        for (p, t) in preds.iter().zip(&targs) {
            for (a, b) in p.iter().zip(t) {
                oracle += (a - b) * (a - b);
                n += 1;
            }
        }
        oracle /= n as f64;
        let mut tape = Tape::new();
        let ids: Vec<_> = preds.iter().map(|p| tape.variable(Array2::row(p.clone()))).collect();
        let ts: Vec<_> = targs.iter().map(|t| Array2::row(t.clone())).collect();
        let l = squared_loss(&mut tape, &ids, &ts).unwrap();
        assert!((tape.value(l).item().unwrap() - oracle).abs() < 1e-15);
    }

    #[test]
    fn perplexity_of_perfect_prediction() {
        let w = Wave::mono(vec![0.1, 0.2, 0.3]).unwrap();
        let (nll, ppl) = gaussian_nll_and_perplexity(&w, &w, 1.0).unwrap();
        assert!((nll - 0.5 * (2.0 * PI).ln()).abs() < 1e-15);
        assert!((ppl - (2.0 * PI).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn nll_plug_in() {
        let p = Wave::mono(vec![0.0, 0.0]).unwrap();
        let t = Wave::mono(vec![2f64.sqrt(), -(2f64.sqrt())]).unwrap();
        let (nll, _) = gaussian_nll_and_perplexity(&p, &t, 1.0).unwrap();
        assert!((nll - (0.5 * (2.0 * PI).ln() + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn nll_matches_scalar_loop_with_sigma() {
        let p = Wave::from_channels(&[vec![0.1, 0.7, -0.3], vec![1.2, 0.0, 0.4]]).unwrap();
        let t = Wave::from_channels(&[vec![0.0, 1.0, -0.5], vec![1.0, 0.3, 0.1]]).unwrap();
        let sigma = 0.7;
        let mut acc = 0.0;
        for (a, b) in p.samples().iter().zip(t.samples()) {
            acc += 0.5 * (2.0 * PI * sigma * sigma).ln() + (b - a) * (b - a) / (2.0 * sigma * sigma);
        }
        let oracle = acc / 6.0;
        let (nll, ppl) = gaussian_nll_and_perplexity(&p, &t, sigma).unwrap();
        assert!((nll - oracle).abs() < 1e-12);
        assert!((ppl - oracle.exp()).abs() < 1e-12);
    }

    #[test]
    fn sigma_must_be_positive() {
        let w = Wave::mono(vec![1.0]).unwrap();
        assert!(gaussian_nll_and_perplexity(&w, &w, 0.0).is_err());
        assert!(gaussian_nll_and_perplexity(&w, &w, -1.0).is_err());
    }

    #[test]
    fn shape_mismatch_rejected() {
        let a = Wave::mono(vec![1.0, 2.0]).unwrap();
        let b = Wave::mono(vec![1.0]).unwrap();
        assert!(mean_squared_error(&a, &b).is_err());
    }
}
