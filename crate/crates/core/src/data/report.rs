//! Delimited-text reports.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::signal::Wave;
use crate::train::{gaussian_nll_and_perplexity, mean_squared_error, TrainReport};

/// One row per model and epoch; epoch 0 is the initialization.
pub fn train_history_csv(reports: &[TrainReport]) -> String {
    let mut out = String::from("model,epoch,train_loss\n");
    for (m, r) in reports.iter().enumerate() {
        writeln!(out, "{m},0,{}", r.initial_train_loss).unwrap();
        for (e, loss) in r.train_losses.iter().enumerate() {
            writeln!(out, "{m},{},{loss}", e + 1).unwrap();
        }
    }
    out
}

pub fn train_summary_csv(reports: &[TrainReport]) -> String {
    let mut out = String::from("model,seed,epochs,initial_train_loss,best_epoch,best_train_loss,test_loss\n");
    for (m, r) in reports.iter().enumerate() {
        let best_epoch = r.best_epoch.map_or(0, |e| e + 1);
        let test = r.test_loss.map_or(String::new(), |t| t.to_string());
        writeln!(
            out,
            "{m},{},{},{},{best_epoch},{},{test}",
            r.seed, r.epochs, r.initial_train_loss, r.best_train_loss
        )
        .unwrap();
    }
    out
}

/// Wall-clock times, kept apart from the reproducible reports.
pub fn timing_csv(reports: &[TrainReport]) -> String {
    let mut out = String::from("model,wall_time_s\n");
    for (m, r) in reports.iter().enumerate() {
        writeln!(out, "{m},{}", r.wall_time.as_secs_f64()).unwrap();
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairScore {
    pub name: String,
    pub mse: f64,
    pub nll: f64,
    pub perplexity: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvalReport {
    pub model_id: String,
    pub dataset_id: String,
    pub sigma: f64,
    pub pairs: Vec<PairScore>,
    pub mse: f64,
    pub perplexity: f64,
}

impl EvalReport {
    /// Scores prediction/reference pairs; aggregates are means of the
    /// per-pair values.
    pub fn score(model_id: &str, dataset_id: &str, sigma: f64, pairs: &[(String, Wave, Wave)]) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidArgument("nothing to evaluate".into()));
        }
        let scores = pairs
            .iter()
            .map(|(name, pred, reference)| {
                let mse = mean_squared_error(pred, reference)?;
                let (nll, perplexity) = gaussian_nll_and_perplexity(pred, reference, sigma)?;
                Ok(PairScore {
                    name: name.clone(),
                    mse,
                    nll,
                    perplexity,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let n = scores.len() as f64;
        Ok(Self {
            model_id: model_id.to_string(),
            dataset_id: dataset_id.to_string(),
            sigma,
            mse: scores.iter().map(|s| s.mse).sum::<f64>() / n,
            perplexity: scores.iter().map(|s| s.perplexity).sum::<f64>() / n,
            pairs: scores,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("model,dataset,pair,mse,nll,perplexity\n");
        for s in &self.pairs {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                self.model_id, self.dataset_id, s.name, s.mse, s.nll, s.perplexity
            )
            .unwrap();
        }
        writeln!(
            out,
            "{},{},mean,{},,{}",
            self.model_id, self.dataset_id, self.mse, self.perplexity
        )
        .unwrap();
        out
    }
}

/// Attention matrix as CSV, one decoder step per row.
pub fn attention_csv(weights: &crate::tensor::Array2) -> String {
    let mut out = String::from("step");
    for s in 0..weights.cols() {
        write!(out, ",src{s}").unwrap();
    }
    out.push('\n');
    for t in 0..weights.rows() {
        write!(out, "{t}").unwrap();
        for v in weights.row_slice(t) {
            write!(out, ",{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::Duration;

    #[test]
    fn identical_prediction_scores() {
        let w = Wave::mono(vec![0.3, -0.2, 1.0]).unwrap();
        let r = EvalReport::score("m", "d", 1.0, &[("p0".into(), w.clone(), w)]).unwrap();
        assert_eq!(r.mse, 0.0);
        assert!((r.perplexity - 2.5066282746310002).abs() < 1e-12);
    }

    #[test]
    fn aggregate_is_mean_of_pairs() {
        let a = Wave::mono(vec![0.0, 0.0]).unwrap();
        let b = Wave::mono(vec![1.0, 3.0]).unwrap();
        let c = Wave::mono(vec![0.5, -0.5]).unwrap();
        let r = EvalReport::score("m", "d", 1.0, &[("x".into(), a.clone(), b), ("y".into(), a, c)]).unwrap();
        let mean_mse = (r.pairs[0].mse + r.pairs[1].mse) / 2.0;
        let mean_ppl = (r.pairs[0].perplexity + r.pairs[1].perplexity) / 2.0;
        assert!((r.mse - mean_mse).abs() < 1e-12);
        assert!((r.perplexity - mean_ppl).abs() < 1e-12);
        assert_eq!(r.to_csv().lines().count(), 4);
    }

    #[test]
    fn history_has_initial_row() {
        let r = TrainReport {
            train_losses: vec![0.5, 0.25],
            initial_train_loss: 1.0,
            best_train_loss: 0.25,
            best_epoch: Some(1),
            test_loss: None,
            epochs: 2,
            seed: 4,
            wall_time: Duration::from_millis(10),
        };
        assert_eq!(
            train_history_csv(std::slice::from_ref(&r)),
            "model,epoch,train_loss\n0,0,1\n0,1,0.5\n0,2,0.25\n"
        );
        assert!(train_summary_csv(&[r]).ends_with("0,4,2,1,2,0.25,\n"));
    }
}
