//! The shared optimization loop.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::model::Network;
use crate::tensor::init::prng;
use crate::tensor::{AdamState, Array2, Tape};
use crate::train::loss::squared_loss;
use crate::train::{Dataset, TrainConfig};

#[derive(Clone, Debug, PartialEq)]
pub struct TrainReport {
    /// Full training-set loss after each epoch.
    pub train_losses: Vec<f64>,
    pub initial_train_loss: f64,
    /// Training loss of the returned parameters.
    pub best_train_loss: f64,
    /// Zero-based epoch of the returned parameters; `None` for the initialization.
    pub best_epoch: Option<usize>,
    pub test_loss: Option<f64>,
    pub epochs: usize,
    pub seed: u64,
    pub wall_time: Duration,
}

impl TrainReport {
    pub fn final_train_loss(&self) -> f64 {
        self.train_losses.last().copied().unwrap_or(self.initial_train_loss)
    }
}

/// Mean squared error of `net` over a dataset, forward only.
pub fn dataset_loss<N: Network + ?Sized>(net: &N, data: &Dataset) -> Result<f64> {
    let mut sum = 0.0;
    let mut count = 0usize;
    for pair in data.pairs() {
        let target = net.target_row(&pair.target)?;
        let mut tape = Tape::new();
        let ids = net.params().bind_constants(&mut tape);
        let pred = net.predict_row(&mut tape, &ids, &pair.source)?;
        let pred = tape.value(pred);
        target.check_same_shape(pred, "loss")?;
        sum += pred
            .data()
            .iter()
            .zip(target.data())
            .map(|(p, t)| (p - t) * (p - t))
            .sum::<f64>();
        count += target.len();
    }
    Ok(sum / count as f64)
}

fn batch_gradients<N: Network + ?Sized>(
    net: &N,
    data: &Dataset,
    targets: &[Array2],
    batch: &[usize],
) -> Result<(f64, Vec<Array2>)> {
    let mut tape = Tape::new();
    let ids = net.params().bind_variables(&mut tape);
    let mut preds = Vec::with_capacity(batch.len());
    let mut truth = Vec::with_capacity(batch.len());
    for &i in batch {
        preds.push(net.predict_row(&mut tape, &ids, &data.pairs()[i].source)?);
        truth.push(targets[i].clone());
    }
    let loss = squared_loss(&mut tape, &preds, &truth)?;
    let value = tape.value(loss).item()?;
    let mut grads = tape.backward(loss)?;
    let grads = ids.iter().map(|&id| grads.take(id)).collect();
    Ok((value, grads))
}

/// Adam on the squared loss, returning the parameters with the lowest
/// training loss seen (the initialization included).
pub fn fit<N: Network + ?Sized>(
    net: &mut N,
    train: &Dataset,
    test: Option<&Dataset>,
    config: &TrainConfig,
) -> Result<TrainReport> {
    config.validate()?;
    let start = Instant::now();
    let targets = train
        .pairs()
        .iter()
        .map(|p| net.target_row(&p.target))
        .collect::<Result<Vec<_>>>()?;
    let batch = config.effective_batch(train.len());
    let mut rng = prng(config.seed ^ 0x5851_F42D_4C95_7F2D);
    let mut adam = AdamState::new(config.adam, net.params().values());

    let initial = dataset_loss(net, train)?;
    if !initial.is_finite() {
        return Err(Error::NonFiniteLoss { epoch: 0 });
    }
    let mut best = (initial, net.params().clone(), None);
    let mut history = Vec::with_capacity(config.epochs);
    let mut order: Vec<usize> = (0..train.len()).collect();

    for epoch in 0..config.epochs {
        if batch < train.len() {
            order.shuffle(&mut rng);
        }
        for chunk in order.chunks(batch) {
            let (loss, mut grads) = batch_gradients(net, train, &targets, chunk)?;
            if !loss.is_finite() {
                return Err(Error::NonFiniteLoss { epoch: epoch + 1 });
            }
            let clamp = config.grad_clamp;
            for g in &mut grads {
                for v in g.data_mut() {
                    *v = v.clamp(-clamp, clamp);
                }
            }
            adam.step(net.params_mut().values_mut(), &grads)?;
        }
        let loss = dataset_loss(net, train)?;
        if !loss.is_finite() {
            return Err(Error::NonFiniteLoss { epoch: epoch + 1 });
        }
        log::debug!("epoch {} train loss {loss:.6}", epoch + 1);
        history.push(loss);
        if loss < best.0 {
            best = (loss, net.params().clone(), Some(epoch));
        }
    }

    let (best_loss, best_params, best_epoch) = best;
    *net.params_mut() = best_params;
    let test_loss = test.map(|t| dataset_loss(net, t)).transpose()?;
    Ok(TrainReport {
        train_losses: history,
        initial_train_loss: initial,
        best_train_loss: best_loss,
        best_epoch,
        test_loss,
        epochs: config.epochs,
        seed: config.seed,
        wall_time: start.elapsed(),
    })
}
