use rand::Rng;
use wave2wave::data::{generate_toy, model_to_string, parse_model, ToySpec};
use wave2wave::model::{Network, Wave2Wave};
use wave2wave::signal::Wave;
use wave2wave::tensor::init::prng;
use wave2wave::train::{
    dataset_loss, gaussian_nll_and_perplexity, model_config_for, train_iterative, train_iterative_backtranslation,
    train_iterative_seeded, train_simple_encoder_decoder, train_simple_seq2seq, train_wave2wave, Dataset,
    MethodRegistry, Split, TrainConfig, TrainJob, WavePair,
};

fn toy(num_pairs: usize, steps: usize, seed: u64) -> Dataset {
    generate_toy(&ToySpec {
        num_pairs,
        steps,
        seed,
        period: (4.0, 16.0),
        ..ToySpec::default()
    })
    .unwrap()
}

/// Three independent target channels built from one source channel.
fn three_channel(num_pairs: usize, steps: usize, seed: u64) -> Dataset {
    let mut rng = prng(seed);
    let pairs = (0..num_pairs)
        .map(|_| {
            let x: Vec<f64> = (0..steps).map(|_| rng.random_range(-1.0..1.0)).collect();
            let rev: Vec<f64> = x.iter().rev().copied().collect();
            let half: Vec<f64> = x.iter().map(|v| 0.5 * v).collect();
            let sq: Vec<f64> = x.iter().map(|v| v * v).collect();
            WavePair::new(Wave::mono(x).unwrap(), Wave::from_channels(&[rev, half, sq]).unwrap())
        })
        .collect();
    Dataset::new(pairs, Split::Train).unwrap()
}

fn small_config(epochs: usize) -> TrainConfig {
    TrainConfig {
        encoder_width: 4,
        decoder_width: 4,
        hidden: 6,
        latent: 8,
        epochs,
        seed: 3,
        ..TrainConfig::default()
    }
}

#[test]
fn zero_epochs_returns_initialization() {
    let data = toy(3, 16, 0);
    let config = small_config(0);
    let (net, report) = train_wave2wave(&data, None, &config).unwrap();
    let fresh = Wave2Wave::init(model_config_for(&data, &config).unwrap(), config.seed).unwrap();
    assert_eq!(net, fresh);
    assert!(report.train_losses.is_empty());
    assert_eq!(report.best_epoch, None);
    assert_eq!(report.best_train_loss, report.initial_train_loss);
}

#[test]
fn training_never_worsens_train_loss() {
    let data = toy(4, 16, 1);
    for lr in [1e-3, 0.5] {
        let mut config = small_config(15);
        config.adam.learning_rate = lr;
        let (net, report) = train_wave2wave(&data, None, &config).unwrap();
        let final_loss = dataset_loss(&net, &data).unwrap();
        assert!(final_loss <= report.initial_train_loss, "lr {lr}");
        assert_eq!(final_loss, report.best_train_loss);
        let min = report
            .train_losses
            .iter()
            .copied()
            .fold(report.initial_train_loss, f64::min);
        assert_eq!(report.best_train_loss, min);
    }
}

#[test]
fn training_is_deterministic_per_seed() {
    let data = toy(5, 16, 2);
    let mut config = small_config(4);
    config.batch_size = Some(2);
    let (a, ra) = train_wave2wave(&data, None, &config).unwrap();
    let (b, rb) = train_wave2wave(&data, None, &config).unwrap();
    assert_eq!(a, b);
    assert_eq!(ra.train_losses, rb.train_losses);
    let (c, _) = train_wave2wave(&data, None, &config.with_seed(4)).unwrap();
    assert_ne!(a, c);
}

#[test]
fn test_loss_is_reported_but_not_used_for_selection() {
    let data = toy(4, 16, 3);
    let test = toy(2, 16, 4).with_split(Split::Test);
    let config = small_config(5);
    let (with_test, r1) = train_wave2wave(&data, Some(&test), &config).unwrap();
    let (without, r2) = train_wave2wave(&data, None, &config).unwrap();
    assert_eq!(with_test, without);
    assert_eq!(r1.test_loss, Some(dataset_loss(&with_test, &test).unwrap()));
    assert_eq!(r2.test_loss, None);
}

#[test]
fn iterative_with_one_channel_is_standard_training() {
    let data = toy(4, 16, 5);
    let config = small_config(6);
    let (iter, reports) = train_iterative(&data, None, &config).unwrap();
    let (single, report) = train_wave2wave(&data, None, &config).unwrap();
    assert_eq!(iter.models(), std::slice::from_ref(&single));
    assert_eq!(reports[0].train_losses, report.train_losses);
    let src = &data.pairs()[0].source;
    assert_eq!(iter.translate(src).unwrap().0, single.translate(src).unwrap().0);
}

#[test]
fn iterative_channels_match_manual_single_channel_runs() {
    let data = three_channel(4, 12, 6);
    let config = small_config(8);
    let (iter, reports) = train_iterative(&data, None, &config).unwrap();
    assert_eq!(iter.channels(), 3);
    for j in 0..3 {
        let dj = data.target_channel(j).unwrap();
        let (manual, _) = train_wave2wave(&dj, None, &config.with_seed(config.seed + j as u64)).unwrap();
        let a = dataset_loss(iter.channel(j), &dj).unwrap();
        let b = dataset_loss(&manual, &dj).unwrap();
        assert!((a - b).abs() <= 0.1 * b, "channel {j}: {a} vs {b}");
        assert_eq!(a, reports[j].best_train_loss);
    }
    let out = iter.translate(&data.pairs()[0].source).unwrap();
    assert_eq!(out.0.channels(), 3);
    assert_eq!(out.1.len(), 3);
}

#[test]
fn permuting_target_channels_permutes_models() {
    let data = three_channel(3, 12, 7);
    let config = small_config(3);
    let perm = [2usize, 0, 1];
    let permuted_pairs = data
        .pairs()
        .iter()
        .map(|p| WavePair::new(p.source.clone(), p.target.select_channels(&perm).unwrap()))
        .collect();
    let permuted = Dataset::new(permuted_pairs, Split::Train).unwrap();
    let seeds = [10u64, 11, 12];
    let permuted_seeds: Vec<u64> = perm.iter().map(|&j| seeds[j]).collect();
    let (a, _) = train_iterative_seeded(&data, None, &config, &seeds).unwrap();
    let (b, _) = train_iterative_seeded(&permuted, None, &config, &permuted_seeds).unwrap();
    for (k, &j) in perm.iter().enumerate() {
        assert_eq!(b.channel(k), a.channel(j));
    }
    assert!(train_iterative_seeded(&data, None, &config, &seeds[..2]).is_err());
}

#[test]
fn backtranslation_without_unpaired_is_iterative() {
    let data = toy(3, 16, 8);
    let config = small_config(3);
    let (bt, bt_reports) = train_iterative_backtranslation(&data, None, &[], &config).unwrap();
    let (it, it_reports) = train_iterative(&data, None, &config).unwrap();
    assert_eq!(bt, it);
    assert_eq!(bt_reports.len(), it_reports.len());
}

#[test]
fn backtranslation_trains_reverse_then_forward() {
    let data = toy(3, 16, 9);
    let unpaired: Vec<Wave> = toy(3, 16, 10).pairs().iter().map(|p| p.target.clone()).collect();
    let config = small_config(3);
    let (model, reports) = train_iterative_backtranslation(&data, None, &unpaired, &config).unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(model.channels(), 1);
    let bad = vec![Wave::zeros(2, 16).unwrap()];
    assert!(train_iterative_backtranslation(&data, None, &bad, &config).is_err());
}

#[test]
fn simple_encoder_decoder_reaches_zero_loss_with_enough_capacity() {
    let data = toy(2, 6, 11);
    let mut config = small_config(400);
    config.adam.learning_rate = 1e-2;
    let (_, report) = train_simple_encoder_decoder(&data, None, 12, &config).unwrap();
    assert!(report.best_train_loss < 1e-3 * report.initial_train_loss, "{report:?}");
}

#[test]
fn untrained_simple_encoder_decoder_on_zero_targets() {
    let pairs = toy(3, 6, 12)
        .pairs()
        .iter()
        .map(|p| WavePair::new(p.source.clone(), Wave::zeros(1, 6).unwrap()))
        .collect();
    let data = Dataset::new(pairs, Split::Train).unwrap();
    let (net, report) = train_simple_encoder_decoder(&data, None, 5, &small_config(0)).unwrap();
    let mut sum = 0.0;
    let mut count = 0;
    for p in data.pairs() {
        for v in net.predict(&p.source).unwrap().samples() {
            sum += v * v;
            count += 1;
        }
    }
    assert!((report.initial_train_loss - sum / count as f64).abs() < 1e-15);
}

#[test]
fn seq2seq_with_full_width_is_single_step() {
    let data = toy(3, 8, 13);
    let (net, _) = train_simple_seq2seq(&data, None, 8, &small_config(2)).unwrap();
    assert_eq!(net.config().decoder_steps, 1);
    assert_eq!(net.predict(&data.pairs()[0].source).unwrap().steps(), 8);
}

#[test]
fn every_method_round_trips_through_the_model_file() {
    let data = three_channel(3, 8, 14);
    let unpaired: Vec<Wave> = three_channel(2, 8, 15)
        .pairs()
        .iter()
        .map(|p| p.target.clone())
        .collect();
    let config = small_config(2);
    let registry = MethodRegistry::builtin();
    for name in registry.names() {
        let job = TrainJob {
            train: &data,
            test: None,
            unpaired: &unpaired,
            config: &config,
        };
        let trained = registry.get(name).unwrap().train(&job).unwrap();
        let record = trained.model.to_record().unwrap();
        assert_eq!(record.method, name);
        let text = model_to_string(&record).unwrap();
        let loaded = registry.load(&parse_model(&text).unwrap()).unwrap();
        assert_eq!(loaded.method(), name);
        assert_eq!(loaded.target_channels(), 3);
        let src = &data.pairs()[1].source;
        assert_eq!(
            loaded.translate(src).unwrap().wave,
            trained.model.translate(src).unwrap().wave,
            "{name}"
        );
        if name.starts_with("iterative") {
            for j in 0..3 {
                let prefix = format!("channel.{j}.");
                assert!(record.params.names().iter().any(|n| n.starts_with(&prefix)));
            }
        }
    }
}

#[test]
fn perplexity_grows_with_squared_residual() {
    let mut rng = prng(16);
    let target = Wave::mono((0..50).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap();
    let mut last = (0.0, 0.0);
    for scale in [0.0, 0.1, 0.3, 1.0, 2.0] {
        let pred = target.map(|v| v + scale * (v + 0.5)).unwrap();
        let mse = wave2wave::train::mean_squared_error(&pred, &target).unwrap();
        let (_, ppl) = gaussian_nll_and_perplexity(&pred, &target, 1.0).unwrap();
        if scale > 0.0 {
            assert!(mse > last.0 && ppl > last.1);
        }
        last = (mse, ppl);
    }
}
