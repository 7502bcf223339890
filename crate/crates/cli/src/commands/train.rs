use std::fs;

use wave2wave::data::{save_model, timing_csv, train_history_csv, train_summary_csv};
use wave2wave::tensor::AdamConfig;
use wave2wave::train::{MethodRegistry, Split, TrainConfig, TrainJob};
use wave2wave::Result;

use crate::io::{load_dataset, load_waves, Side};
use crate::settings::{key, required, Key, Settings};

pub fn keys() -> Vec<Key> {
    let t = TrainConfig::default();
    vec![
        required("manifest", "training pairs manifest"),
        key("test-manifest", "", "held-out pairs manifest"),
        key(
            "unpaired-manifest",
            "",
            "unpaired targets for iterative-bt (series, or pair targets)",
        ),
        key(
            "method",
            "wave2wave",
            "wave2wave, iterative, iterative-bt, simple-ed or simple-seq2seq",
        ),
        key(
            "encoder-width",
            t.encoder_width,
            "source window width (also the simple-seq2seq width)",
        ),
        key("decoder-width", t.decoder_width, "target window width"),
        key("hidden", t.hidden, "representation and LSTM hidden size"),
        key("dz", t.latent, "latent size of simple-ed"),
        key(
            "decoder-steps",
            "auto",
            "decoder steps; auto derives them from the target length",
        ),
        key(
            "input-feeding",
            if t.input_feeding { "on" } else { "off" },
            "feed the previous output representation to the decoder",
        ),
        key("pad-policy", t.pad_policy, "zero-pad or truncate a partial last window"),
        key("epochs", t.epochs, "training epochs"),
        key(
            "batch-size",
            "auto",
            "mini-batch size; auto is full batch below 100 pairs, else 100",
        ),
        key("learning-rate", t.adam.learning_rate, "Adam step size"),
        key("beta1", t.adam.beta1, "Adam first-moment decay"),
        key("beta2", t.adam.beta2, "Adam second-moment decay"),
        key("epsilon", t.adam.epsilon, "Adam denominator offset"),
        key("grad-clamp", t.grad_clamp, "elementwise gradient clamp"),
        key("bt-rounds", t.backtranslation_rounds, "back-translation rounds"),
        key("seed", t.seed, "initialization and shuffling seed"),
        required("out", "output directory"),
    ]
}

pub fn train_config(s: &Settings) -> Result<TrainConfig> {
    Ok(TrainConfig {
        encoder_width: s.parse("encoder-width")?,
        decoder_width: s.parse("decoder-width")?,
        hidden: s.parse("hidden")?,
        latent: s.parse("dz")?,
        decoder_steps: s.auto_count("decoder-steps")?,
        input_feeding: s.flag("input-feeding")?,
        pad_policy: s.parse("pad-policy")?,
        adam: AdamConfig {
            learning_rate: s.parse("learning-rate")?,
            beta1: s.parse("beta1")?,
            beta2: s.parse("beta2")?,
            epsilon: s.parse("epsilon")?,
        },
        epochs: s.parse("epochs")?,
        batch_size: s.auto_count("batch-size")?,
        seed: s.parse("seed")?,
        grad_clamp: s.parse("grad-clamp")?,
        backtranslation_rounds: s.parse("bt-rounds")?,
    })
}

pub fn run(s: &Settings) -> Result<()> {
    let out = s.required_path("out")?;
    let config = train_config(s)?;
    config.validate()?;
    let registry = MethodRegistry::builtin();
    let method = registry.get(s.str("method"))?;

    let train = load_dataset(&s.required_path("manifest")?, Split::Train)?;
    let test = s
        .path("test-manifest")
        .map(|p| load_dataset(&p, Split::Test))
        .transpose()?;
    let unpaired = s
        .path("unpaired-manifest")
        .map(|p| load_waves(&p, Side::Target))
        .transpose()?
        .unwrap_or_default();

    log::info!("training `{}` on {} pairs", method.name(), train.len());
    let trained = method.train(&TrainJob {
        train: &train,
        test: test.as_ref(),
        unpaired: &unpaired,
        config: &config,
    })?;

    s.write_to(&out)?;
    save_model(&out.join("model.json"), &trained.model.to_record()?)?;
    fs::write(out.join("train_history.csv"), train_history_csv(&trained.reports))?;
    fs::write(out.join("train_summary.csv"), train_summary_csv(&trained.reports))?;
    fs::write(out.join("timing.csv"), timing_csv(&trained.reports))?;
    for (i, r) in trained.reports.iter().enumerate() {
        log::info!(
            "model {i}: train loss {} -> {}, test loss {}",
            r.initial_train_loss,
            r.best_train_loss,
            r.test_loss.map_or("n/a".into(), |t| t.to_string())
        );
    }
    Ok(())
}
