//! Named training methods selected at runtime.

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::data::ModelRecord;
use crate::error::{Error, Result};
use crate::model::{
    AttentionTrace, EncoderDecoderConfig, ModelConfig, Network, ParamSet, Seq2SeqConfig, SimpleEncoderDecoder,
    SimpleSeq2Seq, Wave2Wave,
};
use crate::signal::Wave;
use crate::train::{
    train_iterative, train_iterative_backtranslation, train_simple_encoder_decoder, train_simple_seq2seq,
    train_wave2wave, Dataset, IterativeModel, TrainConfig, TrainReport,
};

pub struct Translation {
    pub wave: Wave,
    /// Attention traces, one per channel model; empty for models without attention.
    pub attention: Vec<AttentionTrace>,
}

/// A trained model usable for inference and serialization.
pub trait Translator: Send + Sync {
    fn method(&self) -> &str;
    fn source_channels(&self) -> usize;
    fn target_channels(&self) -> usize;
    fn translate(&self, source: &Wave) -> Result<Translation>;
    fn to_record(&self) -> Result<ModelRecord>;
}

pub struct TrainJob<'a> {
    pub train: &'a Dataset,
    pub test: Option<&'a Dataset>,
    /// Targets without paired sources; only back-translation uses them.
    pub unpaired: &'a [Wave],
    pub config: &'a TrainConfig,
}

pub struct Trained {
    pub model: Box<dyn Translator>,
    pub reports: Vec<TrainReport>,
}

pub trait TrainMethod: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn train(&self, job: &TrainJob<'_>) -> Result<Trained>;
    fn load(&self, record: &ModelRecord) -> Result<Box<dyn Translator>>;
}

pub struct MethodRegistry {
    methods: Vec<Box<dyn TrainMethod>>,
}

impl MethodRegistry {
    pub fn empty() -> Self {
        Self { methods: Vec::new() }
    }

    /// Registry holding every method this crate ships.
    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Wave2WaveMethod));
        r.register(Box::new(IterativeMethod { backtranslate: false }));
        r.register(Box::new(IterativeMethod { backtranslate: true }));
        r.register(Box::new(SimpleEdMethod));
        r.register(Box::new(SimpleSeq2SeqMethod));
        r
    }

    /// Adds a method, replacing any existing one with the same name.
    pub fn register(&mut self, method: Box<dyn TrainMethod>) {
        self.methods.retain(|m| m.name() != method.name());
        self.methods.push(method);
    }

    pub fn get(&self, name: &str) -> Result<&dyn TrainMethod> {
        self.methods
            .iter()
            .find(|m| m.name() == name)
            .map(|m| m.as_ref())
            .ok_or_else(|| Error::UnknownMethod(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.methods.iter().map(|m| m.name()).collect()
    }

    pub fn load(&self, record: &ModelRecord) -> Result<Box<dyn Translator>> {
        self.get(&record.method)?.load(record)
    }
}

impl Default for MethodRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

fn parse_config<T: for<'de> Deserialize<'de>>(record: &ModelRecord) -> Result<T> {
    Ok(serde_json::from_value(record.config.clone())?)
}

fn record<C: Serialize>(method: &str, config: &C, params: &ParamSet) -> Result<ModelRecord> {
    Ok(ModelRecord {
        method: method.to_string(),
        config: serde_json::to_value(config)?,
        params: params.clone(),
    })
}

struct Wave2WaveMethod;

impl Translator for Wave2Wave {
    fn method(&self) -> &str {
        "wave2wave"
    }

    fn source_channels(&self) -> usize {
        self.config().source_channels
    }

    fn target_channels(&self) -> usize {
        self.config().target_channels
    }

    fn translate(&self, source: &Wave) -> Result<Translation> {
        let (wave, trace) = Wave2Wave::translate(self, source)?;
        Ok(Translation {
            wave,
            attention: vec![trace],
        })
    }

    fn to_record(&self) -> Result<ModelRecord> {
        record("wave2wave", self.config(), self.params())
    }
}

impl TrainMethod for Wave2WaveMethod {
    fn name(&self) -> &'static str {
        "wave2wave"
    }

    fn summary(&self) -> &'static str {
        "one attention seq2seq network over all target channels"
    }

    fn train(&self, job: &TrainJob<'_>) -> Result<Trained> {
        let (model, report) = train_wave2wave(job.train, job.test, job.config)?;
        Ok(Trained {
            model: Box::new(model),
            reports: vec![report],
        })
    }

    fn load(&self, record: &ModelRecord) -> Result<Box<dyn Translator>> {
        let config: ModelConfig = parse_config(record)?;
        Ok(Box::new(Wave2Wave::from_parts(config, record.params.clone())?))
    }
}

struct IterativeMethod {
    backtranslate: bool,
}

struct IterativeTranslator {
    method: &'static str,
    model: IterativeModel,
}

const CHANNEL_PREFIX: &str = "channel.";

impl Translator for IterativeTranslator {
    fn method(&self) -> &str {
        self.method
    }

    fn source_channels(&self) -> usize {
        self.model.channel(0).config().source_channels
    }

    fn target_channels(&self) -> usize {
        self.model.channels()
    }

    fn translate(&self, source: &Wave) -> Result<Translation> {
        let (wave, attention) = self.model.translate(source)?;
        Ok(Translation { wave, attention })
    }

    fn to_record(&self) -> Result<ModelRecord> {
        let mut params = ParamSet::new();
        for (j, m) in self.model.models().iter().enumerate() {
            for (name, value) in m.params().iter() {
                params.push(format!("{CHANNEL_PREFIX}{j}.{name}"), value.clone());
            }
        }
        Ok(ModelRecord {
            method: self.method.to_string(),
            config: json!({
                "channels": self.model.channels(),
                "model": self.model.channel(0).config(),
            }),
            params,
        })
    }
}

impl TrainMethod for IterativeMethod {
    fn name(&self) -> &'static str {
        if self.backtranslate {
            "iterative-bt"
        } else {
            "iterative"
        }
    }

    fn summary(&self) -> &'static str {
        if self.backtranslate {
            "per-channel networks retrained on back-translated unpaired targets"
        } else {
            "one single-output network per target channel"
        }
    }

    fn train(&self, job: &TrainJob<'_>) -> Result<Trained> {
        let (model, reports) = if self.backtranslate {
            train_iterative_backtranslation(job.train, job.test, job.unpaired, job.config)?
        } else {
            train_iterative(job.train, job.test, job.config)?
        };
        Ok(Trained {
            model: Box::new(IterativeTranslator {
                method: self.name(),
                model,
            }),
            reports,
        })
    }

    fn load(&self, record: &ModelRecord) -> Result<Box<dyn Translator>> {
        #[derive(Deserialize)]
        struct Layout {
            channels: usize,
            model: ModelConfig,
        }
        let layout: Layout = parse_config(record)?;
        let mut per_channel = vec![ParamSet::new(); layout.channels];
        for (name, value) in record.params.iter() {
            let rest = name.strip_prefix(CHANNEL_PREFIX).and_then(|r| r.split_once('.'));
            let (j, local) = match rest.and_then(|(j, local)| Some((j.parse::<usize>().ok()?, local))) {
                Some((j, local)) if j < layout.channels => (j, local),
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "unexpected parameter `{name}` in iterative model"
                    )))
                }
            };
            per_channel[j].push(local, value.clone());
        }
        let models = per_channel
            .into_iter()
            .map(|p| Wave2Wave::from_parts(layout.model.clone(), p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Box::new(IterativeTranslator {
            method: self.name(),
            model: IterativeModel::new(models)?,
        }))
    }
}

struct SimpleEdMethod;

impl Translator for SimpleEncoderDecoder {
    fn method(&self) -> &str {
        "simple-ed"
    }

    fn source_channels(&self) -> usize {
        self.config().source_channels
    }

    fn target_channels(&self) -> usize {
        self.config().target_channels
    }

    fn translate(&self, source: &Wave) -> Result<Translation> {
        Ok(Translation {
            wave: self.predict(source)?,
            attention: Vec::new(),
        })
    }

    fn to_record(&self) -> Result<ModelRecord> {
        record("simple-ed", self.config(), self.params())
    }
}

impl TrainMethod for SimpleEdMethod {
    fn name(&self) -> &'static str {
        "simple-ed"
    }

    fn summary(&self) -> &'static str {
        "whole-wave encoder-decoder baseline"
    }

    fn train(&self, job: &TrainJob<'_>) -> Result<Trained> {
        let (model, report) = train_simple_encoder_decoder(job.train, job.test, job.config.latent, job.config)?;
        Ok(Trained {
            model: Box::new(model),
            reports: vec![report],
        })
    }

    fn load(&self, record: &ModelRecord) -> Result<Box<dyn Translator>> {
        let config: EncoderDecoderConfig = parse_config(record)?;
        Ok(Box::new(SimpleEncoderDecoder::from_parts(
            config,
            record.params.clone(),
        )?))
    }
}

struct SimpleSeq2SeqMethod;

impl Translator for SimpleSeq2Seq {
    fn method(&self) -> &str {
        "simple-seq2seq"
    }

    fn source_channels(&self) -> usize {
        self.config().source_channels
    }

    fn target_channels(&self) -> usize {
        self.config().target_channels
    }

    fn translate(&self, source: &Wave) -> Result<Translation> {
        Ok(Translation {
            wave: self.predict(source)?,
            attention: Vec::new(),
        })
    }

    fn to_record(&self) -> Result<ModelRecord> {
        record("simple-seq2seq", self.config(), self.params())
    }
}

impl TrainMethod for SimpleSeq2SeqMethod {
    fn name(&self) -> &'static str {
        "simple-seq2seq"
    }

    fn summary(&self) -> &'static str {
        "raw-window LSTM seq2seq baseline without attention"
    }

    fn train(&self, job: &TrainJob<'_>) -> Result<Trained> {
        let (model, report) = train_simple_seq2seq(job.train, job.test, job.config.encoder_width, job.config)?;
        Ok(Trained {
            model: Box::new(model),
            reports: vec![report],
        })
    }

    fn load(&self, record: &ModelRecord) -> Result<Box<dyn Translator>> {
        let config: Seq2SeqConfig = parse_config(record)?;
        Ok(Box::new(SimpleSeq2Seq::from_parts(config, record.params.clone())?))
    }
}
