use std::fs;
use std::path::Path;

use wave2wave::data::{load_model, load_wave, EvalReport};
use wave2wave::signal::{crop_or_pad, Wave};
use wave2wave::train::MethodRegistry;
use wave2wave::{Error, Result};

use crate::io::{wave_paths, Side};
use crate::settings::{key, required, Key, Settings};

pub fn keys() -> Vec<Key> {
    vec![
        key("model", "", "model file; translates the sources of --manifest"),
        key("manifest", "", "reference pairs for --model"),
        key(
            "predictions",
            "",
            "manifest of predicted waves (series, or pair sources)",
        ),
        key(
            "references",
            "",
            "manifest of reference waves (series, or pair targets)",
        ),
        key("sigma", 1.0, "Gaussian standard deviation for perplexity"),
        key("seed", 0, "unused; accepted for uniformity"),
        required("out", "output directory"),
    ]
}

fn display_id(p: &Path) -> String {
    p.display().to_string()
}

/// Predictions longer than their reference are cropped to it; shorter ones
/// are rejected by the shape check.
fn align(pred: Wave, reference: &Wave) -> Result<Wave> {
    if pred.steps() > reference.steps() {
        crop_or_pad(&pred, reference.steps())
    } else {
        Ok(pred)
    }
}

pub fn run(s: &Settings) -> Result<()> {
    let out = s.required_path("out")?;
    let sigma: f64 = s.parse("sigma")?;
    let (model_id, dataset_id, pairs) = match (
        s.path("model"),
        s.path("manifest"),
        s.path("predictions"),
        s.path("references"),
    ) {
        (Some(model_path), Some(manifest), None, None) => {
            let model = MethodRegistry::builtin().load(&load_model(&model_path)?)?;
            let sources = wave_paths(&manifest, Side::Source)?;
            let targets = wave_paths(&manifest, Side::Target)?;
            let mut pairs = Vec::with_capacity(sources.len());
            for (i, (src, tgt)) in sources.iter().zip(&targets).enumerate() {
                let reference = load_wave(tgt)?;
                let pred = align(model.translate(&load_wave(src)?)?.wave, &reference)?;
                pairs.push((format!("pair_{i:04}"), pred, reference));
            }
            (display_id(&model_path), display_id(&manifest), pairs)
        }
        (None, None, Some(preds), Some(refs)) => {
            let p = wave_paths(&preds, Side::Source)?;
            let r = wave_paths(&refs, Side::Target)?;
            if p.len() != r.len() {
                return Err(Error::InvalidArgument(format!(
                    "mismatched pair lists: {} predictions, {} references",
                    p.len(),
                    r.len()
                )));
            }
            let mut pairs = Vec::with_capacity(p.len());
            for (i, (pp, rp)) in p.iter().zip(&r).enumerate() {
                let reference = load_wave(rp)?;
                pairs.push((format!("pair_{i:04}"), align(load_wave(pp)?, &reference)?, reference));
            }
            (display_id(&preds), display_id(&refs), pairs)
        }
        _ => {
            return Err(Error::InvalidArgument(
                "evaluate needs --model with --manifest, or --predictions with --references".into(),
            ))
        }
    };
    let report = EvalReport::score(&model_id, &dataset_id, sigma, &pairs)?;
    s.write_to(&out)?;
    fs::write(out.join("eval.csv"), report.to_csv())?;
    println!("mse={} perplexity={}", report.mse, report.perplexity);
    Ok(())
}
