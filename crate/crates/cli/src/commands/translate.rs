use std::fs;
use std::path::Path;

use wave2wave::data::{attention_csv, load_model, load_wave, save_wave, Manifest};
use wave2wave::train::{MethodRegistry, Translator};
use wave2wave::{Error, Result};

use crate::io::{wave_paths, Side};
use crate::settings::{key, required, Key, Settings};

pub fn keys() -> Vec<Key> {
    vec![
        required("model", "model file"),
        key("source", "", "one source wave file"),
        key("manifest", "", "translate every source listed in this manifest"),
        key("seed", 0, "unused; accepted for uniformity"),
        required("out", "output directory"),
    ]
}

/// Writes `<stem>.csv` and its attention traces.
fn translate_one(model: &dyn Translator, source: &Path, out: &Path, stem: &str) -> Result<String> {
    let t = model.translate(&load_wave(source)?)?;
    let name = format!("{stem}.csv");
    save_wave(&out.join(&name), &t.wave)?;
    let single = t.attention.len() == 1;
    for (j, trace) in t.attention.iter().enumerate() {
        let file = if single {
            format!("{stem}_attention.csv")
        } else {
            format!("{stem}_attention_ch{j}.csv")
        };
        fs::write(out.join(file), attention_csv(&trace.weights))?;
    }
    Ok(name)
}

pub fn run(s: &Settings) -> Result<()> {
    let out = s.required_path("out")?;
    let record = load_model(&s.required_path("model")?)?;
    let model = MethodRegistry::builtin().load(&record)?;
    let sources = match (s.path("source"), s.path("manifest")) {
        (Some(src), None) => vec![src],
        (None, Some(m)) => wave_paths(&m, Side::Source)?,
        _ => {
            return Err(Error::InvalidArgument(
                "translate needs exactly one of --source or --manifest".into(),
            ))
        }
    };
    s.write_to(&out)?;
    let mut manifest = Manifest::new();
    for (k, v) in s.entries() {
        manifest.set(format!("config.{k}"), v);
    }
    for (i, src) in sources.iter().enumerate() {
        let stem = if sources.len() == 1 && s.path("source").is_some() {
            "prediction".to_string()
        } else {
            format!("prediction_{i:04}")
        };
        let name = translate_one(model.as_ref(), src, &out, &stem)?;
        manifest.push_series(i, &name);
    }
    manifest.save(&out.join("manifest.txt"))?;
    Ok(())
}
