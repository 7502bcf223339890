use std::path::Path;

use wave2wave::data::{generate_quake_like, generate_toy, save_wave, Manifest, QuakeSpec, ToySpec};
use wave2wave::{Error, Result};

use crate::settings::{key, required, Key, Settings};

pub fn keys() -> Vec<Key> {
    let toy = ToySpec::default();
    let quake = QuakeSpec::default();
    vec![
        key(
            "kind",
            "toy",
            "toy (reversed sine sums) or quake (long-period to broadband envelopes)",
        ),
        key("pairs", toy.num_pairs, "number of pairs"),
        key("steps", toy.steps, "steps per wave"),
        key("channels", toy.channels, "channels per wave (toy)"),
        key("sines", toy.num_sines, "sines per channel (toy)"),
        key("magnitude-min", toy.magnitude.0, "smallest sine magnitude (toy)"),
        key("magnitude-max", toy.magnitude.1, "largest sine magnitude (toy)"),
        key("period-min", toy.period.0, "shortest sine period in steps (toy)"),
        key("period-max", toy.period.1, "longest sine period in steps (toy)"),
        key("sample-period", quake.sample_period, "seconds per step (quake)"),
        key(
            "cutoff-period",
            quake.cutoff_period,
            "shortest period kept in the source, seconds (quake)",
        ),
        key(
            "rms-window",
            quake.rms_window.map_or("none".into(), |w| w.to_string()),
            "RMS block in seconds, or none for raw traces (quake)",
        ),
        key("seed", 0, "generator seed"),
        required("out", "output directory"),
    ]
}

pub fn run(s: &Settings) -> Result<()> {
    let out = s.required_path("out")?;
    let pairs: usize = s.parse("pairs")?;
    let steps: usize = s.parse("steps")?;
    let seed: u64 = s.parse("seed")?;
    let dataset = match s.str("kind") {
        "toy" => generate_toy(&ToySpec {
            num_pairs: pairs,
            channels: s.parse("channels")?,
            steps,
            num_sines: s.parse("sines")?,
            magnitude: (s.parse("magnitude-min")?, s.parse("magnitude-max")?),
            period: (s.parse("period-min")?, s.parse("period-max")?),
            seed,
        })?,
        "quake" => generate_quake_like(&QuakeSpec {
            num_pairs: pairs,
            steps,
            sample_period: s.parse("sample-period")?,
            cutoff_period: s.parse("cutoff-period")?,
            rms_window: match s.str("rms-window") {
                "none" => None,
                _ => Some(s.parse("rms-window")?),
            },
            seed,
            ..QuakeSpec::default()
        })?,
        other => {
            return Err(Error::InvalidArgument(format!(
                "--kind must be toy or quake, got `{other}`"
            )))
        }
    };
    s.write_to(&out)?;
    let mut manifest = Manifest::new();
    for (k, v) in s.entries() {
        manifest.set(format!("config.{k}"), v);
    }
    for (i, pair) in dataset.pairs().iter().enumerate() {
        let (src, tgt) = (format!("source_{i:04}.csv"), format!("target_{i:04}.csv"));
        save_wave(&out.join(&src), &pair.source)?;
        save_wave(&out.join(&tgt), &pair.target)?;
        manifest.push_pair(i, &src, &tgt);
    }
    manifest.save(&out.join("manifest.txt"))?;
    log::info!("wrote {} pairs to {}", dataset.len(), Path::new(&out).display());
    Ok(())
}
