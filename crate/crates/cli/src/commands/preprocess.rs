use wave2wave::data::{load_wave, resolve, save_wave, Manifest};
use wave2wave::signal::{crop_or_pad, iq_decompose, rms_envelope, Wave};
use wave2wave::Result;

use crate::settings::{key, required, Key, Settings};

pub fn keys() -> Vec<Key> {
    vec![
        required("manifest", "input manifest"),
        key("length", 0, "crop or zero-pad to this many steps; 0 keeps lengths"),
        key("rms-window", 20, "RMS envelope block in steps; 0 disables"),
        key(
            "iq",
            "off",
            "split each wave into in-phase, quadrature and magnitude series",
        ),
        key("seed", 0, "unused; accepted for uniformity"),
        required("out", "output directory"),
    ]
}

const COMPONENTS: [&str; 3] = ["in_phase", "quadrature", "magnitude"];

/// Crop, then optionally split into analytic components, then envelope each.
fn derive(wave: &Wave, length: usize, rms: usize, iq: bool) -> Result<Vec<Wave>> {
    let base = if length > 0 {
        crop_or_pad(wave, length)?
    } else {
        wave.clone()
    };
    let parts = if iq {
        let c = iq_decompose(&base)?;
        vec![c.in_phase, c.quadrature, c.magnitude]
    } else {
        vec![base]
    };
    parts
        .into_iter()
        .map(|w| if rms > 0 { rms_envelope(&w, rms) } else { Ok(w) })
        .collect()
}

fn file_name(role: &str, index: usize, component: Option<&str>) -> String {
    match component {
        Some(c) => format!("{role}_{index:04}_{c}.csv"),
        None => format!("{role}_{index:04}.csv"),
    }
}

pub fn run(s: &Settings) -> Result<()> {
    let input = s.required_path("manifest")?;
    let out = s.required_path("out")?;
    let length: usize = s.parse("length")?;
    let rms: usize = s.parse("rms-window")?;
    let iq = s.flag("iq")?;
    let source = Manifest::load(&input)?;

    let mut written = Vec::new();
    let mut manifest = Manifest::new();
    for (k, v) in s.entries() {
        manifest.set(format!("config.{k}"), v);
    }
    let components: Vec<Option<&str>> = if iq {
        COMPONENTS.iter().map(|c| Some(*c)).collect()
    } else {
        vec![None]
    };
    let mut index = 0;
    for (i, (src, tgt)) in source.pairs()?.iter().enumerate() {
        let xs = derive(&load_wave(&resolve(&input, src))?, length, rms, iq)?;
        let ys = derive(&load_wave(&resolve(&input, tgt))?, length, rms, iq)?;
        for ((x, y), comp) in xs.into_iter().zip(ys).zip(&components) {
            let (sn, tn) = (file_name("source", i, *comp), file_name("target", i, *comp));
            manifest.push_pair(index, &sn, &tn);
            manifest.set(format!("pair.{index:04}.origin"), i);
            if let Some(c) = comp {
                manifest.set(format!("pair.{index:04}.component"), c);
            }
            written.push((sn, x));
            written.push((tn, y));
            index += 1;
        }
    }
    let mut series_index = 0;
    for (i, path) in source.series().iter().enumerate() {
        let parts = derive(&load_wave(&resolve(&input, path))?, length, rms, iq)?;
        for (w, comp) in parts.into_iter().zip(&components) {
            let name = file_name("series", i, *comp);
            manifest.push_series(series_index, &name);
            series_index += 1;
            written.push((name, w));
        }
    }
    s.write_to(&out)?;
    for (name, wave) in &written {
        save_wave(&out.join(name), wave)?;
    }
    manifest.save(&out.join("manifest.txt"))?;
    log::info!("wrote {} wave files to {}", written.len(), out.display());
    Ok(())
}
