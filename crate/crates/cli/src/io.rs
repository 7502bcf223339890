//! Loading datasets and wave lists named by manifests.

use std::path::{Path, PathBuf};

use wave2wave::data::{load_wave, resolve, Manifest};
use wave2wave::signal::Wave;
use wave2wave::train::{Dataset, Split, WavePair};
use wave2wave::{Error, Result};

pub fn load_dataset(manifest_path: &Path, split: Split) -> Result<Dataset> {
    let manifest = Manifest::load(manifest_path)?;
    let pairs = manifest.pairs()?;
    if pairs.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "{} lists no pairs",
            manifest_path.display()
        )));
    }
    let pairs = pairs
        .iter()
        .map(|(s, t)| {
            Ok(WavePair::new(
                load_wave(&resolve(manifest_path, s))?,
                load_wave(&resolve(manifest_path, t))?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Dataset::new(pairs, split)
}

/// Which side of each pair to take when a manifest has no `series` entries.
#[derive(Clone, Copy)]
pub enum Side {
    Source,
    Target,
}

/// Files listed as `series.NNNN`, or one side of the pairs.
pub fn wave_paths(manifest_path: &Path, side: Side) -> Result<Vec<PathBuf>> {
    let manifest = Manifest::load(manifest_path)?;
    let series = manifest.series();
    let names = if series.is_empty() {
        manifest
            .pairs()?
            .into_iter()
            .map(|(s, t)| match side {
                Side::Source => s,
                Side::Target => t,
            })
            .collect()
    } else {
        series
    };
    Ok(names.iter().map(|n| resolve(manifest_path, n)).collect())
}

pub fn load_waves(manifest_path: &Path, side: Side) -> Result<Vec<Wave>> {
    wave_paths(manifest_path, side)?.iter().map(|p| load_wave(p)).collect()
}
