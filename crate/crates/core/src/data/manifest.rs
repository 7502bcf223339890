//! `key=value` manifests listing dataset files and the settings that made them.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Manifest {
    entries: Vec<(String, String)>,
}

impl Manifest {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `key`, replacing an earlier value in place.
    pub fn set(&mut self, key: impl Into<String>, value: impl ToString) {
        let key = key.into();
        let value = value.to_string();
        match self.entries.iter_mut().find(|(k, _)| *k == key) {
            Some(slot) => slot.1 = value,
            None => self.entries.push((key, value)),
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key)
            .ok_or_else(|| Error::InvalidArgument(format!("manifest lacks `{key}`")))
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    /// Entries whose key starts with `prefix`, prefix removed.
    pub fn with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = (&'a str, &'a str)> + 'a {
        self.entries
            .iter()
            .filter_map(move |(k, v)| Some((k.strip_prefix(prefix)?, v.as_str())))
    }

    pub fn push_pair(&mut self, index: usize, source: &str, target: &str) {
        self.set(format!("pair.{index:04}.source"), source);
        self.set(format!("pair.{index:04}.target"), target);
    }

    /// Paired file names in index order.
    pub fn pairs(&self) -> Result<Vec<(String, String)>> {
        let mut out = Vec::new();
        for i in 0.. {
            let s = self.get(&format!("pair.{i:04}.source"));
            let t = self.get(&format!("pair.{i:04}.target"));
            match (s, t) {
                (Some(s), Some(t)) => out.push((s.to_string(), t.to_string())),
                (None, None) => break,
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "manifest pair {i} lacks its source or target"
                    )))
                }
            }
        }
        Ok(out)
    }

    /// Single-file series (`series.NNNN=file`) in index order.
    pub fn series(&self) -> Vec<String> {
        (0..)
            .map_while(|i| self.get(&format!("series.{i:04}")).map(str::to_string))
            .collect()
    }

    pub fn push_series(&mut self, index: usize, file: &str) {
        self.set(format!("series.{index:04}"), file);
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            writeln!(out, "{k}={v}").unwrap();
        }
        out
    }

    pub fn parse(text: &str, source_name: &str) -> Result<Self> {
        let mut m = Self::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                source_name: source_name.to_string(),
                line: i + 1,
                message: format!("expected key=value, found `{line}`"),
            })?;
            m.set(k.trim(), v.trim());
        }
        Ok(m)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?, &path.display().to_string())
    }
}

/// Resolves a manifest entry relative to the manifest's directory.
pub fn resolve(manifest_path: &Path, entry: &str) -> PathBuf {
    let p = Path::new(entry);
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        manifest_path.parent().unwrap_or(Path::new(".")).join(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_pairs() {
        let mut m = Manifest::new();
        m.set("kind", "toy");
        m.push_pair(0, "s0.csv", "t0.csv");
        m.push_pair(1, "s1.csv", "t1.csv");
        let back = Manifest::parse(&m.to_text(), "m").unwrap();
        assert_eq!(back, m);
        assert_eq!(back.pairs().unwrap().len(), 2);
        assert_eq!(back.get("kind"), Some("toy"));
    }

    #[test]
    fn half_pair_is_an_error() {
        let m = Manifest::parse("pair.0000.source=a\n", "m").unwrap();
        assert!(m.pairs().is_err());
        assert!(Manifest::parse("novalue\n", "m").is_err());
    }
}
