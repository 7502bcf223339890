//! Flat `key=value` settings: per-command key tables, config files, and flag
//! overrides.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Arg, ArgMatches, Command};
use wave2wave::{Error, Result};

pub struct Key {
    pub name: &'static str,
    /// `None` marks a required key.
    pub default: Option<String>,
    pub help: &'static str,
}

pub fn key(name: &'static str, default: impl ToString, help: &'static str) -> Key {
    Key {
        name,
        default: Some(default.to_string()),
        help,
    }
}

pub fn required(name: &'static str, help: &'static str) -> Key {
    Key {
        name,
        default: None,
        help,
    }
}

pub const CONFIG_FILE: &str = "config.txt";

/// Adds one `--<key> <value>` flag per key plus `--config`.
pub fn command(name: &'static str, about: &'static str, keys: &[Key]) -> Command {
    let mut cmd = Command::new(name).about(about).arg(
        Arg::new("config")
            .long("config")
            .value_name("PATH")
            .help("key=value file; flags override its entries"),
    );
    for k in keys {
        let help = match &k.default {
            Some(d) if d.is_empty() => format!("{} [default: unset]", k.help),
            Some(d) => format!("{} [default: {d}]", k.help),
            None => format!("{} [required]", k.help),
        };
        cmd = cmd.arg(Arg::new(k.name).long(k.name).value_name("VALUE").help(help));
    }
    cmd
}

/// Resolved values in key-table order.
pub struct Settings {
    command: String,
    values: Vec<(&'static str, String)>,
}

impl Settings {
    pub fn resolve(command: &str, keys: &[Key], matches: &ArgMatches) -> Result<Self> {
        let mut file = BTreeMap::new();
        if let Some(path) = matches.get_one::<String>("config") {
            let text = fs::read_to_string(path)?;
            for (i, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let parse_err = |message: String| Error::Parse {
                    source_name: path.clone(),
                    line: i + 1,
                    message,
                };
                let (k, v) = line
                    .split_once('=')
                    .ok_or_else(|| parse_err(format!("expected key=value, found `{line}`")))?;
                let k = k.trim();
                if k == "command" {
                    if v.trim() != command {
                        return Err(parse_err(format!("file is for `{}`, not `{command}`", v.trim())));
                    }
                    continue;
                }
                if !keys.iter().any(|key| key.name == k) {
                    return Err(parse_err(format!("unknown key `{k}` for `{command}`")));
                }
                file.insert(k.to_string(), v.trim().to_string());
            }
        }
        let mut values = Vec::with_capacity(keys.len());
        for k in keys {
            let v = matches
                .get_one::<String>(k.name)
                .cloned()
                .or_else(|| file.get(k.name).cloned())
                .or_else(|| k.default.clone())
                .ok_or_else(|| Error::InvalidArgument(format!("`{command}` requires --{}", k.name)))?;
            values.push((k.name, v));
        }
        Ok(Self {
            command: command.to_string(),
            values,
        })
    }

    pub fn str(&self, name: &str) -> &str {
        self.values
            .iter()
            .find(|(k, _)| *k == name)
            .map(|(_, v)| v.as_str())
            .unwrap_or_else(|| panic!("key `{name}` missing from the command's table"))
    }

    pub fn parse<T: FromStr>(&self, name: &str) -> Result<T> {
        let raw = self.str(name);
        raw.parse()
            .map_err(|_| Error::InvalidArgument(format!("--{name}: cannot parse `{raw}`")))
    }

    /// `on`/`off` (also `true`/`false`, `yes`/`no`, `1`/`0`).
    pub fn flag(&self, name: &str) -> Result<bool> {
        match self.str(name) {
            "on" | "true" | "yes" | "1" => Ok(true),
            "off" | "false" | "no" | "0" => Ok(false),
            other => Err(Error::InvalidArgument(format!(
                "--{name}: expected on or off, got `{other}`"
            ))),
        }
    }

    /// A count where `auto` means "derive it".
    pub fn auto_count(&self, name: &str) -> Result<Option<usize>> {
        match self.str(name) {
            "auto" => Ok(None),
            _ => self.parse(name).map(Some),
        }
    }

    /// An optional path; empty means unset.
    pub fn path(&self, name: &str) -> Option<PathBuf> {
        let raw = self.str(name);
        (!raw.is_empty()).then(|| PathBuf::from(raw))
    }

    pub fn required_path(&self, name: &str) -> Result<PathBuf> {
        self.path(name)
            .ok_or_else(|| Error::InvalidArgument(format!("`{}` requires --{name}", self.command)))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command={}\n", self.command);
        for (k, v) in &self.values {
            writeln!(out, "{k}={v}").unwrap();
        }
        out
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.values.iter().map(|(k, v)| (*k, v.as_str()))
    }

    /// Creates `out` and writes the resolved settings into it.
    pub fn write_to(&self, out: &Path) -> Result<()> {
        fs::create_dir_all(out)?;
        fs::write(out.join(CONFIG_FILE), self.to_text())?;
        Ok(())
    }
}
