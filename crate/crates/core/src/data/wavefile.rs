//! Delimited text wave files.
//!
//! ```text
//! # sample_period=0.01
//! ch0,ch1
//! 0.5,-1.25
//! ...
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::signal::Wave;

const PERIOD_PREFIX: &str = "# sample_period=";

pub fn default_channel_names(channels: usize) -> Vec<String> {
    (0..channels).map(|c| format!("ch{c}")).collect()
}

/// Serializes with shortest round-trip decimals, so parsing is bit-exact.
pub fn wave_to_string(wave: &Wave, names: Option<&[String]>) -> Result<String> {
    let defaults;
    let names = match names {
        Some(n) if n.len() == wave.channels() => n,
        Some(n) => {
            return Err(Error::ShapeMismatch {
                op: "save_wave",
                detail: format!("{} names for {} channels", n.len(), wave.channels()),
            })
        }
        None => {
            defaults = default_channel_names(wave.channels());
            &defaults
        }
    };
    if let Some(bad) = names.iter().find(|n| n.contains([',', '\n', '\r'])) {
        return Err(Error::InvalidArgument(format!(
            "channel name {bad:?} contains a delimiter"
        )));
    }
    let mut out = String::new();
    match wave.sample_period() {
        Some(p) => writeln!(out, "{PERIOD_PREFIX}{p}").unwrap(),
        None => writeln!(out, "{PERIOD_PREFIX}none").unwrap(),
    }
    writeln!(out, "{}", names.join(",")).unwrap();
    for t in 0..wave.steps() {
        for c in 0..wave.channels() {
            if c > 0 {
                out.push(',');
            }
            write!(out, "{}", wave.at(c, t)).unwrap();
        }
        out.push('\n');
    }
    Ok(out)
}

/// Parses a wave file body; `source_name` labels errors.
pub fn parse_wave(text: &str, source_name: &str) -> Result<(Wave, Vec<String>)> {
    let err = |line: usize, message: String| Error::Parse {
        source_name: source_name.to_string(),
        line,
        message,
    };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end_matches('\r')));

    let (n, first) = lines.next().ok_or_else(|| err(1, "empty file".into()))?;
    let period = first
        .strip_prefix(PERIOD_PREFIX)
        .ok_or_else(|| err(n, format!("expected `{PERIOD_PREFIX}<seconds>`")))?
        .trim();
    let sample_period = match period {
        "none" => None,
        p => match p.parse::<f64>() {
            Ok(v) if v > 0.0 && v.is_finite() => Some(v),
            _ => return Err(err(n, format!("invalid sample period `{p}`"))),
        },
    };

    let (n, header) = lines.next().ok_or_else(|| err(2, "missing channel header".into()))?;
    let names: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
    if names.iter().any(String::is_empty) {
        return Err(err(n, "empty channel name".into()));
    }
    let channels = names.len();

    let mut columns = vec![Vec::new(); channels];
    for (n, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != channels {
            return Err(err(n, format!("expected {channels} values, found {}", fields.len())));
        }
        for (col, f) in columns.iter_mut().zip(fields) {
            let v: f64 = f
                .trim()
                .parse()
                .map_err(|_| err(n, format!("invalid number `{}`", f.trim())))?;
            if !v.is_finite() {
                return Err(err(n, format!("non-finite value `{}`", f.trim())));
            }
            col.push(v);
        }
    }
    if columns[0].is_empty() {
        return Err(err(text.lines().count() + 1, "no samples".into()));
    }
    let wave = Wave::from_channels(&columns)?.with_sample_period(sample_period);
    Ok((wave, names))
}

pub fn save_wave(path: &Path, wave: &Wave) -> Result<()> {
    fs::write(path, wave_to_string(wave, None)?)?;
    Ok(())
}

pub fn save_wave_named(path: &Path, wave: &Wave, names: &[String]) -> Result<()> {
    fs::write(path, wave_to_string(wave, Some(names))?)?;
    Ok(())
}

pub fn load_wave(path: &Path) -> Result<Wave> {
    let text = fs::read_to_string(path)?;
    Ok(parse_wave(&text, &path.display().to_string())?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let w = Wave::from_channels(&[vec![0.1, -2.5e-17, 1.0 / 3.0], vec![std::f64::consts::PI, 1e300, -0.0]])
            .unwrap()
            .with_sample_period(Some(0.01));
        let (back, names) = parse_wave(&wave_to_string(&w, None).unwrap(), "t").unwrap();
        assert_eq!(names, ["ch0", "ch1"]);
        assert_eq!(back.sample_period(), Some(0.01));
        for (a, b) in w.samples().iter().zip(back.samples()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn missing_period_round_trips() {
        let w = Wave::mono(vec![1.0, 2.0]).unwrap();
        let text = wave_to_string(&w, None).unwrap();
        assert!(text.starts_with("# sample_period=none\n"));
        assert_eq!(parse_wave(&text, "t").unwrap().0, w);
    }

    #[test]
    fn empty_file_is_an_error() {
        assert!(matches!(parse_wave("", "e"), Err(Error::Parse { line: 1, .. })));
        let header_only = "# sample_period=none\nch0\n";
        assert!(parse_wave(header_only, "e").is_err());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "# sample_period=0.5\na,b\n1,2\n3\n";
        match parse_wave(text, "w.csv") {
            Err(Error::Parse { line, source_name, .. }) => {
                assert_eq!(line, 4);
                assert_eq!(source_name, "w.csv");
            }
            other => panic!("{other:?}"),
        }
        let text = "# sample_period=0.5\na\n1\nx\n";
        assert!(matches!(parse_wave(text, "w"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(parse_wave("hello\n", "w"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn three_channel_triple_with_names() {
        let names: Vec<String> = ["in_phase", "quadrature", "magnitude"].map(String::from).to_vec();
        let w = Wave::from_channels(&[vec![1.0], vec![0.0], vec![1.0]]).unwrap();
        let text = wave_to_string(&w, Some(&names)).unwrap();
        let (back, got) = parse_wave(&text, "t").unwrap();
        assert_eq!(back.channels(), 3);
        assert_eq!(got, names);
    }
}
