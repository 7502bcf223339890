//! JSON model files with a CRC-32 over the parameter block.

use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::model::ParamSet;
use crate::tensor::Array2;

pub const MODEL_FILE_VERSION: u32 = 1;

/// A trained model as stored on disk: method name, its configuration, and
/// the named parameter arrays.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelRecord {
    pub method: String,
    pub config: Value,
    pub params: ParamSet,
}

fn params_block(params: &ParamSet) -> Value {
    let mut map = Map::new();
    for (name, value) in params.iter() {
        map.insert(
            name.to_string(),
            json!({ "shape": [value.rows(), value.cols()], "values": value.data() }),
        );
    }
    Value::Object(map)
}

fn checksum(block: &Value) -> Result<u32> {
    Ok(crc32fast::hash(serde_json::to_string(block)?.as_bytes()))
}

pub fn model_to_string(record: &ModelRecord) -> Result<String> {
    if let Some((name, _)) = record.params.iter().find(|(_, v)| !v.is_finite()) {
        return Err(Error::InvalidArgument(format!("parameter `{name}` is not finite")));
    }
    let block = params_block(&record.params);
    let doc = json!({
        "version": MODEL_FILE_VERSION,
        "method": record.method,
        "config": record.config,
        "checksum": checksum(&block)?,
        "params": block,
    });
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    Ok(text)
}

pub fn parse_model(text: &str) -> Result<ModelRecord> {
    let doc: Value = serde_json::from_str(text)?;
    let field = |name: &str| {
        doc.get(name)
            .ok_or_else(|| Error::InvalidArgument(format!("model file lacks `{name}`")))
    };
    let version = field("version")?
        .as_u64()
        .ok_or_else(|| Error::InvalidArgument("`version` must be an integer".into()))?;
    if version != u64::from(MODEL_FILE_VERSION) {
        return Err(Error::Version {
            found: u32::try_from(version).unwrap_or(u32::MAX),
            expected: MODEL_FILE_VERSION,
        });
    }
    let stored = field("checksum")?
        .as_u64()
        .and_then(|v| u32::try_from(v).ok())
        .ok_or_else(|| Error::InvalidArgument("`checksum` must be a 32-bit integer".into()))?;
    let block = field("params")?;
    let computed = checksum(block)?;
    if stored != computed {
        return Err(Error::Checksum { stored, computed });
    }
    let method = field("method")?
        .as_str()
        .ok_or_else(|| Error::InvalidArgument("`method` must be a string".into()))?
        .to_string();
    let config = field("config")?.clone();

    let entries = block
        .as_object()
        .ok_or_else(|| Error::InvalidArgument("`params` must be an object".into()))?;
    let mut params = ParamSet::new();
    for (name, entry) in entries {
        #[derive(serde::Deserialize)]
        struct Entry {
            shape: (usize, usize),
            values: Vec<f64>,
        }
        let e: Entry = serde_json::from_value(entry.clone())?;
        params.push(name.clone(), Array2::new(e.shape.0, e.shape.1, e.values)?);
    }
    Ok(ModelRecord { method, config, params })
}

pub fn save_model(path: &Path, record: &ModelRecord) -> Result<()> {
    fs::write(path, model_to_string(record)?)?;
    Ok(())
}

pub fn load_model(path: &Path) -> Result<ModelRecord> {
    parse_model(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ModelRecord {
        let mut params = ParamSet::new();
        params.push("z.last", Array2::row(vec![0.1, -1.0 / 3.0, 1e-300]));
        params.push("a.first", Array2::from_rows(&[&[1.5, 2.0], &[-0.0, 7e10]]));
        ModelRecord {
            method: "wave2wave".into(),
            config: json!({ "hidden": 2 }),
            params,
        }
    }

    #[test]
    fn round_trip_is_bit_exact_and_keeps_order() {
        let r = sample();
        let back = parse_model(&model_to_string(&r).unwrap()).unwrap();
        assert_eq!(back.params.names(), r.params.names());
        for (a, b) in r.params.values().iter().zip(back.params.values()) {
            assert_eq!(a.shape(), b.shape());
            for (x, y) in a.data().iter().zip(b.data()) {
                assert_eq!(x.to_bits(), y.to_bits());
            }
        }
        assert_eq!(back.method, "wave2wave");
        assert_eq!(back.config, r.config);
    }

    #[test]
    fn corrupted_value_fails_checksum() {
        let text = model_to_string(&sample()).unwrap();
        let corrupted = text.replacen("7", "8", 1);
        assert_ne!(text, corrupted);
        assert!(matches!(parse_model(&corrupted), Err(Error::Checksum { .. })));
    }

    #[test]
    fn wrong_version_rejected() {
        let text = model_to_string(&sample())
            .unwrap()
            .replace("\"version\": 1", "\"version\": 2");
        assert!(matches!(
            parse_model(&text),
            Err(Error::Version { found: 2, expected: 1 })
        ));
    }
}
