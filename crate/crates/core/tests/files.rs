use std::fs;

use rand::Rng;
use wave2wave::data::{load_model, load_wave, resolve, save_model, save_wave, Manifest, ModelRecord};
use wave2wave::model::{ModelConfig, Wave2Wave};
use wave2wave::signal::{PadPolicy, Wave};
use wave2wave::tensor::init::prng;
use wave2wave::Error;

fn random_wave(channels: usize, steps: usize, seed: u64) -> Wave {
    let mut rng = prng(seed);
    let data: Vec<Vec<f64>> = (0..channels)
        .map(|_| {
            (0..steps)
                .map(|_| rng.random_range(-1e3..1e3) * rng.random::<f64>())
                .collect()
        })
        .collect();
    Wave::from_channels(&data).unwrap().with_sample_period(Some(0.01))
}

#[test]
fn wave_file_round_trip_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..5 {
        let wave = random_wave(1 + seed as usize % 3, 40, seed);
        let path = dir.path().join(format!("w{seed}.csv"));
        save_wave(&path, &wave).unwrap();
        let back = load_wave(&path).unwrap();
        assert_eq!(back.sample_period(), wave.sample_period());
        for (a, b) in back.samples().iter().zip(wave.samples()) {
            assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0));
        }
    }
}

#[test]
fn empty_wave_file_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.csv");
    fs::write(&path, "").unwrap();
    assert!(load_wave(&path).is_err());
}

#[test]
fn model_file_on_disk_is_bit_exact_and_guarded() {
    let dir = tempfile::tempdir().unwrap();
    let config = ModelConfig {
        source_channels: 2,
        target_channels: 1,
        encoder_width: 3,
        decoder_width: 2,
        hidden: 4,
        decoder_steps: 3,
        input_feeding: true,
        pad_policy: PadPolicy::Truncate,
    };
    let (config, params) = Wave2Wave::init(config, 5).unwrap().into_parts();
    let record = ModelRecord {
        method: "wave2wave".into(),
        config: serde_json::to_value(&config).unwrap(),
        params,
    };
    let path = dir.path().join("model.json");
    save_model(&path, &record).unwrap();
    let back = load_model(&path).unwrap();
    assert_eq!(back.params, record.params);
    assert_eq!(back.config, record.config);

    let text = fs::read_to_string(&path).unwrap();
    let digit = text.rfind(|c: char| c.is_ascii_digit() && c != '0').unwrap();
    let mut corrupted = text.into_bytes();
    corrupted[digit] = b'0';
    fs::write(&path, corrupted).unwrap();
    assert!(matches!(load_model(&path), Err(Error::Checksum { .. })));
}

#[test]
fn manifest_paths_resolve_against_the_manifest_directory() {
    let dir = tempfile::tempdir().unwrap();
    let mut m = Manifest::new();
    m.push_pair(0, "a.csv", "b.csv");
    m.set("config.seed", 7);
    let path = dir.path().join("manifest.txt");
    m.save(&path).unwrap();
    let back = Manifest::load(&path).unwrap();
    assert_eq!(back, m);
    let (src, _) = &back.pairs().unwrap()[0];
    assert_eq!(resolve(&path, src), dir.path().join("a.csv"));
    assert_eq!(resolve(&path, "/abs/x.csv"), std::path::PathBuf::from("/abs/x.csv"));
}
