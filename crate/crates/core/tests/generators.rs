use std::f64::consts::PI;

use wave2wave::data::{generate_quake_like, generate_toy, split_counts, QuakeSpec, ToySpec};
use wave2wave::signal::{iq_decompose, window_steps_for};
use wave2wave::train::Dataset;

/// Energy of DFT bins with frequency index at least `from`, by direct summation.
fn band_energy(x: &[f64], from: usize) -> f64 {
    let n = x.len();
    (from..=n / 2)
        .map(|k| {
            let (mut re, mut im) = (0.0, 0.0);
            for (t, &v) in x.iter().enumerate() {
                let a = 2.0 * PI * (k * t % n) as f64 / n as f64;
                re += v * a.cos();
                im -= v * a.sin();
            }
            re * re + im * im
        })
        .sum()
}

fn argmax(x: &[f64]) -> usize {
    x.iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap()
}

fn raw_quake(num_pairs: usize, seed: u64) -> (QuakeSpec, Dataset) {
    let spec = QuakeSpec {
        num_pairs,
        rms_window: None,
        seed,
        ..QuakeSpec::default()
    };
    let data = generate_quake_like(&spec).unwrap();
    (spec, data)
}

#[test]
fn quake_source_has_no_short_period_energy() {
    let (spec, data) = raw_quake(6, 3);
    for p in data.pairs() {
        let x = p.source.channel(0);
        let y = p.target.channel(0);
        let cutoff = spec.cutoff_bin(x.len());
        let total: f64 = x.iter().map(|v| v * v).sum::<f64>() * x.len() as f64;
        assert!(band_energy(x, cutoff) < 1e-20 * total.max(1.0));
        assert!(band_energy(y, cutoff) > 1e-3 * total);
        assert!(band_energy(x, 1) > 0.0);
    }
}

#[test]
fn quake_envelope_peaks_coincide_within_one_block() {
    let spec = QuakeSpec {
        num_pairs: 128,
        seed: 12,
        ..QuakeSpec::default()
    };
    let block = window_steps_for(spec.rms_window.unwrap(), spec.sample_period).unwrap();
    let data = generate_quake_like(&spec).unwrap();
    for (i, p) in data.pairs().iter().enumerate() {
        let a = argmax(p.source.channel(0)) as isize;
        let b = argmax(p.target.channel(0)) as isize;
        assert!((a - b).unsigned_abs() <= block, "pair {i}: peaks at {a} and {b}");
        assert_eq!(p.source.steps(), spec.steps);
        assert_eq!(p.source.sample_period(), Some(spec.sample_period));
    }
}

#[test]
fn quake_is_deterministic_and_seed_dependent() {
    let a = generate_quake_like(&QuakeSpec {
        num_pairs: 3,
        ..QuakeSpec::default()
    })
    .unwrap();
    let b = generate_quake_like(&QuakeSpec {
        num_pairs: 3,
        ..QuakeSpec::default()
    })
    .unwrap();
    let c = generate_quake_like(&QuakeSpec {
        num_pairs: 3,
        seed: 1,
        ..QuakeSpec::default()
    })
    .unwrap();
    assert_eq!(a.pairs(), b.pairs());
    assert_ne!(a.pairs(), c.pairs());
}

#[test]
fn invalid_quake_spec_rejected() {
    let carrier_below_cutoff = QuakeSpec {
        low_period: (0.5, 0.8),
        ..QuakeSpec::default()
    };
    assert!(generate_quake_like(&carrier_below_cutoff).is_err());
    assert!(generate_quake_like(&QuakeSpec {
        num_pairs: 0,
        ..QuakeSpec::default()
    })
    .is_err());
}

#[test]
fn one_motion_gives_three_series() {
    let (_, data) = raw_quake(4, 0);
    let mut derived = 0;
    for p in data.pairs() {
        derived += iq_decompose(&p.target).unwrap().into_array().len();
    }
    assert_eq!(derived, 3 * data.len());
}

#[test]
fn paper_scale_split_counts() {
    let data = generate_toy(&ToySpec {
        num_pairs: 374,
        steps: 8,
        ..ToySpec::default()
    })
    .unwrap();
    let (train, test) = split_counts(&data, 365, 5).unwrap();
    assert_eq!((train.len(), test.len()), (365, 9));
}
