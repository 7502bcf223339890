use wave2wave::model::ModelConfig;
use wave2wave::signal::PadPolicy;
use wave2wave::train::model_grad_check;

fn tiny(source_channels: usize, target_channels: usize, input_feeding: bool) -> ModelConfig {
    ModelConfig {
        source_channels,
        target_channels,
        encoder_width: 2,
        decoder_width: 2,
        hidden: 3,
        decoder_steps: 4,
        input_feeding,
        pad_policy: PadPolicy::ZeroPad,
    }
}

#[test]
fn full_model_gradients_on_five_seeds() {
    for seed in 0..5 {
        let report = model_grad_check(&tiny(1, 1, false), 8, seed, 1e-4).unwrap();
        assert!(report.passed, "seed {seed}: {:?}", report.worst());
        assert_eq!(report.per_param.len(), 13);
    }
}

#[test]
fn input_feeding_and_multichannel_gradients() {
    for (config, steps) in [(tiny(1, 1, true), 8), (tiny(2, 3, false), 7), (tiny(3, 2, true), 5)] {
        let report = model_grad_check(&config, steps, 9, 1e-4).unwrap();
        assert!(report.passed, "{config:?}: {:?}", report.worst());
    }
}

#[test]
fn rounding_floor_fails_an_impossible_tolerance() {
    let report = model_grad_check(&tiny(1, 1, false), 8, 0, 1e-12).unwrap();
    assert!(!report.passed);
    assert!(report.worst().is_some());
}
