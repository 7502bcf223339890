use proptest::prelude::*;
use wave2wave::signal::{assemble, rms_envelope, segment, temporal_pyramid, PadPolicy, Wave};
use wave2wave::tensor::{grad_check, Array2, NodeId, Tape};
use wave2wave::Result;

fn wave_strategy(max_channels: usize, max_steps: usize) -> impl Strategy<Value = Wave> {
    (1..=max_channels, 1..=max_steps).prop_flat_map(|(c, t)| {
        prop::collection::vec(-10.0..10.0_f64, c * t)
            .prop_map(move |v| Wave::from_channels(&v.chunks(t).map(<[f64]>::to_vec).collect::<Vec<_>>()).unwrap())
    })
}

#[derive(Clone, Copy, Debug)]
enum Op {
    Tanh,
    Sigmoid,
    Square,
    MatmulW,
    Softmax,
    SelfProduct,
    Scale(f64),
    Transpose2,
}

fn op_strategy() -> impl Strategy<Value = Op> {
    prop_oneof![
        Just(Op::Tanh),
        Just(Op::Sigmoid),
        Just(Op::Square),
        Just(Op::MatmulW),
        Just(Op::Softmax),
        Just(Op::SelfProduct),
        (-2.0..2.0_f64).prop_map(Op::Scale),
        Just(Op::Transpose2),
    ]
}

fn apply(tape: &mut Tape, op: Op, x: NodeId, w: NodeId) -> Result<NodeId> {
    match op {
        Op::Tanh => tape.tanh(x),
        Op::Sigmoid => tape.sigmoid(x),
        Op::Square => tape.square(x),
        Op::MatmulW => tape.matmul(x, w),
        Op::Softmax => tape.softmax_row(x),
        Op::SelfProduct => tape.mul(x, x),
        Op::Scale(s) => tape.scale(x, s),
        Op::Transpose2 => {
            let t = tape.transpose(x)?;
            tape.transpose(t)
        }
    }
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Array2> {
    prop::collection::vec(-1.5..1.5_f64, rows * cols).prop_map(move |v| Array2::new(rows, cols, v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn zero_pad_segment_assemble_round_trip(wave in wave_strategy(4, 120), width in 1usize..40) {
        let windows = segment(&wave, width, PadPolicy::ZeroPad).unwrap();
        prop_assert_eq!(windows.len(), wave.steps().div_ceil(width));
        prop_assert_eq!(assemble(&windows, wave.steps()).unwrap(), wave);
    }

    #[test]
    fn truncate_on_exact_multiples_round_trips(wave in wave_strategy(3, 30), k in 1usize..5) {
        let steps = wave.steps() * k;
        let tiled: Vec<Vec<f64>> = (0..wave.channels())
            .map(|c| wave.channel(c).iter().copied().cycle().take(steps).collect())
            .collect();
        let tiled = Wave::from_channels(&tiled).unwrap();
        let windows = segment(&tiled, wave.steps(), PadPolicy::Truncate).unwrap();
        prop_assert_eq!(windows.len(), k);
        prop_assert_eq!(assemble(&windows, steps).unwrap(), tiled);
    }

    #[test]
    fn rms_envelope_ignores_sign(wave in wave_strategy(3, 80), window in 1usize..30) {
        let flipped = wave.map(|x| -x).unwrap();
        let a = rms_envelope(&wave, window).unwrap();
        prop_assert_eq!(&a, &rms_envelope(&flipped, window).unwrap());
        prop_assert_eq!(a.steps(), wave.steps());
        prop_assert!(a.samples().iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn pyramid_multiplies_channels(wave in wave_strategy(3, 40), steps in prop::collection::vec(1usize..5, 1..4)) {
        let p = temporal_pyramid(&wave, &steps).unwrap();
        prop_assert_eq!(p.channels(), wave.channels() * steps.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn random_three_op_graphs_match_finite_differences(
        x in matrix(2, 3),
        w in matrix(3, 3),
        ops in prop::collection::vec(op_strategy(), 3),
    ) {
        let names = vec!["x".to_string(), "w".to_string()];
        let report = grad_check(
            &names,
            &[x, w],
            |tape, p| {
                let mut node = p[0];
                for &op in &ops {
                    node = apply(tape, op, node, p[1])?;
                }
                tape.sum(node)
            },
            1e-4,
        )
        .unwrap();
        prop_assert!(report.passed, "{:?}: {:?}", ops, report.worst());
    }
}
