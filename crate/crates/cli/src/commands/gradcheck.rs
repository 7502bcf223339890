use std::fmt::Write as _;
use std::fs;

use wave2wave::model::ModelConfig;
use wave2wave::tensor::GradCheckReport;
use wave2wave::train::model_grad_check;
use wave2wave::Result;

use crate::settings::{key, Key, Settings};

pub fn keys() -> Vec<Key> {
    vec![
        key("source-channels", 1, "source channels"),
        key("target-channels", 1, "target channels"),
        key("steps", 8, "source steps"),
        key("width", 2, "window width on both sides"),
        key("hidden", 3, "hidden size"),
        key("decoder-steps", 4, "decoder steps"),
        key(
            "input-feeding",
            "off",
            "feed the previous output representation to the decoder",
        ),
        key("tolerance", 1e-4, "largest accepted relative error"),
        key("seed", 0, "parameter and data seed"),
        key("out", "", "directory for gradcheck.csv"),
    ]
}

pub fn report_csv(r: &GradCheckReport) -> String {
    let mut out = String::from("param,max_rel_error,worst_index,analytic,numeric\n");
    for p in &r.per_param {
        writeln!(
            out,
            "{},{},{},{},{}",
            p.name, p.max_rel_error, p.worst_index, p.analytic, p.numeric
        )
        .unwrap();
    }
    out
}

/// Returns whether the check passed.
pub fn run(s: &Settings) -> Result<bool> {
    let config = ModelConfig {
        source_channels: s.parse("source-channels")?,
        target_channels: s.parse("target-channels")?,
        encoder_width: s.parse("width")?,
        decoder_width: s.parse("width")?,
        hidden: s.parse("hidden")?,
        decoder_steps: s.parse("decoder-steps")?,
        input_feeding: s.flag("input-feeding")?,
        pad_policy: Default::default(),
    };
    let tolerance: f64 = s.parse("tolerance")?;
    let report = model_grad_check(&config, s.parse("steps")?, s.parse("seed")?, tolerance)?;
    if let Some(out) = s.path("out") {
        s.write_to(&out)?;
        fs::write(out.join("gradcheck.csv"), report_csv(&report))?;
    }
    let worst = report.worst().map_or("none", |p| p.name.as_str());
    println!(
        "{} max_rel_error={:e} tolerance={:e} checked={} worst={worst}",
        if report.passed { "PASS" } else { "FAIL" },
        report.max_rel_error,
        report.tolerance,
        report.checked
    );
    Ok(report.passed)
}
