//! `wave2wave` command-line pipeline: generate, preprocess, train,
//! translate, evaluate, gradcheck.

mod commands;
mod io;
mod settings;

use std::process::ExitCode;

use clap::Command;
use settings::{Key, Settings};

type Table = (&'static str, &'static str, fn() -> Vec<Key>);

const COMMANDS: [Table; 6] = [
    (
        "generate",
        "Write a synthetic paired dataset and its manifest",
        commands::generate::keys,
    ),
    (
        "preprocess",
        "Crop, envelope and optionally I/Q-split the waves of a manifest",
        commands::preprocess::keys,
    ),
    ("train", "Train a model with the selected method", commands::train::keys),
    (
        "translate",
        "Translate source waves and write attention traces",
        commands::translate::keys,
    ),
    (
        "evaluate",
        "Score predictions by MSE and Gaussian perplexity",
        commands::evaluate::keys,
    ),
    (
        "gradcheck",
        "Compare full-model gradients against finite differences",
        commands::gradcheck::keys,
    ),
];

fn cli() -> Command {
    let mut cmd = Command::new("wave2wave")
        .about("Windowed seq2seq translation between signal waves")
        .subcommand_required(true)
        .arg_required_else_help(true);
    for (name, about, keys) in COMMANDS {
        cmd = cmd.subcommand(settings::command(name, about, &keys()));
    }
    cmd
}

fn run() -> wave2wave::Result<bool> {
    let matches = cli().get_matches();
    let (name, sub) = matches.subcommand().expect("subcommand required");
    let (_, _, keys) = COMMANDS
        .iter()
        .find(|(n, _, _)| *n == name)
        .expect("registered subcommand");
    let s = Settings::resolve(name, &keys(), sub)?;
    match name {
        "generate" => commands::generate::run(&s)?,
        "preprocess" => commands::preprocess::run(&s)?,
        "train" => commands::train::run(&s)?,
        "translate" => commands::translate::run(&s)?,
        "evaluate" => commands::evaluate::run(&s)?,
        "gradcheck" => return commands::gradcheck::run(&s),
        _ => unreachable!("unknown subcommand {name}"),
    }
    Ok(true)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
