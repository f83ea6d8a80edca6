use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use neron_core::cli::{parse_mode, run, Command, Config, InputDocument, RunOptions};
use neron_core::Error;

/// Component groups and local Galois cohomology of tori from lattices with a finite group action.
#[derive(Parser, Debug)]
#[command(name = "neron", version)]
struct Args {
    /// component-group, reduction-type, resolve, six-term, local-cohomology, reductive-h1,
    /// abelian-cohomology, is-flasque, verify or corpus
    command: String,
    /// Input document (`-` or absent: standard input, for commands that need one).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// TOML configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Compact JSON output (the default).
    #[arg(long, conflicts_with = "pretty")]
    json: bool,
    /// Indented JSON output.
    #[arg(long)]
    pretty: bool,
    /// Cohomological degree for local-cohomology and abelian-cohomology.
    #[arg(long, allow_hyphen_values = true)]
    degree: Option<i32>,
    /// quasi-finite, generic or cd=N.
    #[arg(long)]
    mode: Option<String>,
    /// Number of random instances for verify.
    #[arg(long)]
    corpus_size: Option<usize>,
    /// Corpus entry to print.
    #[arg(long)]
    name: Option<String>,
    /// Add wall-clock timing to the report.
    #[arg(long)]
    timing: bool,
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Error> {
    let mut s = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            s = std::fs::read_to_string(p).map_err(|e| Error::schema("input", format!("{}: {e}", p.display())))?
        }
        _ => {
            std::io::stdin().read_to_string(&mut s).map_err(|e| Error::schema("input", e.to_string()))?;
        }
    }
    Ok(s)
}

fn execute(args: &Args) -> Result<(String, bool), Error> {
    let command: Command = args.command.parse()?;
    let mut config = match &args.config {
        Some(p) => Config::from_toml_str(
            &std::fs::read_to_string(p).map_err(|e| Error::schema("config", format!("{}: {e}", p.display())))?,
        )?,
        None => Config::default(),
    };
    if let Some(s) = args.seed {
        config.seed = s;
    }
    if let Some(n) = args.corpus_size {
        config.corpus_size = n;
    }
    let doc = if command.needs_input() {
        Some(InputDocument::from_json_str(&read_input(&args.input)?)?)
    } else {
        None
    };
    let opts = RunOptions {
        degree: args.degree,
        mode: args.mode.as_deref().map(parse_mode).transpose()?,
        name: args.name.clone(),
        timing: args.timing,
    };
    let report = run(command, doc.as_ref(), &config, &opts)?;
    Ok((report.to_json(args.pretty), report.passed()))
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            // Usage errors are input errors; --help and --version are not errors.
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(&args) {
        Ok((text, passed)) => {
            // A closed pipe downstream is not an error of ours.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 1 } else { 2 })
        }
    }
}
