use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{CommandFactory, Parser};
use serde_json::Value;

mod args;
mod cache;
mod cmd_bethe;
mod cmd_check;
mod cmd_enum;
mod cmd_vertex;
mod error;
mod family;
mod output;

use args::{BetheCommand, Cli, Command, Format};
use error::{usage, CliError};
use output::{csv_string, emit, Rendered, ResultEnvelope};

/// `--config` from the raw arguments, before any validation.
fn config_path(argv: &[OsString]) -> Option<PathBuf> {
    let mut it = argv.iter().skip(1);
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(PathBuf::from(p));
        }
    }
    None
}

/// Positions of the subcommand names in `argv`, outermost first.
fn subcommand_positions(argv: &[OsString]) -> Vec<usize> {
    let mut cmd = Cli::command();
    let mut out = Vec::new();
    for (i, a) in argv.iter().enumerate().skip(1) {
        if !cmd.has_subcommands() {
            break;
        }
        let Some(sub) = cmd.find_subcommand(a).cloned() else { continue };
        out.push(i);
        cmd = sub;
    }
    out
}

fn config_flags(v: &Value) -> Result<Vec<OsString>, CliError> {
    let Value::Object(map) = v else {
        return Err(usage("config file must hold a JSON object"));
    };
    let mut out = Vec::new();
    for (k, v) in map {
        let flag = OsString::from(format!("--{}", k.replace('_', "-")));
        match v {
            Value::Bool(true) => out.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::Array(items) => {
                let parts: Vec<String> = items.iter().map(scalar).collect::<Result<_, _>>()?;
                out.push(flag);
                out.push(parts.join(",").into());
            }
            other => {
                out.push(flag);
                out.push(scalar(other)?.into());
            }
        }
    }
    Ok(out)
}

fn scalar(v: &Value) -> Result<String, CliError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Bool(b) => Ok(b.to_string()),
        _ => Err(usage(format!("config value {v} is not a scalar"))),
    }
}

/// Parse the command line; a `--config` file contributes flags placed right
/// after the subcommand names, so explicit flags override it.
fn parse(argv: &[OsString]) -> Result<(Cli, Value), clap::Error> {
    let Some(path) = config_path(argv) else {
        return Ok((Cli::try_parse_from(argv)?, Value::Null));
    };
    let bad = |msg: String| Cli::command().error(clap::error::ErrorKind::InvalidValue, msg);
    let text = std::fs::read_to_string(&path).map_err(|e| bad(format!("--config {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| bad(format!("--config {}: {e}", path.display())))?;
    let extra = config_flags(&value).map_err(|e| bad(e.to_string()))?;
    let positions = subcommand_positions(argv);
    let Some(&last) = positions.last() else {
        return Ok((Cli::try_parse_from(argv)?, value));
    };
    let mut merged = argv[..=last].to_vec();
    merged.extend(extra);
    merged.extend(argv[last + 1..].iter().cloned());
    Ok((Cli::try_parse_from(merged)?, value))
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Vertex(_) => "vertex",
        Command::Bethe(BetheCommand::Derive(_)) => "bethe derive",
        Command::Bethe(BetheCommand::Solve(_)) => "bethe solve",
        Command::Bethe(BetheCommand::Compare(_)) => "bethe compare",
        Command::Enumerate(_) => "enum",
        Command::Check(_) => "check",
    }
}

fn dispatch(cmd: &Command) -> Result<Rendered, CliError> {
    match cmd {
        Command::Vertex(a) => cmd_vertex::run(a),
        Command::Bethe(BetheCommand::Derive(a)) => cmd_bethe::derive(a),
        Command::Bethe(BetheCommand::Solve(a)) => cmd_bethe::solve_cmd(a),
        Command::Bethe(BetheCommand::Compare(a)) => cmd_bethe::compare(a),
        Command::Enumerate(c) => cmd_enum::run(c),
        Command::Check(a) => cmd_check::run(a),
    }
}

fn config_echo(argv: &[OsString], file: Value) -> Value {
    let args: Vec<Value> = argv.iter().skip(1).map(|a| Value::String(a.to_string_lossy().into_owned())).collect();
    serde_json::json!({ "args": args, "config_file": file })
}

fn run(cli: &Cli, argv: &[OsString], file: Value) -> Result<(), CliError> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(usage("thread count must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Invariant(format!("thread pool: {e}")))?;
    }
    let start = Instant::now();
    let r = dispatch(&cli.command)?;
    let body = match cli.format {
        Format::Json => {
            let env = ResultEnvelope {
                tool: "qvp".into(),
                version: env!("CARGO_PKG_VERSION").into(),
                command: command_name(&cli.command).into(),
                config: config_echo(argv, file),
                elapsed_ms: start.elapsed().as_millis(),
                payload: r.payload,
            };
            serde_json::to_string_pretty(&env)? + "\n"
        }
        Format::Csv => match &r.csv {
            Some(rows) => csv_string(rows)?,
            None => return Err(usage(format!("{} has no CSV output", command_name(&cli.command)))),
        },
        Format::Text => match &r.text {
            Some(t) => t.clone(),
            None => serde_json::to_string_pretty(&r.payload)? + "\n",
        },
    };
    emit(&body, cli.output.as_deref())?;
    match r.failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let argv: Vec<OsString> = std::env::args_os().collect();
    let (cli, file) = match parse(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli, &argv, file) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qvp: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
