//! Command-line front end: `check`, `scan`, `norm`, `rihaczek` and `experiment`.
//!
//! Every subcommand also reads `--config FILE`, a JSON object whose keys are the
//! subcommand's flag names (`check_identity` or `check-identity`). Values may be
//! strings, numbers, booleans or arrays; arrays become comma lists. Flags given on
//! the command line override the file. The optional key `command` names the
//! subcommand when none is given on the command line.

mod args;
mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{CommandFactory, Parser};
use serde_json::Value;

pub use args::{Cli, Command};
pub use commands::execute;

use crate::error::Error;

/// Failure of a CLI invocation.
#[derive(Debug)]
pub enum CliError {
    /// Bad or missing arguments; exit code 2 with usage text.
    Usage(clap::Error),
    /// Valid arguments that failed at run time; exit code 1.
    Run(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Run(e)
    }
}

impl From<clap::Error> for CliError {
    fn from(e: clap::Error) -> Self {
        CliError::Usage(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(e) => e.exit_code(),
            CliError::Run(_) => 1,
        }
    }
}

/// Usage error attached to a subcommand so the message carries its usage line.
pub(crate) fn usage_error(sub: &str, msg: impl std::fmt::Display) -> CliError {
    let mut cmd = Cli::command();
    cmd.build();
    let kind = clap::error::ErrorKind::MissingRequiredArgument;
    let err = match cmd.find_subcommand_mut(sub) {
        Some(s) => s.error(kind, msg),
        None => cmd.error(kind, msg),
    };
    CliError::Usage(err)
}

const SUBCOMMANDS: [&str; 5] = ["check", "scan", "norm", "rihaczek", "experiment"];

fn config_error(path: &std::path::Path, msg: impl std::fmt::Display) -> CliError {
    let err = Cli::command().error(
        clap::error::ErrorKind::InvalidValue,
        format!("config {}: {msg}", path.display()),
    );
    CliError::Usage(err)
}

fn flag_value(key: &str, v: &Value) -> Result<Option<String>, String> {
    match v {
        Value::Null => Ok(None),
        Value::String(s) => Ok(Some(s.clone())),
        Value::Number(n) => Ok(Some(n.to_string())),
        Value::Array(items) => {
            let parts: Result<Vec<String>, String> = items
                .iter()
                .map(|x| match flag_value(key, x)? {
                    Some(s) => Ok(s),
                    None => Err(format!("key {key:?}: null inside a list")),
                })
                .collect();
            Ok(Some(parts?.join(",")))
        }
        Value::Bool(_) | Value::Object(_) => Err(format!("key {key:?}: unsupported value {v}")),
    }
}

/// Flags equivalent to a config object, plus its `command` entry.
fn config_to_flags(path: &std::path::Path, value: Value) -> Result<(Option<String>, Vec<OsString>), CliError> {
    let Value::Object(map) = value else {
        return Err(config_error(path, "expected a JSON object"));
    };
    let mut command = None;
    let mut flags = Vec::new();
    for (key, v) in map {
        if key == "command" {
            match v {
                Value::String(s) => command = Some(s),
                other => return Err(config_error(path, format!("command must be a string, got {other}"))),
            }
            continue;
        }
        let flag = format!("--{}", key.replace('_', "-"));
        match v {
            Value::Bool(true) => flags.push(flag.into()),
            Value::Bool(false) => {}
            other => {
                if let Some(s) = flag_value(&key, &other).map_err(|m| config_error(path, m))? {
                    flags.push(format!("{flag}={s}").into());
                }
            }
        }
    }
    Ok((command, flags))
}

/// Splices `--config` contents into the argument list ahead of the command-line flags.
fn expand_config(mut argv: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let mut config: Option<PathBuf> = None;
    let mut i = 1;
    while i < argv.len() {
        let a = argv[i].to_string_lossy().into_owned();
        if a == "--" {
            break;
        }
        if a == "--config" {
            if i + 1 >= argv.len() {
                return Err(CliError::Usage(Cli::command().error(
                    clap::error::ErrorKind::InvalidValue,
                    "--config needs a file path",
                )));
            }
            config = Some(PathBuf::from(argv.remove(i + 1)));
            argv.remove(i);
            continue;
        }
        if let Some(path) = a.strip_prefix("--config=") {
            config = Some(PathBuf::from(path));
            argv.remove(i);
            continue;
        }
        i += 1;
    }
    let Some(path) = config else {
        return Ok(argv);
    };
    let text = std::fs::read_to_string(&path).map_err(|source| {
        CliError::Run(Error::Io {
            context: format!("reading {}", path.display()),
            source,
        })
    })?;
    let value: Value = serde_json::from_str(&text).map_err(|source| {
        CliError::Run(Error::Json {
            context: format!("parsing {}", path.display()),
            source,
        })
    })?;
    let (command, flags) = config_to_flags(&path, value)?;
    let sub_at = argv
        .iter()
        .skip(1)
        .position(|a| SUBCOMMANDS.contains(&a.to_string_lossy().as_ref()))
        .map(|p| p + 1);
    let mut out: Vec<OsString> = Vec::with_capacity(argv.len() + flags.len() + 1);
    match (sub_at, command) {
        (Some(at), _) => {
            out.extend(argv[..=at].iter().cloned());
            out.extend(flags);
            out.extend(argv[at + 1..].iter().cloned());
        }
        (None, Some(cmd)) => {
            out.push(argv[0].clone());
            out.push(cmd.into());
            out.extend(flags);
            out.extend(argv[1..].iter().cloned());
        }
        (None, None) => return Err(config_error(&path, "no subcommand given and no \"command\" key")),
    }
    Ok(out)
}

/// Parses arguments, expanding `--config`.
pub fn parse<I, T>(args: I) -> Result<Cli, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let argv = expand_config(argv)?;
    Ok(Cli::try_parse_from(argv)?)
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let result = parse(args).and_then(execute);
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            0
        }
        Err(CliError::Usage(e)) => {
            let _ = e.print();
            e.exit_code()
        }
        Err(CliError::Run(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}
