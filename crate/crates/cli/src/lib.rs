//! The `nzflow` command line.
//!
//! Exit codes: 0 success, 1 domain failure (bridge, wrong graph class,
//! invalid flow, failed reproduction), 2 usage or input error, 3 timeout.
//! Every failure writes one `error[<kind>]: <reason>` line to stderr.

mod args;
mod commands;
mod graphs;
pub mod repro;

use std::ffi::OsString;
use std::fmt;
use std::path::Path;

use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;

pub use args::{Cli, Command, ReproTarget};
pub use graphs::resolve_builtin;

pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TIMEOUT: i32 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub kind: String,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, kind: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            code,
            kind: kind.into(),
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(EXIT_USAGE, "usage", message)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one_line = self.message.replace('\n', " ");
        write!(f, "error[{}]: {}", self.kind, one_line)
    }
}

impl From<nzflow_core::Error> for Failure {
    fn from(e: nzflow_core::Error) -> Self {
        use nzflow_core::Error as E;
        let code = match &e {
            E::Timeout { .. } => EXIT_TIMEOUT,
            E::Parse { .. }
            | E::Schema(_)
            | E::Shape(_)
            | E::Data(_)
            | E::Config(_)
            | E::Json(_) => EXIT_USAGE,
            E::Domain(_)
            | E::Bridge(_)
            | E::Disconnected
            | E::InvalidFlow(_)
            | E::InvalidTriangulation(_)
            | E::Internal(_) => EXIT_DOMAIN,
        };
        Failure::new(code, e.kind(), e.to_string())
    }
}

pub(crate) type Outcome<T = ()> = Result<T, Failure>;

pub(crate) fn read_file(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_USAGE, "io", format!("{}: {e}", path.display())))
}

/// Writes `text` to `out`, or to stdout when no path is given.
pub(crate) fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::new(EXIT_USAGE, "io", format!("{}: {e}", path.display()))),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

/// Output envelope: version and configuration echo ahead of the payload.
#[derive(Serialize)]
pub(crate) struct Stamped<'a, T: Serialize> {
    pub tool_version: &'static str,
    pub config: &'a serde_json::Value,
    #[serde(flatten)]
    pub body: T,
}

pub(crate) fn stamped<T: Serialize, C: Serialize>(config: &C, body: T) -> String {
    let config = serde_json::to_value(config).expect("arguments serialize");
    serde_json::to_string_pretty(&Stamped {
        tool_version: nzflow_core::VERSION,
        config: &config,
        body,
    })
    .expect("output serializes")
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = e.print();
                    if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                        EXIT_USAGE
                    } else {
                        0
                    }
                }
                _ => {
                    let text = e.to_string();
                    let line = text
                        .lines()
                        .find(|l| !l.trim().is_empty())
                        .unwrap_or("invalid arguments")
                        .trim_start_matches("error: ");
                    eprintln!("{}", Failure::usage(line));
                    EXIT_USAGE
                }
            };
        }
    };
    match commands::execute(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("{failure}");
            failure.code
        }
    }
}
