use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::error::CliError;

/// Every JSON report: tool and version stamp, the effective input, the result.
#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub input: &'a ExperimentConfig,
    pub result: &'a T,
}

pub fn envelope_json<T: Serialize>(command: &str, cfg: &ExperimentConfig, result: &T) -> Result<String, CliError> {
    let env = Envelope { tool: "ratsemi", version: env!("CARGO_PKG_VERSION"), command, input: cfg, result };
    serde_json::to_string_pretty(&env).map_err(|e| CliError::Io(e.to_string()))
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// A closed reader (`| head`) ends output quietly.
pub fn write_stdout(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    let res = out.write_all(text.as_bytes()).and_then(|_| if text.ends_with('\n') { Ok(()) } else { out.write_all(b"\n") }).and_then(|_| out.flush());
    match res {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

/// JSON report to `--out` or stdout.
pub fn report<T: Serialize>(command: &str, cfg: &ExperimentConfig, result: &T) -> Result<(), CliError> {
    let text = envelope_json(command, cfg, result)?;
    match &cfg.output.out {
        Some(p) => write_file(p, &text),
        None => write_stdout(&text),
    }
}

/// CSV artifact plus JSON report. Without `--csv` the CSV goes to stdout and
/// the report only to `--out` (if given); with `--csv` the report falls back to stdout.
pub fn report_with_csv<T: Serialize>(command: &str, cfg: &ExperimentConfig, csv: &str, result: &T) -> Result<(), CliError> {
    let json = envelope_json(command, cfg, result)?;
    match (&cfg.output.csv, &cfg.output.out) {
        (Some(c), out) => {
            write_file(c, csv)?;
            match out {
                Some(o) => write_file(o, &json),
                None => write_stdout(&json),
            }
        }
        (None, Some(o)) => {
            write_stdout(csv)?;
            write_file(o, &json)
        }
        (None, None) => write_stdout(csv),
    }
}
