//! Output envelope, run manifest and the error object.

use std::fmt;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::args::{GlobalArgs, Policy};

/// Everything needed to rerun a command; recorded in every output.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub inputs: Vec<String>,
    pub seed: u64,
    pub policy: Policy,
    pub prime_bits: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

impl RunManifest {
    pub fn new(command: &str, global: &GlobalArgs) -> Self {
        Self {
            command: command.to_string(),
            inputs: Vec::new(),
            seed: global.seed,
            policy: global.policy,
            prime_bits: global.prime_bits,
            m_max: None,
            k_max: None,
            output: global.output.as_ref().map(|p| p.display().to_string()),
        }
    }

    pub fn input(mut self, path: &Path) -> Self {
        self.inputs.push(path.display().to_string());
        self
    }

    pub fn m_max(mut self, m: usize) -> Self {
        self.m_max = Some(m);
        self
    }

    pub fn k_max(mut self, k: usize) -> Self {
        self.k_max = Some(k);
        self
    }
}

#[derive(Debug, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub command: &'a str,
    pub manifest: &'a RunManifest,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
    pub result: &'a T,
}

/// Seconds since the Unix epoch.
pub fn timestamp() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    Usage,
    Parse,
    Precondition,
    Genericity,
    Internal,
    Io,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            Self::Usage | Self::Parse => 2,
            Self::Precondition => 3,
            Self::Genericity => 4,
            Self::Internal | Self::Io => 70,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn new(kind: ErrorKind, message: impl Into<String>) -> Self {
        Self {
            kind,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.kind.exit_code()
    }

    /// `{"error": {"kind": ..., "message": ..., "exit_code": ...}}`
    pub fn to_json(&self) -> String {
        serde_json::json!({
            "error": {
                "kind": self.kind,
                "message": self.message,
                "exit_code": self.exit_code(),
            }
        })
        .to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl From<fatpoint::Error> for CliError {
    fn from(e: fatpoint::Error) -> Self {
        use fatpoint::Error as E;
        let kind = match &e {
            E::Parse(_) => ErrorKind::Parse,
            E::Genericity { .. } => ErrorKind::Genericity,
            E::Internal(_) => ErrorKind::Internal,
            _ => ErrorKind::Precondition,
        };
        Self::new(kind, e.to_string())
    }
}

/// Writes `text` (plus a newline) to `path`, or to stdout. A closed stdout
/// pipe is not an error.
pub fn emit(text: &str, path: Option<&PathBuf>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, format!("{text}\n"))
            .map_err(|e| CliError::new(ErrorKind::Io, format!("{}: {e}", p.display()))),
        None => match writeln!(io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(CliError::new(ErrorKind::Io, e.to_string())),
            _ => Ok(()),
        },
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map_err(|e| CliError::new(ErrorKind::Internal, e.to_string()))
}
