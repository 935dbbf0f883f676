// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Exit codes, errors and the single output sink.

use serde::Serialize;
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use tripleforge::Error;

pub const EXIT_OK: u8 = 0;
/// A certification, audit or privacy check failed.
pub const EXIT_CHECK_FAILED: u8 = 1;
/// Two backends disagreed.
pub const EXIT_DISAGREE: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_DATA: u8 = 65;
pub const EXIT_INTERNAL: u8 = 70;
pub const EXIT_IO: u8 = 74;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_IO,
            CliError::Invariant(_) => EXIT_INTERNAL,
            CliError::Core(e) => match e {
                Error::Serialization(_)
                | Error::PauliParse(_)
                | Error::MalformedAnf(_)
                | Error::MissingInput(_)
                | Error::InvalidGraph(_)
                | Error::VertexOutOfRange { .. }
                | Error::InadmissibleSchedule(_)
                | Error::TooManyQubits { .. } => EXIT_DATA,
                _ => EXIT_INTERNAL,
            },
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Where the report goes: a file or stdout. Everything is rendered into a
/// buffer first and written once.
pub struct Sink {
    path: Option<PathBuf>,
}

impl Sink {
    pub fn new(path: Option<PathBuf>) -> Self {
        Sink { path }
    }

    fn write(&self, bytes: &[u8]) -> CliResult<()> {
        match &self.path {
            Some(p) => {
                let mut f = File::create(p).map_err(|e| CliError::io(p, e))?;
                f.write_all(bytes).map_err(|e| CliError::io(p, e))
            }
            None => {
                let mut out = io::stdout().lock();
                out.write_all(bytes)
                    .and_then(|_| out.flush())
                    .map_err(|e| CliError::io(Path::new("<stdout>"), e))
            }
        }
    }

    pub fn json<T: Serialize + ?Sized>(&self, value: &T) -> CliResult<()> {
        let mut text = serde_json::to_string_pretty(value).map_err(Error::from)?;
        text.push('\n');
        self.write(text.as_bytes())
    }

    pub fn csv<T: Serialize>(&self, rows: &[T]) -> CliResult<()> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in rows {
            w.serialize(r).map_err(|e| Error::Serialization(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Serialization(e.to_string()))?;
        self.write(&bytes)
    }
}
