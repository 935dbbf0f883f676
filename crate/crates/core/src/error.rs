// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} qubits vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("observable {0} is not Hermitian")]
    NotHermitian(String),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex {0} has already been measured")]
    DeadVertex(usize),

    #[error("invalid stabilizer state: {0}")]
    InvalidStabilizer(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("cannot parse Pauli string {0:?}")]
    PauliParse(String),

    #[error("operation needs a single-qubit observable, got {0}")]
    NotSingleQubit(String),

    #[error("empty vertex set")]
    EmptySet,

    #[error("{n} qubits exceeds the dense simulator limit of {limit}")]
    TooManyQubits { n: usize, limit: usize },

    #[error("projection onto a zero-probability branch")]
    ZeroProbabilityBranch,

    #[error("measurement probability {0} is not one of 0, 1/2, 1")]
    NonDyadicProbability(String),

    #[error("resource integrity violated: {0}")]
    ResourceIntegrity(String),

    #[error("inadmissible schedule: {0}")]
    InadmissibleSchedule(String),

    #[error("privacy analysis covers exactly one corrupted party, got {0}")]
    UnsupportedCorruption(usize),

    #[error("triple {0} has already been consumed")]
    TripleReused(u64),

    #[error("not enough triples: needed one for pair {0}")]
    InsufficientTriples(String),

    #[error("no triple bound to pair {0}")]
    WrongPairBinding(String),

    #[error("malformed ANF: {0}")]
    MalformedAnf(String),

    #[error("missing input {0}")]
    MissingInput(String),

    #[error("replay diverged at event {index}: {detail}")]
    ReplayMismatch { index: usize, detail: String },

    #[error("{0}")]
    Serialization(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}
