// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Stabilizer simulation of graph-state triple distribution, its privacy
//! audit, and an online secret-sharing layer that consumes the triples.

pub mod audit;
pub mod backend;
pub mod bits;
pub mod certify;
pub mod clifford;
pub mod coins;
pub mod dense;
pub mod dist;
pub mod error;
pub mod graph;
pub mod mpc;
pub mod pauli;
pub mod protocol;
pub mod resource;
pub mod scalar;
pub mod stabilizer;

pub use error::{Error, Result};
pub use pauli::{Basis, Letter, PauliOperator};
pub use stabilizer::{Sign, StabilizerState};

/// Exact branch weight.
pub type Prob = num_rational::Ratio<i64>;

pub type DenseState64 = dense::DenseState<f64>;
pub type DenseState32 = dense::DenseState<f32>;
pub type DenseBackend64 = backend::DenseBackend<f64>;
/// Distributions with exact weights.
pub type ExactDistribution<K> = dist::Distribution<K, Prob>;
/// Distributions with floating-point weights, for sampled estimates.
pub type FloatDistribution<K> = dist::Distribution<K, f64>;

pub use backend::BackendKind;
pub use protocol::{run_pi_and, PartyView, Schedule, Transcript, TripleShares};
pub use resource::{build_g_and, Party, ResourceSpec};
