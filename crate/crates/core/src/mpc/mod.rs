// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Online secret-sharing computation over a public broadcast channel,
//! consuming triples from any [`TripleSource`].

pub mod anf;
pub mod baselines;
pub mod beaver;
pub mod channel;
pub mod conj;
pub mod leakage;
pub mod ot;
pub mod sharing;
pub mod supply;

pub use anf::{eval_anf, Anf, AnfFile};
pub use baselines::{ctd_dealer_baseline, qkd_td_baseline, QkdVariant};
pub use beaver::beaver_open_and_multiply;
pub use channel::{BroadcastChannel, Message};
pub use conj::{conj_n, ConjRun};
pub use ot::ot_1of2;
pub use sharing::{AdditiveShare, Player};
pub use supply::{BoundTriple, IdealSource, LiveSource, MarginalSource, TripleSource, TripleSupply};
