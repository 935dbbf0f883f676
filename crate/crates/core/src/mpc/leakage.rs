// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

//! What a passive eavesdropper on the broadcast channel learns about the
//! honest parties' inputs, computed over every input and every coin.

use super::channel::BroadcastChannel;
use super::conj::{conj_bindings, conj_n};
use super::ot::{ot_1of2, ot_bindings};
use super::sharing::{AdditiveShare, Player};
use super::supply::{TripleSource, TripleSupply};
use crate::coins::{enumerate_branches, CoinSource};
use crate::dist::{conditional_table, Distribution};
use crate::error::Result;
use crate::Prob;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One complete session: inputs drawn uniformly, the public log, and the
/// function value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Observation {
    pub inputs: BTreeMap<String, bool>,
    pub log: Vec<(String, bool)>,
    pub output: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BitLeakage {
    pub input: String,
    /// Largest `|P(input=0 | log) - 1/2|`, as a rational.
    pub worst_deviation: String,
    pub conditionally_uniform: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeakageReport {
    pub session: String,
    pub reconstruction_included: bool,
    pub inputs: Vec<BitLeakage>,
    /// The log tells the eavesdropper nothing about the inputs beyond the
    /// function value: `P(inputs | log) = P(inputs | f)` whenever the log
    /// fixes `f`, and `P(inputs | log) = P(inputs)` when it does not.
    pub only_through_output: bool,
}

impl LeakageReport {
    pub fn all_uniform(&self) -> bool {
        self.inputs.iter().all(|b| b.conditionally_uniform)
    }
}

pub fn leakage_report(session: &str, reconstruction_included: bool, obs: &Distribution<Observation>) -> LeakageReport {
    let half = Prob::new(1, 2);
    let names: Vec<String> = obs
        .keys()
        .next()
        .map(|o| o.inputs.keys().cloned().collect())
        .unwrap_or_default();
    let inputs = names
        .iter()
        .map(|name| {
            let table = conditional_table(obs, |o| o.log.clone(), |o| o.inputs[name]);
            let worst = table
                .values()
                .map(|p| (*p - half).abs())
                .max()
                .unwrap_or_else(Prob::zero);
            BitLeakage {
                input: name.clone(),
                worst_deviation: worst.to_string(),
                conditionally_uniform: worst.is_zero(),
            }
        })
        .collect();

    // Compare P(inputs | log) with P(inputs | what the log says about f).
    let by_log = obs.map(|o| (o.log.clone(), o.inputs.clone()));
    let log_marginal = obs.map(|o| o.log.clone());
    let outputs_by_log: BTreeMap<Vec<(String, bool)>, Vec<bool>> = obs.keys().fold(BTreeMap::new(), |mut m, o| {
        let e: &mut Vec<bool> = m.entry(o.log.clone()).or_default();
        if !e.contains(&o.output) {
            e.push(o.output);
        }
        m
    });
    let by_output = obs.map(|o| (o.output, o.inputs.clone()));
    let output_marginal = obs.map(|o| o.output);
    let input_marginal = obs.map(|o| o.inputs.clone());
    let mut only_through_output = true;
    for ((log, inputs), w) in by_log.iter() {
        let given_log = *w / log_marginal.get(log);
        let reference = match outputs_by_log[log].as_slice() {
            [f] => by_output.get(&(*f, inputs.clone())) / output_marginal.get(f),
            _ => input_marginal.get(inputs),
        };
        only_through_output &= given_log == reference;
    }
    // Input tuples that never occur with a log still need zero probability
    // under the reference; every enumerated input tuple appears with every
    // log when the protocol hides it, which the equality above covers.
    LeakageReport {
        session: session.to_string(),
        reconstruction_included,
        inputs,
        only_through_output,
    }
}

fn input_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// The public log, optionally cut before the reconstruction round.
fn visible(ch: &BroadcastChannel, keep_rounds: usize) -> Vec<(String, bool)> {
    let mut cut = BroadcastChannel::new();
    for r in ch.log().iter().take(keep_rounds) {
        cut.round(r.clone());
    }
    cut.transcript()
}

/// Every oblivious-transfer session with uniform inputs.
pub fn ot_sessions(source: &mut dyn TripleSource, with_reconstruction: bool) -> Result<Distribution<Observation>> {
    let branches = enumerate_branches(|coins| {
        let (a0, a1, b) = (coins.flip(), coins.flip(), coins.flip());
        let mut supply = TripleSupply::new();
        supply.provision(&ot_bindings(), source, coins)?;
        let mut ch = BroadcastChannel::new();
        let run = ot_1of2(a0, a1, b, &mut supply, &mut ch)?;
        Ok(Observation {
            inputs: [("a0", a0), ("a1", a1), ("b", b)]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
            log: visible(&ch, if with_reconstruction { 2 } else { 1 }),
            output: run.output,
        })
    })?;
    Ok(Distribution::from_branches(&branches))
}

/// Opens every share of a conjunction sharing in one extra round.
fn reconstruct(shares: &AdditiveShare, ch: &mut BroadcastChannel) -> bool {
    let msgs = shares
        .iter()
        .map(|(p, b)| super::channel::Message::new(p, "f", b))
        .collect();
    ch.round(msgs).iter().fold(false, |acc, m| acc ^ m.bit)
}

/// Every `n`-input conjunction session with uniform inputs.
pub fn conj_sessions(
    n: usize,
    source: &mut dyn TripleSource,
    with_reconstruction: bool,
) -> Result<Distribution<Observation>> {
    let players: Vec<Player> = (1..=n).map(Player::P).collect();
    let names = input_names("x", n);
    let branches = enumerate_branches(|coins| {
        let inputs: Vec<bool> = (0..n).map(|_| coins.flip()).collect();
        let mut supply = TripleSupply::new();
        supply.provision(&conj_bindings(&players), source, coins)?;
        let mut ch = BroadcastChannel::new();
        let run = conj_n(&inputs, &players, &mut supply, &mut ch)?;
        let online = ch.rounds();
        let output = reconstruct(&run.shares, &mut ch);
        Ok(Observation {
            inputs: names.iter().cloned().zip(inputs).collect(),
            log: visible(&ch, if with_reconstruction { online + 1 } else { online }),
            output,
        })
    })?;
    Ok(Distribution::from_branches(&branches))
}

/// Samples `count` sessions of a conjunction too large to enumerate and
/// reports whether every sampled session reconstructed correctly.
pub fn conj_sampled_correctness(
    n: usize,
    count: usize,
    source: &mut dyn TripleSource,
    coins: &mut dyn CoinSource,
) -> Result<bool> {
    let players: Vec<Player> = (1..=n).map(Player::P).collect();
    for _ in 0..count {
        let inputs: Vec<bool> = (0..n).map(|_| coins.flip()).collect();
        let mut supply = TripleSupply::new();
        supply.provision(&conj_bindings(&players), source, coins)?;
        let run = conj_n(&inputs, &players, &mut supply, &mut BroadcastChannel::new())?;
        if run.shares.reconstruct() != inputs.iter().all(|&b| b) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::BackendKind;
    use crate::mpc::supply::{IdealSource, MarginalSource};
    use crate::resource::build_g_and;

    #[test]
    fn ot_hides_inputs_before_reconstruction() {
        let d = ot_sessions(&mut IdealSource, false).unwrap();
        let r = leakage_report("ot", false, &d);
        assert!(r.all_uniform(), "{r:?}");
        assert!(r.only_through_output);
    }

    #[test]
    fn ot_reconstruction_leaks_only_through_output() {
        let d = ot_sessions(&mut IdealSource, true).unwrap();
        let r = leakage_report("ot", true, &d);
        assert!(r.only_through_output, "{r:?}");
    }

    #[test]
    fn conj3_hides_inputs_and_reveals_only_the_value() {
        let pre = leakage_report("conj3", false, &conj_sessions(3, &mut IdealSource, false).unwrap());
        assert!(pre.all_uniform());
        let post = leakage_report("conj3", true, &conj_sessions(3, &mut IdealSource, true).unwrap());
        assert!(post.only_through_output);
        assert!(!post.all_uniform());
    }

    #[test]
    fn swapping_in_the_measured_triples_changes_nothing() {
        let spec = build_g_and();
        let mut real = MarginalSource::from_pi_and(&spec, BackendKind::Tableau).unwrap();
        assert!(ot_sessions(&mut real, true)
            .unwrap()
            .same(&ot_sessions(&mut IdealSource, true).unwrap()));
    }
}
