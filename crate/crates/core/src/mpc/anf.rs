// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Boolean functions in algebraic normal form: an XOR of conjunctions of
//! named inputs, each input owned by one party.
//!
//! File format:
//! `{"terms": [[[1, "x1"], [2, "x2"]], [[3, "x3"]]], "inputs": {"x1": 1, "x2": 0, "x3": 1}}`.
//! An empty term is the constant 1.

use super::channel::{BroadcastChannel, Message};
use super::conj::{conj_bindings, conj_n};
use super::sharing::{AdditiveShare, Player};
use super::supply::TripleSupply;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anf {
    pub terms: Vec<Vec<(usize, String)>>,
}

/// An ANF together with input values, as read from disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnfFile {
    pub terms: Vec<Vec<(usize, String)>>,
    #[serde(default)]
    pub inputs: BTreeMap<String, u8>,
}

impl AnfFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let f: AnfFile = serde_json::from_str(text)?;
        Ok(f)
    }

    pub fn anf(&self) -> Anf {
        Anf {
            terms: self.terms.clone(),
        }
    }

    pub fn input_bits(&self) -> Result<BTreeMap<String, bool>> {
        self.inputs
            .iter()
            .map(|(k, v)| match v {
                0 => Ok((k.clone(), false)),
                1 => Ok((k.clone(), true)),
                v => Err(Error::MalformedAnf(format!("input {k} = {v} is not a bit"))),
            })
            .collect()
    }
}

/// One term after folding each party's variables into a local product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldedTerm {
    pub factors: BTreeMap<usize, BTreeSet<String>>,
}

impl FoldedTerm {
    pub fn players(&self) -> Vec<Player> {
        self.factors.keys().map(|&k| Player::P(k)).collect()
    }

    fn local(&self, party: usize, inputs: &BTreeMap<String, bool>) -> Result<bool> {
        self.factors[&party].iter().try_fold(true, |acc, v| {
            inputs
                .get(v)
                .map(|&b| acc & b)
                .ok_or_else(|| Error::MissingInput(v.clone()))
        })
    }
}

impl Anf {
    /// Groups each term's variables by party; `x x = x` falls out of the set.
    pub fn fold(&self) -> Result<Vec<FoldedTerm>> {
        let mut owner: BTreeMap<&str, usize> = BTreeMap::new();
        let mut out = Vec::with_capacity(self.terms.len());
        for term in &self.terms {
            let mut factors: BTreeMap<usize, BTreeSet<String>> = BTreeMap::new();
            for (party, var) in term {
                if *party == 0 {
                    return Err(Error::MalformedAnf("parties are numbered from 1".into()));
                }
                match owner.insert(var, *party) {
                    Some(prev) if prev != *party => {
                        return Err(Error::MalformedAnf(format!(
                            "{var} is listed under P{prev} and P{party}"
                        )))
                    }
                    _ => {}
                }
                factors.entry(*party).or_default().insert(var.clone());
            }
            out.push(FoldedTerm { factors });
        }
        Ok(out)
    }

    /// Plain evaluation, for reference.
    pub fn evaluate(&self, inputs: &BTreeMap<String, bool>) -> Result<bool> {
        let mut acc = false;
        for t in self.fold()? {
            let mut v = true;
            for &p in t.factors.keys() {
                v &= t.local(p, inputs)?;
            }
            acc ^= v;
        }
        Ok(acc)
    }

    /// Triple bindings needed by every multi-party term, in order.
    pub fn bindings(&self) -> Result<Vec<(Player, Player)>> {
        Ok(self
            .fold()?
            .iter()
            .filter(|t| t.factors.len() >= 2)
            .flat_map(|t| conj_bindings(&t.players()))
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnfRun {
    pub value: bool,
    pub triples: usize,
    /// Output sharing as opened in the reconstruction round.
    pub shares: AdditiveShare,
}

/// Evaluates `anf` on shared inputs and reconstructs the result in a final
/// round where every holder opens.
pub fn eval_anf(
    anf: &Anf,
    inputs: &BTreeMap<String, bool>,
    supply: &mut TripleSupply,
    ch: &mut BroadcastChannel,
) -> Result<AnfRun> {
    let terms = anf.fold()?;
    let mut shares = AdditiveShare::new();
    let mut triples = 0;
    let constant_holder = terms.iter().flat_map(|t| t.factors.keys().copied()).min().unwrap_or(1);
    for t in &terms {
        match t.factors.len() {
            0 => shares.add(Player::P(constant_holder), true),
            1 => {
                let (&p, _) = t.factors.iter().next().expect("one factor");
                shares.add(Player::P(p), t.local(p, inputs)?);
            }
            _ => {
                let bits = t
                    .factors
                    .keys()
                    .map(|&p| t.local(p, inputs))
                    .collect::<Result<Vec<_>>>()?;
                let run = conj_n(&bits, &t.players(), supply, ch)?;
                triples += run.triples;
                shares = shares.xor(&run.shares);
            }
        }
    }
    let opened = ch.round(shares.iter().map(|(p, b)| Message::new(p, "f", b)).collect());
    let value = opened.iter().fold(false, |acc, m| acc ^ m.bit);
    Ok(AnfRun { value, triples, shares })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coins::SeededCoins;
    use crate::mpc::supply::IdealSource;

    fn anf(json: &str) -> Anf {
        serde_json::from_str(json).unwrap()
    }

    fn truth_table(f: &Anf, vars: &[&str], expect_triples: usize) {
        let mut coins = SeededCoins::new(3);
        for x in 0..(1u32 << vars.len()) {
            let inputs: BTreeMap<String, bool> = vars
                .iter()
                .enumerate()
                .map(|(i, v)| (v.to_string(), x >> i & 1 == 1))
                .collect();
            let mut supply = TripleSupply::new();
            supply
                .provision(&f.bindings().unwrap(), &mut IdealSource, &mut coins)
                .unwrap();
            let run = eval_anf(f, &inputs, &mut supply, &mut BroadcastChannel::new()).unwrap();
            assert_eq!(run.value, f.evaluate(&inputs).unwrap(), "{inputs:?}");
            assert_eq!(run.triples, expect_triples);
        }
    }

    #[test]
    fn linear_needs_no_triples() {
        truth_table(&anf(r#"{"terms": [[[1, "x1"]], [[2, "x2"]]]}"#), &["x1", "x2"], 0);
    }

    #[test]
    fn one_product_plus_linear() {
        truth_table(
            &anf(r#"{"terms": [[[1, "x1"], [2, "x2"]], [[3, "x3"]]]}"#),
            &["x1", "x2", "x3"],
            1,
        );
    }

    #[test]
    fn majority() {
        let f = anf(r#"{"terms": [[[1, "x1"], [2, "x2"]], [[2, "x2"], [3, "x3"]], [[1, "x1"], [3, "x3"]]]}"#);
        truth_table(&f, &["x1", "x2", "x3"], 3);
        for x in 0..8u32 {
            let inputs: BTreeMap<String, bool> = (1..=3).map(|i| (format!("x{i}"), x >> (i - 1) & 1 == 1)).collect();
            assert_eq!(f.evaluate(&inputs).unwrap(), x.count_ones() >= 2);
        }
    }

    #[test]
    fn constants_and_local_products_fold() {
        let f = anf(r#"{"terms": [[], [[1, "a"], [1, "b"], [1, "a"]], [[1, "a"], [2, "c"], [3, "d"]]]}"#);
        truth_table(&f, &["a", "b", "c", "d"], 3);
    }

    #[test]
    fn file_round_trip_and_errors() {
        let file = AnfFile::from_json(r#"{"terms": [[[1, "x1"], [2, "x2"]]], "inputs": {"x1": 1, "x2": 1}}"#).unwrap();
        assert!(file.anf().evaluate(&file.input_bits().unwrap()).unwrap());
        let bad = anf(r#"{"terms": [[[1, "x"], [2, "x"]]]}"#);
        assert!(matches!(bad.fold(), Err(Error::MalformedAnf(_))));
        let zero = anf(r#"{"terms": [[[0, "x"]]]}"#);
        assert!(matches!(zero.fold(), Err(Error::MalformedAnf(_))));
        assert!(AnfFile::from_json(r#"{"terms": [], "inputs": {"x": 2}}"#)
            .unwrap()
            .input_bits()
            .is_err());
    }
}
