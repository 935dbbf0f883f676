// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

//! The twelve-qubit tripartite resource and its on-disk format.
//!
//! Vertex labels in this module and everything above it are 1-based, as in
//! the protocol description; simulators see `label - 1`.

use crate::bits;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBasisState, PhaseVector};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Party {
    A,
    B,
    R,
}

impl Party {
    pub const ALL: [Party; 3] = [Party::A, Party::B, Party::R];
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Party::A => "A",
            Party::B => "B",
            Party::R => "R",
        })
    }
}

impl FromStr for Party {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Party::A),
            "B" | "b" => Ok(Party::B),
            "R" | "r" => Ok(Party::R),
            _ => Err(Error::Serialization(format!("unknown party {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Region {
    ArmA,
    ArmB,
    Tail,
    Fork,
}

/// JSON layout shared by the CLI and the shipped resource.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(with = "bits::vec")]
    pub phases: Vec<bool>,
    pub ownership: BTreeMap<Party, Vec<usize>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub regions: BTreeMap<Region, Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResourceSpec {
    graph: Graph,
    phases: PhaseVector,
    ownership: BTreeMap<Party, Vec<usize>>,
    regions: BTreeMap<Region, Vec<usize>>,
}

const SHIPPED: &str = include_str!("../resources/g_and.json");

/// The shipped resource with all phases zero.
pub fn build_g_and() -> ResourceSpec {
    ResourceSpec::from_json(SHIPPED).expect("shipped resource is valid")
}

fn check_partition<K: fmt::Debug>(n: usize, parts: &BTreeMap<K, Vec<usize>>, what: &str) -> Result<()> {
    let mut seen = BTreeSet::new();
    for (k, vs) in parts {
        for &v in vs {
            if v == 0 || v > n {
                return Err(Error::InvalidGraph(format!(
                    "{what} {k:?} lists vertex {v} outside 1..={n}"
                )));
            }
            if !seen.insert(v) {
                return Err(Error::InvalidGraph(format!("{what} assigns vertex {v} twice")));
            }
        }
    }
    if seen.len() != n {
        return Err(Error::InvalidGraph(format!(
            "{what} covers {} of {n} vertices",
            seen.len()
        )));
    }
    Ok(())
}

impl ResourceSpec {
    pub fn from_file(file: GraphFile) -> Result<Self> {
        let n = file.n;
        if file.phases.len() != n {
            return Err(Error::InvalidGraph(format!(
                "{} phases for {n} vertices",
                file.phases.len()
            )));
        }
        let mut graph = Graph::empty(n);
        for [i, j] in file.edges {
            if i == 0 || j == 0 {
                return Err(Error::InvalidGraph("vertex labels start at 1".into()));
            }
            graph.add_edge(i - 1, j - 1)?;
        }
        check_partition(n, &file.ownership, "ownership")?;
        if file.ownership.len() != 3 || file.ownership.values().any(|v| v.len() != 4) {
            return Err(Error::InvalidGraph("each of A, B, R must own four vertices".into()));
        }
        if !file.regions.is_empty() {
            check_partition(n, &file.regions, "regions")?;
        }
        let mut ownership = file.ownership;
        for v in ownership.values_mut() {
            v.sort_unstable();
        }
        Ok(Self {
            graph,
            phases: PhaseVector::from_bits(file.phases),
            ownership,
            regions: file.regions,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(text)?)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            n: self.graph.n(),
            edges: self.graph.edges().into_iter().map(|(i, j)| [i + 1, j + 1]).collect(),
            phases: self.phases.bits().to_vec(),
            ownership: self.ownership.clone(),
            regions: self.regions.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("plain data serializes")
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn phases(&self) -> &PhaseVector {
        &self.phases
    }

    /// Labels held by `party`, ascending.
    pub fn owned(&self, party: Party) -> &[usize] {
        &self.ownership[&party]
    }

    pub fn owner(&self, label: usize) -> Option<Party> {
        self.ownership
            .iter()
            .find(|(_, vs)| vs.contains(&label))
            .map(|(p, _)| *p)
    }

    pub fn region(&self, region: Region) -> &[usize] {
        self.regions.get(&region).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Neighbors of a label, as labels.
    pub fn neighbors(&self, label: usize) -> Vec<usize> {
        self.graph.neighbors(label - 1).into_iter().map(|j| j + 1).collect()
    }

    pub fn initial_state(&self) -> GraphBasisState {
        GraphBasisState::new(self.graph.clone(), self.phases.clone()).expect("sizes checked on load")
    }

    pub fn with_edge_removed(&self, i: usize, j: usize) -> Result<Self> {
        let mut out = self.clone();
        out.graph.remove_edge(label_index(i)?, label_index(j)?)?;
        Ok(out)
    }

    pub fn with_edge_added(&self, i: usize, j: usize) -> Result<Self> {
        let mut out = self.clone();
        out.graph.add_edge(label_index(i)?, label_index(j)?)?;
        Ok(out)
    }
}

fn label_index(label: usize) -> Result<usize> {
    label
        .checked_sub(1)
        .ok_or_else(|| Error::InvalidGraph("vertex labels start at 1".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_resource_shape() {
        let spec = build_g_and();
        assert_eq!(spec.n(), 12);
        assert_eq!(spec.graph().edges().len(), 11);
        assert_eq!(spec.owned(Party::A), &[1, 5, 10, 11]);
        assert_eq!(spec.owned(Party::B), &[2, 4, 8, 9]);
        assert_eq!(spec.owned(Party::R), &[3, 6, 7, 12]);
        assert_eq!(spec.neighbors(2), vec![1, 3]);
        assert_eq!(spec.neighbors(5), vec![4, 6]);
        assert_eq!(spec.neighbors(7), vec![8]);
        assert_eq!(spec.owner(12), Some(Party::R));
    }

    #[test]
    fn fork_is_a_star_on_twelve() {
        let spec = build_g_and();
        let fork = spec.region(Region::Fork).iter().map(|v| v - 1).collect::<Vec<_>>();
        assert_eq!(spec.graph().induced_edges(&fork), vec![(8, 11), (9, 11), (10, 11)]);
    }

    #[test]
    fn json_round_trip() {
        let spec = build_g_and();
        assert_eq!(ResourceSpec::from_json(&spec.to_json()).unwrap(), spec);
    }

    #[test]
    fn broken_files_are_rejected() {
        let mut f = build_g_and().to_file();
        f.ownership.get_mut(&Party::A).unwrap().push(2);
        assert!(ResourceSpec::from_file(f).is_err());
        let mut f = build_g_and().to_file();
        f.phases.pop();
        assert!(ResourceSpec::from_file(f).is_err());
        let mut f = build_g_and().to_file();
        f.edges.push([0, 3]);
        assert!(ResourceSpec::from_file(f).is_err());
    }

    #[test]
    fn mutations() {
        let spec = build_g_and();
        assert!(!spec.with_edge_removed(9, 12).unwrap().graph().has_edge(8, 11));
        assert!(spec.with_edge_added(9, 10).unwrap().graph().has_edge(8, 9));
        assert!(spec.with_edge_added(0, 3).is_err());
    }
}
