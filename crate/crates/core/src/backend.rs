// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Interchangeable simulators behind one measurement interface.

use crate::coins::CoinSource;
use crate::dense::DenseState;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBasisState, NeighborRule, PhaseVector};
use crate::pauli::{Basis, PauliOperator};
use crate::scalar::Real;
use crate::stabilizer::{Measurement, Sign, StabilizerState};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    Tableau,
    Dense,
    Graph,
}

impl BackendKind {
    pub const ALL: [BackendKind; 3] = [BackendKind::Tableau, BackendKind::Dense, BackendKind::Graph];

    pub fn name(self) -> &'static str {
        match self {
            BackendKind::Tableau => "tableau",
            BackendKind::Dense => "dense",
            BackendKind::Graph => "graph",
        }
    }
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BackendKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Serialization(format!("unknown backend {s:?}")))
    }
}

pub trait QuantumBackend {
    fn kind(&self) -> BackendKind;

    fn n(&self) -> usize;

    /// Measures a Hermitian Pauli; random outcomes are the coin itself.
    fn measure(&mut self, obs: &PauliOperator, coins: &mut dyn CoinSource) -> Result<Measurement>;

    fn apply_pauli(&mut self, op: &PauliOperator) -> Result<()>;

    /// `Some(s)` when `s * obs` stabilizes the current state.
    fn stabilizer_sign(&self, obs: &PauliOperator) -> Result<Option<Sign>>;

    /// The current state as a stabilizer group, where the backend has one.
    fn stabilizer(&self) -> Option<StabilizerState>;
}

/// Prepares `Z^r |G>` on the chosen simulator.
pub fn prepare(kind: BackendKind, graph: &Graph, phases: &PhaseVector) -> Result<Box<dyn QuantumBackend>> {
    let gs = GraphBasisState::new(graph.clone(), phases.clone())?;
    Ok(match kind {
        BackendKind::Tableau => Box::new(TableauBackend(gs.to_stabilizer())),
        BackendKind::Dense => Box::new(DenseBackend(DenseState::<f64>::build_graph_state(graph, phases)?)),
        BackendKind::Graph => Box::new(GraphBackend::new(gs, NeighborRule::default())),
    })
}

#[derive(Debug, Clone)]
pub struct TableauBackend(pub StabilizerState);

impl QuantumBackend for TableauBackend {
    fn kind(&self) -> BackendKind {
        BackendKind::Tableau
    }

    fn n(&self) -> usize {
        self.0.n()
    }

    fn measure(&mut self, obs: &PauliOperator, coins: &mut dyn CoinSource) -> Result<Measurement> {
        self.0.measure_in_place(obs, coins)
    }

    fn apply_pauli(&mut self, op: &PauliOperator) -> Result<()> {
        self.0.apply_pauli(op)
    }

    fn stabilizer_sign(&self, obs: &PauliOperator) -> Result<Option<Sign>> {
        self.0.contains(obs)
    }

    fn stabilizer(&self) -> Option<StabilizerState> {
        Some(self.0.clone())
    }
}

#[derive(Debug, Clone)]
pub struct DenseBackend<T: Real = f64>(pub DenseState<T>);

impl<T: Real> QuantumBackend for DenseBackend<T> {
    fn kind(&self) -> BackendKind {
        BackendKind::Dense
    }

    fn n(&self) -> usize {
        self.0.n()
    }

    fn measure(&mut self, obs: &PauliOperator, coins: &mut dyn CoinSource) -> Result<Measurement> {
        if !obs.is_hermitian() {
            return Err(Error::NotHermitian(obs.to_string()));
        }
        let p0 = self.0.probability(obs, false)?;
        let tol = T::tolerance();
        let (outcome, deterministic) = if (p0 - T::one()).abs() < tol {
            (false, true)
        } else if p0.abs() < tol {
            (true, true)
        } else if (p0 - T::lit(0.5)).abs() < tol {
            (coins.flip(), false)
        } else {
            return Err(Error::NonDyadicProbability(format!("{p0:?}")));
        };
        self.0 = self.0.measure_pauli_dense(obs, outcome)?.1;
        Ok(Measurement { outcome, deterministic })
    }

    fn apply_pauli(&mut self, op: &PauliOperator) -> Result<()> {
        self.0.apply_pauli(op)
    }

    fn stabilizer_sign(&self, obs: &PauliOperator) -> Result<Option<Sign>> {
        self.0.stabilizer_sign(obs)
    }

    fn stabilizer(&self) -> Option<StabilizerState> {
        None
    }
}

/// Rewrite-rule simulator; accepts single-qubit measurements only.
#[derive(Debug, Clone)]
pub struct GraphBackend {
    pub state: GraphBasisState,
    pub rule: NeighborRule,
}

impl GraphBackend {
    pub fn new(state: GraphBasisState, rule: NeighborRule) -> Self {
        Self { state, rule }
    }
}

impl QuantumBackend for GraphBackend {
    fn kind(&self) -> BackendKind {
        BackendKind::Graph
    }

    fn n(&self) -> usize {
        self.state.n()
    }

    fn measure(&mut self, obs: &PauliOperator, coins: &mut dyn CoinSource) -> Result<Measurement> {
        if obs.n() != self.n() {
            return Err(Error::DimensionMismatch {
                left: self.n(),
                right: obs.n(),
            });
        }
        let (q, basis): (usize, Basis) =
            Basis::from_operator(obs).ok_or_else(|| Error::NotSingleQubit(obs.to_string()))?;
        self.state.measure_vertex_in_place(q, basis, coins, self.rule)
    }

    fn apply_pauli(&mut self, op: &PauliOperator) -> Result<()> {
        for q in op.support() {
            self.state.apply_pauli(q, op.letter(q))?;
        }
        Ok(())
    }

    fn stabilizer_sign(&self, obs: &PauliOperator) -> Result<Option<Sign>> {
        self.state.to_stabilizer().contains(obs)
    }

    fn stabilizer(&self) -> Option<StabilizerState> {
        Some(self.state.to_stabilizer())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coins::enumerate_branches;

    #[test]
    fn kinds_round_trip() {
        for k in BackendKind::ALL {
            assert_eq!(k.to_string().parse::<BackendKind>().unwrap(), k);
        }
        assert!("quantum".parse::<BackendKind>().is_err());
    }

    #[test]
    fn backends_walk_the_same_tree() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let r = PhaseVector::from_bits(vec![false, true, false]);
        let obs: Vec<PauliOperator> = ["XII", "IYI", "IIZ"].iter().map(|s| s.parse().unwrap()).collect();
        let trees: Vec<_> = BackendKind::ALL
            .iter()
            .map(|&k| {
                enumerate_branches(|c| {
                    let mut b = prepare(k, &g, &r)?;
                    obs.iter().map(|o| b.measure(o, c)).collect::<Result<Vec<_>>>()
                })
                .unwrap()
            })
            .collect();
        assert_eq!(trees[0], trees[1]);
        assert_eq!(trees[0], trees[2]);
    }

    #[test]
    fn graph_backend_rejects_joint_observables() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let mut b = prepare(BackendKind::Graph, &g, &PhaseVector::zeros(2)).unwrap();
        let err = b
            .measure(&"XX".parse().unwrap(), &mut crate::coins::SeededCoins::new(0))
            .unwrap_err();
        assert!(matches!(err, Error::NotSingleQubit(_)));
    }
}
