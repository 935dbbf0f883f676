// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Graph states `Z^r |G>` and their single-qubit measurement rewrite rules.
//!
//! A [`GraphBasisState`] keeps every vertex label for its whole life.
//! Measured vertices are tombstoned: they lose their edges and remember the
//! observable and outcome, so the full register is always a stabilizer state.
//! Y and X measurements leave local Clifford rotations on surviving vertices;
//! these are kept in a per-vertex frame and folded into later basis choices
//! instead of being applied to the graph.

use crate::clifford::{conjugate_operator, LocalClifford};
use crate::coins::CoinSource;
use crate::error::{Error, Result};
use crate::pauli::{Basis, Letter, PauliOperator};
use crate::stabilizer::{Measurement, StabilizerState};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<bool>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            adj: vec![vec![false; n]; n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, i: usize) -> Result<()> {
        if i >= self.n {
            return Err(Error::VertexOutOfRange { vertex: i, n: self.n });
        }
        Ok(())
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.adj[i][j]
    }

    fn set_edge(&mut self, i: usize, j: usize, on: bool) {
        self.adj[i][j] = on;
        self.adj[j][i] = on;
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        self.check(i)?;
        self.check(j)?;
        if i == j {
            return Err(Error::InvalidGraph(format!("self loop at {i}")));
        }
        self.set_edge(i, j, true);
        Ok(())
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) -> Result<()> {
        self.check(i)?;
        self.check(j)?;
        self.set_edge(i, j, false);
        Ok(())
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.adj[i][j]).collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].iter().filter(|&&b| b).count()
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| ((i + 1)..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.adj[i][j])
            .collect()
    }

    /// `tau_i`: complements the edges inside the neighborhood of `i`.
    pub fn local_complementation(&self, i: usize) -> Result<Graph> {
        self.check(i)?;
        let mut g = self.clone();
        g.complement_neighborhood(i);
        Ok(g)
    }

    fn complement_neighborhood(&mut self, i: usize) {
        let nb = self.neighbors(i);
        for (a, &u) in nb.iter().enumerate() {
            for &v in &nb[a + 1..] {
                let on = !self.adj[u][v];
                self.set_edge(u, v, on);
            }
        }
    }

    fn isolate(&mut self, i: usize) {
        for j in 0..self.n {
            self.set_edge(i, j, false);
        }
    }

    /// Induced subgraph edges among `vertices`, as pairs of original labels.
    pub fn induced_edges(&self, vertices: &[usize]) -> Vec<(usize, usize)> {
        self.edges()
            .into_iter()
            .filter(|(i, j)| vertices.contains(i) && vertices.contains(j))
            .collect()
    }
}

/// The phase bits `r` of `Z^r |G>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct PhaseVector(Vec<bool>);

impl PhaseVector {
    pub fn zeros(n: usize) -> Self {
        Self(vec![false; n])
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn flip(&mut self, i: usize) {
        self.0[i] = !self.0[i];
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        self.0[i] = bit;
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }
}

/// `(-1)^{r_i} X_i prod_{j in N_i} Z_j`.
pub fn correlation_operator(g: &Graph, phases: &PhaseVector, i: usize) -> Result<PauliOperator> {
    g.check(i)?;
    if phases.len() != g.n() {
        return Err(Error::DimensionMismatch {
            left: g.n(),
            right: phases.len(),
        });
    }
    let mut letters = vec![(i, Letter::X)];
    letters.extend(g.neighbors(i).into_iter().map(|j| (j, Letter::Z)));
    Ok(PauliOperator::from_letters(g.n(), &letters).with_sign_bit(phases.get(i)))
}

/// Which neighbor serves as the pivot `j0` of an X measurement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NeighborRule {
    #[default]
    Smallest,
    Largest,
    /// Index into the sorted neighbor list, taken modulo the degree.
    Nth(usize),
}

impl NeighborRule {
    fn pick(self, neighbors: &[usize]) -> usize {
        match self {
            NeighborRule::Smallest => neighbors[0],
            NeighborRule::Largest => neighbors[neighbors.len() - 1],
            NeighborRule::Nth(k) => neighbors[k % neighbors.len()],
        }
    }
}

/// What was measured on a tombstoned vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MeasuredVertex {
    pub basis: Basis,
    pub outcome: bool,
}

/// Local components of a stabilizer element and the outcomes they gave.
#[derive(Debug, Clone)]
pub struct StabilizerTest {
    pub bases: Vec<(usize, Basis)>,
    pub outcomes: BTreeMap<usize, bool>,
    /// XOR of the phases of the tested generators; the outcomes must XOR to it.
    pub expected_parity: bool,
    pub state: GraphBasisState,
}

impl StabilizerTest {
    pub fn parity(&self) -> bool {
        self.outcomes.values().fold(false, |acc, &m| acc ^ m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphBasisState {
    graph: Graph,
    phases: PhaseVector,
    frame: Vec<LocalClifford>,
    measured: Vec<Option<MeasuredVertex>>,
}

impl GraphBasisState {
    pub fn new(graph: Graph, phases: PhaseVector) -> Result<Self> {
        if phases.len() != graph.n() {
            return Err(Error::DimensionMismatch {
                left: graph.n(),
                right: phases.len(),
            });
        }
        let n = graph.n();
        Ok(Self {
            graph,
            phases,
            frame: vec![LocalClifford::IDENTITY; n],
            measured: vec![None; n],
        })
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

    /// Pending local rotation on each vertex; identity where none.
    pub fn frame(&self) -> &[LocalClifford] {
        &self.frame
    }

    pub fn has_byproducts(&self) -> bool {
        self.frame.iter().any(|c| !c.is_identity())
    }

    pub fn is_live(&self, i: usize) -> bool {
        i < self.n() && self.measured[i].is_none()
    }

    pub fn live_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.is_live(i)).collect()
    }

    pub fn measured(&self, i: usize) -> Option<MeasuredVertex> {
        self.measured.get(i).copied().flatten()
    }

    fn check_live(&self, i: usize) -> Result<()> {
        self.graph.check(i)?;
        if self.measured[i].is_some() {
            return Err(Error::DeadVertex(i));
        }
        Ok(())
    }

    /// `(-1)^{r_i} K_i` in the graph frame, ignoring pending rotations.
    pub fn correlation_operator(&self, i: usize) -> Result<PauliOperator> {
        self.check_live(i)?;
        correlation_operator(&self.graph, &self.phases, i)
    }

    /// The generator of the physical state attached to vertex `i`.
    pub fn generator(&self, i: usize) -> Result<PauliOperator> {
        self.graph.check(i)?;
        Ok(match self.measured[i] {
            Some(m) => m.basis.with_sign_bit(m.outcome).on(self.n(), i),
            None => conjugate_operator(&correlation_operator(&self.graph, &self.phases, i)?, &self.frame),
        })
    }

    pub fn to_stabilizer(&self) -> StabilizerState {
        let gens = (0..self.n())
            .map(|i| self.generator(i).expect("vertex in range"))
            .collect();
        StabilizerState::new(gens).expect("graph basis states are valid stabilizer states")
    }

    pub fn measure_vertex(
        &self,
        i: usize,
        basis: Basis,
        coins: &mut dyn CoinSource,
        rule: NeighborRule,
    ) -> Result<(Measurement, GraphBasisState)> {
        let mut next = self.clone();
        let m = next.measure_vertex_in_place(i, basis, coins, rule)?;
        Ok((m, next))
    }

    /// Measures the physical observable `basis` on vertex `i`.
    ///
    /// A random outcome is the coin itself, so graph, tableau and dense
    /// simulations driven by the same coins follow the same branch.
    pub fn measure_vertex_in_place(
        &mut self,
        i: usize,
        basis: Basis,
        coins: &mut dyn CoinSource,
        rule: NeighborRule,
    ) -> Result<Measurement> {
        self.check_live(i)?;
        if basis.letter == Letter::I {
            return Err(Error::NotSingleQubit(basis.to_string()));
        }
        let local = self.frame[i].preimage(basis);
        let neighbors = self.graph.neighbors(i);
        let random = local.letter != Letter::X || !neighbors.is_empty();
        let (outcome, graph_outcome) = if random {
            let m = coins.flip();
            (m, m ^ local.negative)
        } else {
            let m = self.phases.get(i);
            (m ^ local.negative, m)
        };
        match local.letter {
            Letter::Z => self.rule_z(i, &neighbors, graph_outcome),
            Letter::Y => self.rule_y(i, &neighbors, graph_outcome),
            Letter::X if neighbors.is_empty() => {}
            Letter::X => self.rule_x(i, &neighbors, graph_outcome, rule),
            Letter::I => unreachable!(),
        }
        self.graph.isolate(i);
        self.phases.set(i, false);
        self.frame[i] = LocalClifford::IDENTITY;
        self.measured[i] = Some(MeasuredVertex { basis, outcome });
        Ok(Measurement {
            outcome,
            deterministic: !random,
        })
    }

    fn rule_z(&mut self, _i: usize, neighbors: &[usize], m: bool) {
        if m {
            for &j in neighbors {
                self.phases.flip(j);
            }
        }
    }

    fn rule_y(&mut self, i: usize, neighbors: &[usize], m: bool) {
        self.graph.complement_neighborhood(i);
        let flip = self.phases.get(i) ^ m;
        let root = LocalClifford::sqrt_rotation(Letter::Z, false);
        for &j in neighbors {
            if flip {
                self.phases.flip(j);
            }
            self.frame[j] = self.frame[j].after(&root);
        }
    }

    fn rule_x(&mut self, i: usize, ni: &[usize], m: bool, rule: NeighborRule) {
        let j0 = rule.pick(ni);
        let nj0 = self.graph.neighbors(j0);
        self.graph.complement_neighborhood(j0);
        self.graph.complement_neighborhood(i);
        self.graph.isolate(i);
        self.graph.complement_neighborhood(j0);
        let mut plus = if self.phases.get(i) ^ m {
            for &j in &nj0 {
                if j != i && !ni.contains(&j) {
                    self.phases.flip(j);
                }
            }
            false
        } else {
            for &j in ni {
                if j != j0 && !nj0.contains(&j) {
                    self.phases.flip(j);
                }
            }
            true
        };
        if self.phases.get(j0) {
            plus = !plus;
        }
        self.frame[j0] = self.frame[j0].after(&LocalClifford::sqrt_rotation(Letter::Y, plus));
    }

    /// Applies the physical Pauli `letter` on live vertex `i`.
    pub fn apply_pauli(&mut self, i: usize, letter: Letter) -> Result<()> {
        self.check_live(i)?;
        if letter == Letter::I {
            return Ok(());
        }
        let local = self.frame[i].preimage(Basis::plus(letter));
        if matches!(local.letter, Letter::Z | Letter::Y) {
            self.phases.flip(i);
        }
        if matches!(local.letter, Letter::X | Letter::Y) {
            for j in self.graph.neighbors(i) {
                self.phases.flip(j);
            }
        }
        Ok(())
    }

    /// `Z_i^exponent`.
    pub fn apply_z(&self, i: usize, exponent: bool) -> Result<GraphBasisState> {
        let mut next = self.clone();
        if exponent {
            next.apply_pauli(i, Letter::Z)?;
        } else {
            next.check_live(i)?;
        }
        Ok(next)
    }

    /// Measures the local components of `prod_{i in lambda} K_i` in
    /// increasing vertex order. The overall sign of the element is carried by
    /// the highest-index Y component, or by the last component if there is
    /// no Y.
    pub fn stabilizer_test(&self, lambda: &[usize], coins: &mut dyn CoinSource) -> Result<StabilizerTest> {
        self.stabilizer_test_signed_at(lambda, None, coins)
    }

    /// As [`stabilizer_test`](Self::stabilizer_test) with the sign placed on
    /// a chosen vertex of the support.
    pub fn stabilizer_test_signed_at(
        &self,
        lambda: &[usize],
        sign_vertex: Option<usize>,
        coins: &mut dyn CoinSource,
    ) -> Result<StabilizerTest> {
        if lambda.is_empty() {
            return Err(Error::EmptySet);
        }
        let n = self.n();
        let mut element = PauliOperator::identity(n);
        let mut expected_parity = false;
        for &i in lambda {
            self.check_live(i)?;
            let k = correlation_operator(&self.graph, &PhaseVector::zeros(n), i)?;
            element = element.mul_unchecked(&k);
            expected_parity ^= self.phases.get(i);
        }
        let element = conjugate_operator(&element, &self.frame);
        let support = element.support();
        let negative = element
            .is_negative()
            .expect("product of commuting generators is Hermitian");
        let carrier = match sign_vertex {
            Some(v) if support.contains(&v) => v,
            Some(v) => {
                return Err(Error::InvalidStabilizer(format!(
                    "vertex {v} is outside the support of the tested element"
                )))
            }
            None => support
                .iter()
                .rev()
                .find(|&&v| element.letter(v) == Letter::Y)
                .or(support.last())
                .copied()
                .ok_or(Error::EmptySet)?,
        };
        let bases: Vec<(usize, Basis)> = support
            .iter()
            .map(|&v| {
                let b = Basis::plus(element.letter(v));
                (v, if v == carrier { b.with_sign_bit(negative) } else { b })
            })
            .collect();
        let mut state = self.clone();
        let mut outcomes = BTreeMap::new();
        for &(v, b) in &bases {
            let m = state.measure_vertex_in_place(v, b, coins, NeighborRule::default())?;
            outcomes.insert(v, m.outcome);
        }
        Ok(StabilizerTest {
            bases,
            outcomes,
            expected_parity,
            state,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coins::{enumerate_branches, SeededCoins};
    use crate::stabilizer::Sign;
    use proptest::prelude::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    fn path3() -> Graph {
        Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn correlation_operators_read_off_the_graph() {
        let single = Graph::empty(1);
        assert_eq!(
            correlation_operator(&single, &PhaseVector::zeros(1), 0).unwrap(),
            p("X")
        );
        assert_eq!(
            correlation_operator(&path3(), &PhaseVector::zeros(3), 1).unwrap(),
            p("ZXZ")
        );
        assert!(matches!(
            correlation_operator(&path3(), &PhaseVector::zeros(3), 3),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn to_stabilizer_examples() {
        let empty = GraphBasisState::new(Graph::empty(2), PhaseVector::zeros(2)).unwrap();
        assert_eq!(empty.to_stabilizer().generators(), &[p("XI"), p("IX")]);
        let edge = GraphBasisState::new(
            Graph::from_edges(2, &[(0, 1)]).unwrap(),
            PhaseVector::from_bits(vec![true, false]),
        )
        .unwrap();
        assert_eq!(edge.to_stabilizer().generators(), &[p("-XZ"), p("ZX")]);
    }

    #[test]
    fn local_complementation_examples() {
        let tri = path3().local_complementation(1).unwrap();
        assert_eq!(tri.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        let lonely = Graph::empty(1);
        assert_eq!(lonely.local_complementation(0).unwrap(), lonely);
        assert!(path3().local_complementation(5).is_err());
    }

    #[test]
    fn z_measurement_moves_outcome_to_neighbor() {
        let s = GraphBasisState::new(Graph::from_edges(2, &[(0, 1)]).unwrap(), PhaseVector::zeros(2)).unwrap();
        for b in enumerate_branches(|c| s.measure_vertex(0, Basis::Z, c, NeighborRule::Smallest)).unwrap() {
            let (m, after) = b.value;
            assert_eq!(after.phases().get(1), m.outcome);
            assert_eq!(after.live_vertices(), vec![1]);
            let st = after.to_stabilizer();
            assert_eq!(st.contains(&p("IX")).unwrap(), Some(Sign::from_bit(m.outcome)));
        }
    }

    #[test]
    fn isolated_x_measurement_is_deterministic() {
        let s = GraphBasisState::new(Graph::empty(1), PhaseVector::from_bits(vec![true])).unwrap();
        let (m, _) = s
            .measure_vertex(0, Basis::X, &mut SeededCoins::new(1), NeighborRule::Smallest)
            .unwrap();
        assert!(m.deterministic && m.outcome);
    }

    #[test]
    fn dead_vertices_are_refused() {
        let s = GraphBasisState::new(path3(), PhaseVector::zeros(3)).unwrap();
        let (_, after) = s
            .measure_vertex(0, Basis::Z, &mut SeededCoins::new(1), NeighborRule::Smallest)
            .unwrap();
        assert_eq!(
            after
                .measure_vertex(0, Basis::X, &mut SeededCoins::new(1), NeighborRule::Smallest)
                .unwrap_err(),
            Error::DeadVertex(0)
        );
        assert_eq!(after.apply_z(0, true).unwrap_err(), Error::DeadVertex(0));
        assert!(matches!(
            after.stabilizer_test(&[], &mut SeededCoins::new(0)),
            Err(Error::EmptySet)
        ));
    }

    #[test]
    fn apply_z_is_an_involution() {
        let s = GraphBasisState::new(path3(), PhaseVector::zeros(3)).unwrap();
        assert_eq!(s.apply_z(1, false).unwrap(), s);
        let once = s.apply_z(1, true).unwrap();
        assert!(once.phases().get(1));
        assert_eq!(once.apply_z(1, true).unwrap(), s);
    }

    #[test]
    fn single_vertex_stabilizer_test() {
        let s = GraphBasisState::new(Graph::empty(1), PhaseVector::from_bits(vec![true])).unwrap();
        let t = s.stabilizer_test(&[0], &mut SeededCoins::new(0)).unwrap();
        assert!(t.outcomes[&0]);
        assert_eq!(t.bases, vec![(0, Basis::X)]);
    }

    fn random_graph(n: usize, seed: u64) -> (Graph, PhaseVector) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.4) {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
        let r = PhaseVector::from_bits((0..n).map(|_| rng.gen()).collect());
        (g, r)
    }

    proptest! {
        #[test]
        fn correlation_operators_commute_and_stabilize(n in 1usize..=8, seed in any::<u64>()) {
            let (g, _) = random_graph(n, seed);
            let zero = PhaseVector::zeros(n);
            let ks: Vec<_> = (0..n).map(|i| correlation_operator(&g, &zero, i).unwrap()).collect();
            for a in &ks {
                for b in &ks {
                    prop_assert!(a.commutes(b).unwrap());
                }
            }
            let st = GraphBasisState::new(g, zero).unwrap().to_stabilizer();
            for k in &ks {
                prop_assert_eq!(st.contains(k).unwrap(), Some(Sign::Plus));
            }
        }

        #[test]
        fn local_complementation_is_an_involution(n in 1usize..=8, seed in any::<u64>(), v in 0usize..8) {
            let (g, _) = random_graph(n, seed);
            let v = v % n;
            let twice = g.local_complementation(v).unwrap().local_complementation(v).unwrap();
            prop_assert_eq!(twice, g);
        }

        #[test]
        fn stabilizer_tests_obey_the_parity_law(n in 1usize..=7, seed in any::<u64>(), mask in 1u32..128) {
            let (g, r) = random_graph(n, seed);
            let lambda: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            prop_assume!(!lambda.is_empty());
            let s = GraphBasisState::new(g, r).unwrap();
            for b in enumerate_branches(|c| s.stabilizer_test(&lambda, c)).unwrap() {
                prop_assert_eq!(b.value.parity(), b.value.expected_parity);
            }
        }

        #[test]
        fn measurement_rules_match_the_tableau(n in 2usize..=7, seed in any::<u64>(), ops in prop::collection::vec((0usize..7, 0usize..3, any::<bool>()), 1..6)) {
            let (g, r) = random_graph(n, seed);
            let start = GraphBasisState::new(g, r).unwrap();
            let bases = [Basis::X, Basis::Y, Basis::Z];
            let run = |c: &mut crate::coins::ScriptedCoins| -> Result<Vec<(bool, bool, GraphBasisState, StabilizerState)>> {
                let mut gs = start.clone();
                let mut ts = start.to_stabilizer();
                let mut out = Vec::new();
                for &(v, b, neg) in &ops {
                    let v = v % n;
                    if !gs.is_live(v) { continue; }
                    let basis = bases[b].with_sign_bit(neg);
                    let m = gs.measure_vertex_in_place(v, basis, c, NeighborRule::Smallest)?;
                    // replay the graph's outcome on the tableau
                    let mut fixed = crate::coins::ScriptedCoins::new(vec![m.outcome]);
                    let t = ts.measure_in_place(&basis.on(n, v), &mut fixed)?;
                    out.push((m.outcome, t.outcome == m.outcome && t.deterministic == m.deterministic, gs.clone(), ts.clone()));
                }
                Ok(out)
            };
            for b in enumerate_branches(run).unwrap() {
                for (_, agree, gs, ts) in b.value {
                    prop_assert!(agree);
                    prop_assert!(gs.to_stabilizer().same_state(&ts));
                }
            }
        }
    }
}
