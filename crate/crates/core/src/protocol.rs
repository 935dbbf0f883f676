// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

//! The measurement protocol that extracts a multiplication triple from the
//! twelve-qubit resource.
//!
//! Each party only ever reads its own outcomes. Arm and tail measurements
//! (steps 1 to 3) fix `p`, `q` and `s`; step 4 routes `m2` and `m5` into the
//! fork as Z corrections; step 5 measures the fork in bases chosen from the
//! measuring party's own bits, and step 6 reads off the shares.

use crate::backend::{prepare, BackendKind, QuantumBackend};
use crate::bits;
use crate::coins::{enumerate_branches, Branch, CoinSource, SeededCoins};
use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::pauli::{Basis, Letter, PauliOperator};
use crate::resource::{Party, ResourceSpec};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const FORK: [usize; 4] = [9, 10, 11, 12];

/// Outcome bits keyed by vertex label.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Outcomes(#[serde(with = "bits::map")] BTreeMap<usize, bool>);

impl Outcomes {
    pub fn get(&self, label: usize) -> Option<bool> {
        self.0.get(&label).copied()
    }

    /// The outcome at `label`; panics if that vertex was never measured.
    pub fn m(&self, label: usize) -> bool {
        self.get(label)
            .unwrap_or_else(|| panic!("vertex {label} has not been measured"))
    }

    pub fn insert(&mut self, label: usize, bit: bool) {
        self.0.insert(label, bit);
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn restricted(&self, labels: &[usize]) -> Outcomes {
        Outcomes(
            self.0
                .iter()
                .filter(|(k, _)| labels.contains(k))
                .map(|(&k, &v)| (k, v))
                .collect(),
        )
    }

    pub fn merged(&self, other: &Outcomes) -> Outcomes {
        let mut out = self.clone();
        out.0.extend(other.0.iter().map(|(&k, &v)| (k, v)));
        out
    }
}

impl FromIterator<(usize, bool)> for Outcomes {
    fn from_iter<I: IntoIterator<Item = (usize, bool)>>(iter: I) -> Self {
        Outcomes(iter.into_iter().collect())
    }
}

/// One party's output of a triple distribution: `p` for A, `q` for B, and
/// additive shares of `pq`. `s` is the auxiliary bit B and R both hold; the
/// ideal functionality has none.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TripleShares {
    #[serde(with = "bits")]
    pub p: bool,
    #[serde(with = "bits")]
    pub q: bool,
    #[serde(with = "bits::option", default, skip_serializing_if = "Option::is_none")]
    pub s: Option<bool>,
    #[serde(with = "bits")]
    pub share_a: bool,
    #[serde(with = "bits")]
    pub share_b: bool,
    #[serde(with = "bits")]
    pub share_r: bool,
}

impl TripleShares {
    pub fn reconstruct(&self) -> bool {
        self.share_a ^ self.share_b ^ self.share_r
    }

    pub fn is_valid(&self) -> bool {
        self.reconstruct() == (self.p & self.q)
    }

    /// Drops `s`, leaving what the ideal functionality would hand out.
    pub fn without_aux(&self) -> Self {
        Self { s: None, ..*self }
    }

    pub fn share(&self, party: Party) -> bool {
        match party {
            Party::A => self.share_a,
            Party::B => self.share_b,
            Party::R => self.share_r,
        }
    }
}

/// What one party holds after the protocol: its four raw outcomes and the
/// four derived bits
/// A: `(p, m5, [pq]_A, q^s)`, B: `(m2, q, s, [pq]_B)`, R: `(m3, m6, s, [pq]_R)`.
///
/// A's last bit is the value the joint `X10 X11` measurement would reveal;
/// an honest A never computes it, but the privacy claims are made for the
/// view that includes it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PartyView {
    pub party: Party,
    pub raw: Outcomes,
    #[serde(with = "bits::vec")]
    pub derived: Vec<bool>,
}

impl PartyView {
    pub fn derived_names(party: Party) -> [&'static str; 4] {
        match party {
            Party::A => ["p", "m5", "[pq]_A", "q^s"],
            Party::B => ["m2", "q", "s", "[pq]_B"],
            Party::R => ["m3", "m6", "s", "[pq]_R"],
        }
    }

    pub fn derived_bits(&self) -> [bool; 4] {
        [self.derived[0], self.derived[1], self.derived[2], self.derived[3]]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Action {
    Measure { vertex: usize },
    Zcorr { vertex: usize },
}

impl Action {
    pub fn vertex(self) -> usize {
        match self {
            Action::Measure { vertex } | Action::Zcorr { vertex } => vertex,
        }
    }
}

const fn measure(vertex: usize) -> Action {
    Action::Measure { vertex }
}

const fn zcorr(vertex: usize) -> Action {
    Action::Zcorr { vertex }
}

/// The outcome that decides a step-4 correction on `target`.
pub fn correction_source(target: usize) -> Option<usize> {
    match target {
        9 => Some(2),
        11 => Some(5),
        _ => None,
    }
}

fn need(known: &Outcomes, label: usize, target: usize) -> Result<bool> {
    known.get(label).ok_or_else(|| {
        Error::InadmissibleSchedule(format!(
            "vertex {target} needs m{label}, which its owner has not measured yet"
        ))
    })
}

/// The basis the owner of `vertex` uses, given the owner's own outcomes.
pub fn basis_for(vertex: usize, known: &Outcomes) -> Result<Basis> {
    Ok(match vertex {
        1 | 3 | 4 | 6 | 8 => Basis::Z,
        2 | 5 | 7 => Basis::X,
        // s read from m8 by B and from m7 by R
        9 => {
            if need(known, 8, 9)? {
                Basis::Y
            } else {
                Basis::Z
            }
        }
        10 => {
            if need(known, 1, 10)? {
                Basis::Y
            } else {
                Basis::Z
            }
        }
        11 => {
            if need(known, 1, 11)? {
                Basis::Y.negated()
            } else {
                Basis::Z
            }
        }
        12 => {
            if need(known, 7, 12)? {
                Basis::Y
            } else {
                Basis::X
            }
        }
        v => return Err(Error::VertexOutOfRange { vertex: v, n: 12 }),
    })
}

/// An ordering of all parties' actions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule(pub Vec<Action>);

impl Schedule {
    /// Steps 1 to 5 in the order they are listed for the protocol.
    pub fn canonical() -> Self {
        Schedule(vec![
            measure(1),
            measure(2),
            measure(3),
            measure(5),
            measure(4),
            measure(6),
            measure(7),
            measure(8),
            zcorr(9),
            zcorr(11),
            measure(9),
            measure(10),
            measure(11),
            measure(12),
        ])
    }

    /// One party's actions in its own order.
    pub fn party_actions(party: Party) -> Vec<Action> {
        match party {
            Party::A => vec![measure(1), measure(5), zcorr(11), measure(10), measure(11)],
            Party::B => vec![measure(2), measure(4), measure(8), zcorr(9), measure(9)],
            Party::R => vec![measure(3), measure(6), measure(7), measure(12)],
        }
    }

    /// Parties run to completion one after another.
    pub fn sequential(order: &[Party]) -> Self {
        Schedule(order.iter().flat_map(|&p| Self::party_actions(p)).collect())
    }

    pub fn without(&self, party: Party, spec: &ResourceSpec) -> Self {
        Schedule(
            self.0
                .iter()
                .copied()
                .filter(|a| spec.owner(a.vertex()) != Some(party))
                .collect(),
        )
    }

    /// Checks that exactly the parties in `active` act, each performs its
    /// actions once, and every party finishes its appendage measurements
    /// before it touches the fork.
    pub fn validate(&self, spec: &ResourceSpec, active: &[Party]) -> Result<()> {
        let mut per_party: BTreeMap<Party, Vec<Action>> = BTreeMap::new();
        for &a in &self.0 {
            let owner = spec.owner(a.vertex()).ok_or(Error::VertexOutOfRange {
                vertex: a.vertex(),
                n: spec.n(),
            })?;
            if !active.contains(&owner) {
                return Err(Error::InadmissibleSchedule(format!(
                    "{owner} is not active but acts on {}",
                    a.vertex()
                )));
            }
            per_party.entry(owner).or_default().push(a);
        }
        for &party in active {
            let mut got = per_party.remove(&party).unwrap_or_default();
            let order = got.clone();
            let mut want = Self::party_actions(party);
            got.sort();
            want.sort();
            if got != want {
                return Err(Error::InadmissibleSchedule(format!(
                    "{party} must perform exactly {want:?}, got {got:?}"
                )));
            }
            let mut touched_fork = false;
            for a in order {
                let fork = FORK.contains(&a.vertex());
                if !fork && touched_fork {
                    return Err(Error::InadmissibleSchedule(format!(
                        "{party} measures appendage vertex {} after acting on the fork",
                        a.vertex()
                    )));
                }
                touched_fork |= fork;
                if let Action::Measure { vertex } = a {
                    if correction_source(vertex).is_some() {
                        let corrected = self.0.iter().position(|&b| b == zcorr(vertex));
                        let measured = self.0.iter().position(|&b| b == a);
                        if corrected > measured {
                            return Err(Error::InadmissibleSchedule(format!(
                                "vertex {vertex} is measured before its correction"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EventOp {
    Measure,
    Zcorr,
    Assign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Event {
    pub actor: Party,
    pub op: EventOp,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Basis>,
    #[serde(with = "bits::option", default, skip_serializing_if = "Option::is_none")]
    pub outcome: Option<bool>,
    #[serde(with = "bits::option", default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(with = "bits::option", default, skip_serializing_if = "Option::is_none")]
    pub value: Option<bool>,
}

impl Event {
    fn assign(actor: Party, name: &str, value: bool) -> Self {
        Event {
            actor,
            op: EventOp::Assign,
            vertex: None,
            basis: None,
            outcome: None,
            exponent: None,
            name: Some(name.to_string()),
            value: Some(value),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub session: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub backend: BackendKind,
    pub events: Vec<Event>,
    pub shares: TripleShares,
}

impl Transcript {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// The measurement and correction order recorded in the events.
    pub fn schedule(&self) -> Schedule {
        Schedule(
            self.events
                .iter()
                .filter_map(|e| match (e.op, e.vertex) {
                    (EventOp::Measure, Some(v)) => Some(measure(v)),
                    (EventOp::Zcorr, Some(v)) => Some(zcorr(v)),
                    _ => None,
                })
                .collect(),
        )
    }
}

/// A protocol execution in progress on one backend.
pub struct Session<'a> {
    spec: &'a ResourceSpec,
    backend: Box<dyn QuantumBackend>,
    known: BTreeMap<Party, Outcomes>,
    events: Vec<Event>,
}

impl<'a> Session<'a> {
    pub fn new(spec: &'a ResourceSpec, kind: BackendKind) -> Result<Self> {
        Ok(Self {
            spec,
            backend: prepare(kind, spec.graph(), spec.phases())?,
            known: Party::ALL.iter().map(|&p| (p, Outcomes::default())).collect(),
            events: Vec::new(),
        })
    }

    pub fn spec(&self) -> &ResourceSpec {
        self.spec
    }

    pub fn backend(&self) -> &dyn QuantumBackend {
        self.backend.as_ref()
    }

    pub fn backend_mut(&mut self) -> &mut dyn QuantumBackend {
        self.backend.as_mut()
    }

    pub fn known(&self, party: Party) -> &Outcomes {
        &self.known[&party]
    }

    /// Every outcome so far, whoever holds it.
    pub fn outcomes(&self) -> Outcomes {
        self.known.values().fold(Outcomes::default(), |acc, o| acc.merged(o))
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    fn actor(&self, vertex: usize) -> Result<Party> {
        self.spec.owner(vertex).ok_or(Error::VertexOutOfRange {
            vertex,
            n: self.spec.n(),
        })
    }

    pub fn step(&mut self, action: Action, coins: &mut dyn CoinSource) -> Result<()> {
        let n = self.spec.n();
        let actor = self.actor(action.vertex())?;
        let event = match action {
            Action::Measure { vertex } => {
                let basis = basis_for(vertex, &self.known[&actor])?;
                let m = self.backend.measure(&basis.on(n, vertex - 1), coins)?;
                self.known
                    .get_mut(&actor)
                    .expect("all parties present")
                    .insert(vertex, m.outcome);
                Event {
                    actor,
                    op: EventOp::Measure,
                    vertex: Some(vertex),
                    basis: Some(basis),
                    outcome: Some(m.outcome),
                    exponent: None,
                    name: None,
                    value: None,
                }
            }
            Action::Zcorr { vertex } => {
                let source = correction_source(vertex).ok_or_else(|| {
                    Error::InadmissibleSchedule(format!("no correction is defined on vertex {vertex}"))
                })?;
                let exponent = need(&self.known[&actor], source, vertex)?;
                if exponent {
                    self.backend
                        .apply_pauli(&PauliOperator::single(n, vertex - 1, Letter::Z))?;
                }
                Event {
                    actor,
                    op: EventOp::Zcorr,
                    vertex: Some(vertex),
                    basis: None,
                    outcome: None,
                    exponent: Some(exponent),
                    name: None,
                    value: None,
                }
            }
        };
        self.events.push(event);
        Ok(())
    }

    pub fn run(&mut self, actions: &[Action], coins: &mut dyn CoinSource) -> Result<()> {
        for &a in actions {
            self.step(a, coins)?;
        }
        Ok(())
    }

    /// Step 6 for a completed honest run.
    pub fn finish(mut self) -> Result<HonestRun> {
        let o = self.outcomes();
        if o.len() != 12 {
            return Err(Error::InadmissibleSchedule(format!(
                "only {} of 12 vertices measured",
                o.len()
            )));
        }
        if o.m(7) != o.m(8) {
            return Err(Error::ResourceIntegrity(
                "B and R read different values of s (m7 != m8)".into(),
            ));
        }
        let shares = shares_from(&o);
        if !shares.is_valid() {
            return Err(Error::ResourceIntegrity(format!(
                "shares XOR to {} but pq = {}",
                shares.reconstruct() as u8,
                (shares.p & shares.q) as u8
            )));
        }
        self.events.extend([
            Event::assign(Party::A, "p", shares.p),
            Event::assign(Party::A, "share", shares.share_a),
            Event::assign(Party::B, "q", shares.q),
            Event::assign(Party::B, "s", o.m(8)),
            Event::assign(Party::B, "share", shares.share_b),
            Event::assign(Party::R, "s", o.m(7)),
            Event::assign(Party::R, "share", shares.share_r),
        ]);
        let views = Party::ALL.map(|p| view_from(self.spec, p, &o));
        Ok(HonestRun {
            backend: self.backend.kind(),
            outcomes: o,
            shares,
            views,
            events: self.events,
        })
    }
}

fn shares_from(o: &Outcomes) -> TripleShares {
    TripleShares {
        p: o.m(1),
        q: o.m(4),
        s: Some(o.m(8)),
        share_a: o.m(10) ^ o.m(11),
        share_b: o.m(9),
        share_r: o.m(12),
    }
}

/// The view of `party` in an execution with the given outcomes.
pub fn view_from(spec: &ResourceSpec, party: Party, o: &Outcomes) -> PartyView {
    let derived = match party {
        Party::A => vec![o.m(1), o.m(5), o.m(10) ^ o.m(11), o.m(4) ^ o.m(8)],
        Party::B => vec![o.m(2), o.m(4), o.m(8), o.m(9)],
        Party::R => vec![o.m(3), o.m(6), o.m(7), o.m(12)],
    };
    PartyView {
        party,
        raw: o.restricted(spec.owned(party)),
        derived,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HonestRun {
    pub backend: BackendKind,
    pub outcomes: Outcomes,
    pub shares: TripleShares,
    pub views: [PartyView; 3],
    pub events: Vec<Event>,
}

impl HonestRun {
    pub fn view(&self, party: Party) -> &PartyView {
        &self.views[party as usize]
    }

    pub fn transcript(&self, session: &str, seed: Option<u64>) -> Transcript {
        Transcript {
            session: session.to_string(),
            seed,
            backend: self.backend,
            events: self.events.clone(),
            shares: self.shares,
        }
    }
}

/// The trusted-dealer functionality: uniform `p`, `q` and a uniform
/// three-way sharing of `pq`. Draws exactly four flips.
pub fn f_td_ideal(coins: &mut dyn CoinSource) -> TripleShares {
    let p = coins.flip();
    let q = coins.flip();
    let share_a = coins.flip();
    let share_b = coins.flip();
    TripleShares {
        p,
        q,
        s: None,
        share_a,
        share_b,
        share_r: (p & q) ^ share_a ^ share_b,
    }
}

/// Runs the protocol with all three parties honest.
pub fn run_pi_and(
    spec: &ResourceSpec,
    kind: BackendKind,
    schedule: &Schedule,
    coins: &mut dyn CoinSource,
) -> Result<HonestRun> {
    schedule.validate(spec, &Party::ALL)?;
    let mut session = Session::new(spec, kind)?;
    session.run(&schedule.0, coins)?;
    session.finish()
}

/// Re-executes a seeded transcript and checks every event matches.
pub fn replay(spec: &ResourceSpec, transcript: &Transcript) -> Result<HonestRun> {
    let seed = transcript
        .seed
        .ok_or_else(|| Error::MissingInput("transcript has no seed to replay".into()))?;
    let run = run_pi_and(
        spec,
        transcript.backend,
        &transcript.schedule(),
        &mut SeededCoins::new(seed),
    )?;
    for (index, (a, b)) in transcript.events.iter().zip(&run.events).enumerate() {
        if a != b {
            return Err(Error::ReplayMismatch {
                index,
                detail: format!("recorded {a:?}, replayed {b:?}"),
            });
        }
    }
    if transcript.events.len() != run.events.len() {
        return Err(Error::ReplayMismatch {
            index: run.events.len().min(transcript.events.len()),
            detail: "event counts differ".into(),
        });
    }
    Ok(run)
}

/// Every branch of an honest run.
pub fn enumerate_runs(spec: &ResourceSpec, kind: BackendKind, schedule: &Schedule) -> Result<Vec<Branch<HonestRun>>> {
    schedule.validate(spec, &Party::ALL)?;
    enumerate_branches(|coins| {
        let mut session = Session::new(spec, kind)?;
        session.run(&schedule.0, coins)?;
        session.finish()
    })
}

/// Runs `actions` on every branch and hands each finished session to
/// `inspect`, which may keep drawing from the same coins.
pub fn enumerate_sessions<T, F>(
    spec: &ResourceSpec,
    kind: BackendKind,
    actions: &[Action],
    mut inspect: F,
) -> Result<Vec<Branch<T>>>
where
    F: FnMut(&mut Session<'_>, &mut dyn CoinSource) -> Result<T>,
{
    enumerate_branches(|coins| {
        let mut session = Session::new(spec, kind)?;
        session.run(actions, coins)?;
        inspect(&mut session, coins)
    })
}

/// Exact joint distribution of the shares and the three views.
pub fn triple_distribution(
    spec: &ResourceSpec,
    kind: BackendKind,
) -> Result<Distribution<(TripleShares, [PartyView; 3])>> {
    let runs = enumerate_runs(spec, kind, &Schedule::canonical())?;
    Ok(runs
        .iter()
        .map(|b| ((b.value.shares, b.value.views.clone()), b.weight()))
        .collect())
}

/// Whether every schedule yields the same joint distribution of outcomes and
/// shares. Inadmissible schedules are an error.
pub fn interleaving_check(spec: &ResourceSpec, kind: BackendKind, schedules: &[Schedule]) -> Result<bool> {
    let mut reference: Option<Distribution<(Outcomes, TripleShares)>> = None;
    for s in schedules {
        let d: Distribution<_> = enumerate_runs(spec, kind, s)?
            .iter()
            .map(|b| ((b.value.outcomes.clone(), b.value.shares), b.weight()))
            .collect();
        match &reference {
            None => reference = Some(d),
            Some(r) if !r.same(&d) => return Ok(false),
            Some(_) => {}
        }
    }
    Ok(true)
}


#[cfg(test)]
mod enumeration_tests {
    use super::*;
    use crate::resource::build_g_and;
    use crate::Prob;

    #[test]
    fn every_branch_is_a_valid_triple_and_pqs_is_uniform() {
        let spec = build_g_and();
        let runs = enumerate_runs(&spec, BackendKind::Tableau, &Schedule::canonical()).unwrap();
        assert_eq!(runs.len(), 256);
        let pqs: Distribution<(bool, bool, bool)> = runs
            .iter()
            .map(|b| {
                (
                    (b.value.shares.p, b.value.shares.q, b.value.shares.s.unwrap()),
                    b.weight::<Prob>(),
                )
            })
            .collect();
        assert_eq!(pqs.len(), 8);
        assert!(pqs.iter().all(|(_, w)| *w == Prob::new(1, 8)));
    }

    #[test]
    fn backends_agree() {
        let spec = build_g_and();
        let t = triple_distribution(&spec, BackendKind::Tableau).unwrap();
        for kind in [BackendKind::Dense, BackendKind::Graph] {
            assert!(t.same(&triple_distribution(&spec, kind).unwrap()), "{kind}");
        }
    }

    #[test]
    fn interleavings_agree() {
        let spec = build_g_and();
        let schedules = [
            Schedule::canonical(),
            Schedule::sequential(&[Party::A, Party::B, Party::R]),
            Schedule::sequential(&[Party::R, Party::B, Party::A]),
            Schedule::sequential(&[Party::B, Party::R, Party::A]),
        ];
        assert!(interleaving_check(&spec, BackendKind::Tableau, &schedules).unwrap());
    }
}
