// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Privacy analysis against one malicious party.
//!
//! With the other two parties honest, the corrupted party's four qubits end
//! up in a pure stabilizer state whose phases are XOR formulas over the honest
//! outcomes. Everything here is computed from exact branch enumeration, so
//! "perfect privacy" is checked as rational equality.

use crate::backend::BackendKind;
use crate::coins::{enumerate_branches, CoinSource};
use crate::dist::{conditional_table, Distribution};
use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliOperator};
use crate::protocol::{
    enumerate_runs, enumerate_sessions, f_td_ideal, Action, Outcomes, PartyView, Schedule, TripleShares,
};
use crate::resource::{Party, ResourceSpec};
use crate::stabilizer::{Sign, StabilizerState};
use crate::Prob;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// XOR of monomials in outcome bits `m_v`. The empty monomial is the
/// constant 1.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PhaseFormula(Vec<Vec<usize>>);

impl PhaseFormula {
    pub fn zero() -> Self {
        PhaseFormula(Vec::new())
    }

    /// `terms` lists monomials by their variable labels.
    pub fn new(terms: &[&[usize]]) -> Self {
        PhaseFormula(terms.iter().map(|t| t.to_vec()).collect())
    }

    pub fn terms(&self) -> &[Vec<usize>] {
        &self.0
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.0.iter().flatten().copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn eval(&self, o: &Outcomes) -> bool {
        self.0.iter().fold(false, |acc, t| acc ^ t.iter().all(|&v| o.m(v)))
    }
}

impl fmt::Display for PhaseFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .map(|t| {
                if t.is_empty() {
                    "1".to_string()
                } else {
                    t.iter().map(|v| format!("m{v}")).collect::<Vec<_>>().join("")
                }
            })
            .collect();
        f.write_str(&terms.join(" ^ "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualGenerator {
    /// The label `i` of the phase bit `c_i` this generator carries.
    pub label: usize,
    /// Unsigned generator on the full register.
    pub operator: PauliOperator,
    pub phase: PhaseFormula,
}

impl ResidualGenerator {
    pub fn signed(&self, o: &Outcomes) -> PauliOperator {
        self.operator.with_sign_bit(self.phase.eval(o))
    }
}

/// The state a corrupted party holds once the honest pair has finished.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualStabilizer {
    pub party: Party,
    pub generators: Vec<ResidualGenerator>,
}

impl ResidualStabilizer {
    pub fn signed(&self, o: &Outcomes) -> Vec<PauliOperator> {
        self.generators.iter().map(|g| g.signed(o)).collect()
    }
}

const N: usize = 12;

fn op(letters: &[(usize, Letter)]) -> PauliOperator {
    let zero_based: Vec<(usize, Letter)> = letters.iter().map(|&(l, p)| (l - 1, p)).collect();
    PauliOperator::from_letters(N, &zero_based)
}

/// The four unsigned generators of `party`'s residual state, keyed by phase
/// label. `s` picks the rotated basis on the fork qubit for B and R.
pub fn residual_operators(party: Party, s: bool) -> [(usize, PauliOperator); 4] {
    use Letter::*;
    match party {
        Party::A => [
            (1, op(&[(1, Z)])),
            (5, op(&[(5, X)])),
            (10, op(&[(10, X), (11, X)])),
            (11, op(&[(10, Z), (11, Z)])),
        ],
        Party::B => [
            (2, op(&[(2, X)])),
            (4, op(&[(4, Z)])),
            (8, op(&[(8, Z)])),
            (9, op(&[(9, if s { Y } else { Z })])),
        ],
        Party::R => [
            (3, op(&[(3, Z)])),
            (6, op(&[(6, Z)])),
            (7, op(&[(7, X)])),
            (12, op(&[(12, if s { Y } else { X })])),
        ],
    }
}

fn single_corruption(corrupted: &[Party]) -> Result<Party> {
    match corrupted {
        [p] => Ok(*p),
        _ => Err(Error::UnsupportedCorruption(corrupted.len())),
    }
}

/// Residual stabilizer of the corrupted party given the honest pair's
/// outcomes (all of their measurements, fork included).
pub fn residual_stabilizer(corrupted: &[Party], honest: &Outcomes) -> Result<ResidualStabilizer> {
    let party = single_corruption(corrupted)?;
    let (s, phases) = match party {
        Party::A => (
            false,
            [
                PhaseFormula::new(&[&[2], &[3]]),
                PhaseFormula::new(&[&[4], &[6]]),
                PhaseFormula::new(&[&[6], &[8]]),
                PhaseFormula::new(&[&[2, 8], &[3, 8], &[9], &[12]]),
            ],
        ),
        Party::B => (
            honest.m(7),
            [
                PhaseFormula::new(&[&[1], &[3]]),
                PhaseFormula::new(&[&[5], &[6]]),
                PhaseFormula::new(&[&[7]]),
                PhaseFormula::new(&[&[1, 5], &[1, 6], &[1, 7], &[3, 7], &[10], &[11], &[12]]),
            ],
        ),
        Party::R => (
            honest.m(8),
            [
                PhaseFormula::new(&[&[1], &[2]]),
                PhaseFormula::new(&[&[4], &[5]]),
                PhaseFormula::new(&[&[8]]),
                PhaseFormula::new(&[&[1, 4], &[9], &[10], &[11]]),
            ],
        ),
    };
    let generators = residual_operators(party, s)
        .into_iter()
        .zip(phases)
        .map(|((label, operator), phase)| ResidualGenerator { label, operator, phase })
        .collect();
    Ok(ResidualStabilizer { party, generators })
}

/// The honest pair's actions when `corrupted` stays idle.
pub fn honest_pair_schedule(spec: &ResourceSpec, corrupted: Party) -> Result<Schedule> {
    let s = Schedule::canonical().without(corrupted, spec);
    let active: Vec<Party> = Party::ALL.into_iter().filter(|&p| p != corrupted).collect();
    s.validate(spec, &active)?;
    Ok(s)
}

fn zero_based(labels: &[usize]) -> Vec<usize> {
    labels.iter().map(|l| l - 1).collect()
}

/// Canonical text form of a pure stabilizer state given local generators.
fn canonical_key(local: Vec<PauliOperator>) -> Result<Vec<String>> {
    Ok(StabilizerState::new(local)?
        .canonical_generators()
        .iter()
        .map(|g| g.to_string())
        .collect())
}

/// One branch of the honest pair's execution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualBranch {
    pub honest: Outcomes,
    /// Canonical generators of the corrupted party's reduced state.
    pub state: Vec<String>,
    /// Whether each residual generator holds with its formula phase.
    pub matches: bool,
}

/// Enumerates the honest pair's execution on the tableau backend and reads
/// off the corrupted party's reduced state on each branch.
pub fn residual_branches(spec: &ResourceSpec, corrupted: Party) -> Result<Vec<(ResidualBranch, Prob)>> {
    let schedule = honest_pair_schedule(spec, corrupted)?;
    let labels = spec.owned(corrupted).to_vec();
    let branches = enumerate_sessions(spec, BackendKind::Tableau, &schedule.0, |session, _| {
        let honest = session.outcomes();
        let tableau = session
            .backend()
            .stabilizer()
            .expect("tableau backend exposes its stabilizer");
        let sub = tableau.restricted_subgroup(&zero_based(&labels));
        if sub.len() != labels.len() {
            return Err(Error::ResourceIntegrity(format!(
                "{corrupted}'s reduced state is mixed on branch {honest:?}"
            )));
        }
        let residual = residual_stabilizer(&[corrupted], &honest)?;
        let mut matches = true;
        for g in residual.signed(&honest) {
            matches &= tableau.contains(&g)? == Some(Sign::Plus);
        }
        Ok(ResidualBranch {
            state: canonical_key(sub)?,
            honest,
            matches,
        })
    })?;
    Ok(branches
        .into_iter()
        .map(|b| {
            let w = b.weight();
            (b.value, w)
        })
        .collect())
}

/// Expectation values of the corrupted party's reduced state averaged over
/// all honest branches, for every non-identity Pauli on its 4 qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CqMarginal {
    pub party: Party,
    pub expectations: Vec<(PauliOperator, Prob)>,
}

impl CqMarginal {
    pub fn is_maximally_mixed(&self) -> bool {
        self.expectations.iter().all(|(_, e)| e.is_zero())
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &(PauliOperator, Prob)> {
        self.expectations.iter().filter(|(_, e)| !e.is_zero())
    }
}

const LETTERS: [Letter; 4] = [Letter::I, Letter::X, Letter::Y, Letter::Z];

/// The corrupted party's state with every classical register traced out.
pub fn cq_marginal(spec: &ResourceSpec, corrupted: Party) -> Result<CqMarginal> {
    let branches = residual_branches(spec, corrupted)?;
    let states: Vec<(StabilizerState, Prob)> = branches
        .iter()
        .map(|(b, w)| {
            let gens = b
                .state
                .iter()
                .map(|g| g.parse())
                .collect::<Result<Vec<PauliOperator>>>()?;
            Ok((StabilizerState::new(gens)?, *w))
        })
        .collect::<Result<_>>()?;
    let mut expectations = Vec::with_capacity(255);
    for code in 1u32..256 {
        let letters: Vec<(usize, Letter)> = (0..4).map(|q| (q, LETTERS[((code >> (2 * q)) & 3) as usize])).collect();
        let p = PauliOperator::from_letters(4, &letters);
        let mut e = Prob::zero();
        for (state, w) in &states {
            match state.contains(&p)? {
                Some(Sign::Plus) => e += w,
                Some(Sign::Minus) => e -= w,
                None => {}
            }
        }
        expectations.push((p, e));
    }
    Ok(CqMarginal {
        party: corrupted,
        expectations,
    })
}

/// Which simulator to run. `Faithful` is the one that matches the real
/// execution; the other two are kept as negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SimulatorVariant {
    Faithful,
    /// For A*: `c10 = y`, which matches the view marginals but not the joint
    /// distribution with the honest outputs.
    Literal,
    /// Drops the pad correction on the last phase (`c11 = [pq]_A` for A*,
    /// `c9 = [pq]_B` for B*). Identical to `Faithful` for R*.
    Sabotaged,
}

/// The simulator's output for one corrupted party.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simulated {
    /// `raw` holds the phase bits `c_i` keyed by label.
    pub view: PartyView,
    /// Signed generators on the full register.
    pub generators: Vec<PauliOperator>,
}

/// Builds the corrupted party's view and state from its ideal output and
/// fresh coins.
pub fn simulate(
    corrupted: Party,
    ideal: &TripleShares,
    coins: &mut dyn CoinSource,
    variant: SimulatorVariant,
) -> Simulated {
    let (s, c, derived) = match corrupted {
        Party::A => {
            let (p, share) = (ideal.p, ideal.share_a);
            let x = coins.flip();
            let y = coins.flip();
            let c10 = match variant {
                SimulatorVariant::Literal => y,
                _ => x ^ y,
            };
            let c11 = match variant {
                SimulatorVariant::Sabotaged => share,
                _ => share ^ (p & y),
            };
            let c = [p, x, c10, c11];
            (false, c, vec![p, x, c11 ^ (p & (c10 ^ x)), c10 ^ x])
        }
        Party::B => {
            let (q, share) = (ideal.q, ideal.share_b);
            let u = coins.flip();
            let s = coins.flip();
            let c9 = match variant {
                SimulatorVariant::Sabotaged => share,
                _ => share ^ (s & u),
            };
            (s, [u, q, s, c9], vec![u, q, s, c9 ^ (s & u)])
        }
        Party::R => {
            let c3 = coins.flip();
            let c6 = coins.flip();
            let s = coins.flip();
            (s, [c3, c6, s, ideal.share_r], vec![c3, c6, s, ideal.share_r])
        }
    };
    let ops = residual_operators(corrupted, s);
    let raw: Outcomes = ops.iter().zip(c).map(|((label, _), bit)| (*label, bit)).collect();
    let generators = ops.iter().zip(c).map(|((_, g), bit)| g.with_sign_bit(bit)).collect();
    Simulated {
        view: PartyView {
            party: corrupted,
            raw,
            derived,
        },
        generators,
    }
}

/// What the honest parties output, as the ideal functionality would hand it
/// to them, plus the corrupted party's canonical state.
type WorldKey = (Vec<(&'static str, bool)>, Vec<String>);

fn honest_outputs(corrupted: Party, t: &TripleShares) -> Vec<(&'static str, bool)> {
    match corrupted {
        Party::A => vec![("q", t.q), ("[pq]_B", t.share_b), ("[pq]_R", t.share_r)],
        Party::B => vec![("p", t.p), ("[pq]_A", t.share_a), ("[pq]_R", t.share_r)],
        Party::R => vec![("p", t.p), ("[pq]_A", t.share_a), ("q", t.q), ("[pq]_B", t.share_b)],
    }
}

/// Sensitive bits each corrupted party would need to learn `pq`.
pub fn sensitive_bits(corrupted: Party) -> &'static [&'static str] {
    match corrupted {
        Party::A => &["q"],
        Party::B => &["p"],
        Party::R => &["p", "q"],
    }
}

fn sensitive(name: &str, t: &TripleShares) -> bool {
    match name {
        "p" => t.p,
        "q" => t.q,
        _ => unreachable!("unknown sensitive bit {name}"),
    }
}

fn honest_outputs_real(corrupted: Party, o: &Outcomes) -> Vec<(&'static str, bool)> {
    match corrupted {
        Party::A => vec![("q", o.m(4)), ("[pq]_B", o.m(9)), ("[pq]_R", o.m(12))],
        Party::B => vec![("p", o.m(1)), ("[pq]_A", o.m(10) ^ o.m(11)), ("[pq]_R", o.m(12))],
        Party::R => vec![
            ("p", o.m(1)),
            ("[pq]_A", o.m(10) ^ o.m(11)),
            ("q", o.m(4)),
            ("[pq]_B", o.m(9)),
        ],
    }
}

/// Real-world joint distribution of honest outputs and the corrupted
/// party's state.
pub fn real_world(spec: &ResourceSpec, corrupted: Party) -> Result<Distribution<WorldKey>> {
    Ok(residual_branches(spec, corrupted)?
        .into_iter()
        .map(|(b, w)| ((honest_outputs_real(corrupted, &b.honest), b.state), w))
        .collect())
}

/// Ideal-world joint distribution: the trusted dealer's output fed to the
/// simulator.
pub fn ideal_world(corrupted: Party, variant: SimulatorVariant, labels: &[usize]) -> Result<Distribution<WorldKey>> {
    let branches = enumerate_branches(|coins| {
        let t = f_td_ideal(coins);
        let sim = simulate(corrupted, &t, coins, variant);
        let q = zero_based(labels);
        let local = sim.generators.iter().map(|g| g.restricted(&q)).collect();
        Ok((honest_outputs(corrupted, &t), canonical_key(local)?))
    })?;
    Ok(Distribution::from_branches(&branches))
}

fn half() -> Prob {
    Prob::new(1, 2)
}

/// Largest `|P(x=0 | view) - 1/2|` for one sensitive bit, with the view
/// that attains it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViewPrivacy {
    pub bit: &'static str,
    pub views: usize,
    pub worst: Prob,
    pub witness: Option<PartyView>,
}

/// Conditional privacy of each sensitive bit given the corrupted party's
/// full honest view (raw outcomes and derived bits).
pub fn view_privacy(spec: &ResourceSpec, party: Party) -> Result<Vec<ViewPrivacy>> {
    let runs = enumerate_runs(spec, BackendKind::Tableau, &Schedule::canonical())?;
    let dist: Distribution<(PartyView, TripleShares)> = runs
        .iter()
        .map(|b| ((b.value.view(party).clone(), b.value.shares), b.weight()))
        .collect();
    Ok(sensitive_bits(party)
        .iter()
        .map(|&bit| {
            let table = conditional_table(&dist, |(v, _)| v.clone(), |(_, t)| sensitive(bit, t));
            let (worst, witness) = table
                .iter()
                .map(|(v, p)| ((*p - half()).abs(), v))
                .max_by(|a, b| a.0.cmp(&b.0))
                .map(|(d, v)| (d, (!d.is_zero()).then(|| v.clone())))
                .unwrap_or((Prob::zero(), None));
            ViewPrivacy {
                bit,
                views: table.len(),
                worst,
                witness,
            }
        })
        .collect())
}

/// Exact real-vs-ideal comparison for one corrupted party.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Indistinguishability {
    pub party: Party,
    pub variant: SimulatorVariant,
    /// Total variation between the joint distributions of honest outputs and
    /// the corrupted party's state.
    pub tv: Prob,
    /// Per sensitive bit, the largest difference between real and simulated
    /// `P(x=0 | state)`.
    pub per_bit: BTreeMap<&'static str, Prob>,
    pub witness: Option<String>,
}

impl Indistinguishability {
    pub fn is_perfect(&self) -> bool {
        self.tv.is_zero() && self.per_bit.values().all(|d| d.is_zero())
    }
}

pub fn indistinguishability_test(
    spec: &ResourceSpec,
    corrupted: Party,
    variant: SimulatorVariant,
) -> Result<Indistinguishability> {
    let real = real_world(spec, corrupted)?;
    let ideal = ideal_world(corrupted, variant, spec.owned(corrupted))?;
    let tv = real.tv_distance(&ideal);
    let mut witness = None;
    let mut per_bit = BTreeMap::new();
    for &bit in sensitive_bits(corrupted) {
        let pick = |k: &WorldKey| {
            k.0.iter()
                .find(|(name, _)| *name == bit)
                .map(|(_, v)| *v)
                .expect("sensitive bit is an honest output")
        };
        let r = conditional_table(&real, |k| k.1.clone(), pick);
        let i = conditional_table(&ideal, |k| k.1.clone(), pick);
        let mut worst = Prob::zero();
        for state in r.keys().chain(i.keys()) {
            let d = match (r.get(state), i.get(state)) {
                (Some(a), Some(b)) => (*a - *b).abs(),
                _ => Prob::from_integer(1),
            };
            if d > worst {
                worst = d;
                witness = Some(state.join(" "));
            }
        }
        per_bit.insert(bit, worst);
    }
    if witness.is_none() && !tv.is_zero() {
        witness = real
            .keys()
            .chain(ideal.keys())
            .find(|k| real.get(k) != ideal.get(k))
            .map(|k| format!("{:?} {}", k.0, k.1.join(" ")));
    }
    Ok(Indistinguishability {
        party: corrupted,
        variant,
        tv,
        per_bit,
        witness,
    })
}

/// Result of A* following the protocol through step 4 and then measuring
/// `X10 X11` before continuing honestly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointAttack {
    pub branches: usize,
    /// The joint outcome was deterministic and equal to `q ^ s` on every
    /// branch.
    pub reveals_q_xor_s: bool,
    /// B's and R's outcome distribution is the same with and without the
    /// attack.
    pub undisturbed: bool,
    /// `P(q=0 | outcome)` for each attainable outcome.
    pub q_given_outcome: BTreeMap<bool, Prob>,
}

/// Every branch of the joint-measurement attack: the attack outcome and the
/// full outcome record.
pub fn joint_attack_branches(spec: &ResourceSpec, kind: BackendKind) -> Result<Vec<(bool, bool, Outcomes, Prob)>> {
    let canonical = Schedule::canonical().0;
    let split = canonical
        .iter()
        .position(|&a| a == Action::Zcorr { vertex: 11 })
        .expect("canonical schedule corrects 11")
        + 1;
    let (before, after) = canonical.split_at(split);
    let obs = op(&[(10, Letter::X), (11, Letter::X)]);
    let branches = enumerate_sessions(spec, kind, before, |session, coins| {
        let m = session.backend_mut().measure(&obs, coins)?;
        session.run(after, coins)?;
        Ok((m.outcome, m.deterministic, session.outcomes()))
    })?;
    Ok(branches
        .into_iter()
        .map(|b| {
            let w = b.weight();
            let (bit, det, o) = b.value;
            (bit, det, o, w)
        })
        .collect())
}

pub fn astar_joint_attack(spec: &ResourceSpec, kind: BackendKind) -> Result<JointAttack> {
    let attacked = joint_attack_branches(spec, kind)?;
    let honest_labels: Vec<usize> = [Party::B, Party::R]
        .iter()
        .flat_map(|&p| spec.owned(p).to_vec())
        .collect();
    let reveals = attacked
        .iter()
        .all(|(bit, det, o, _)| *det && *bit == (o.m(4) ^ o.m(8)));
    let with: Distribution<Outcomes> = attacked
        .iter()
        .map(|(_, _, o, w)| (o.restricted(&honest_labels), *w))
        .collect();
    let without: Distribution<Outcomes> = enumerate_runs(spec, kind, &Schedule::canonical())?
        .iter()
        .map(|b| (b.value.outcomes.restricted(&honest_labels), b.weight()))
        .collect();
    let bit_and_q: Distribution<(bool, bool)> = attacked.iter().map(|(bit, _, o, w)| ((*bit, o.m(4)), *w)).collect();
    Ok(JointAttack {
        branches: attacked.len(),
        reveals_q_xor_s: reveals,
        undisturbed: with.same(&without),
        q_given_outcome: conditional_table(&bit_and_q, |k| k.0, |k| k.1),
    })
}

/// Two colluding parties. This is outside the single-corruption privacy guarantee
/// and is only here to show the expected break.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollusionDemo {
    pub parties: [Party; 2],
    /// The honest party's private bit the coalition tries to learn.
    pub target: &'static str,
    /// Every attainable value of `P(target=0 | joint raw view)`.
    pub conditionals: Vec<Prob>,
}

impl CollusionDemo {
    pub fn breaks_privacy(&self) -> bool {
        self.conditionals.iter().any(|p| *p != half())
    }
}

pub fn collusion_demo(spec: &ResourceSpec, parties: [Party; 2]) -> Result<CollusionDemo> {
    if parties[0] == parties[1] {
        return Err(Error::UnsupportedCorruption(1));
    }
    let honest = Party::ALL
        .into_iter()
        .find(|p| !parties.contains(p))
        .expect("three parties");
    let target = match honest {
        Party::A => "p",
        Party::B => "q",
        Party::R => "[pq]_R",
    };
    let labels: Vec<usize> = parties.iter().flat_map(|&p| spec.owned(p).to_vec()).collect();
    let runs = enumerate_runs(spec, BackendKind::Tableau, &Schedule::canonical())?;
    let dist: Distribution<(Outcomes, bool)> = runs
        .iter()
        .map(|b| {
            let t = &b.value.shares;
            let secret = match honest {
                Party::A => t.p,
                Party::B => t.q,
                Party::R => t.share_r,
            };
            ((b.value.outcomes.restricted(&labels), secret), b.weight())
        })
        .collect();
    let mut conditionals: Vec<Prob> = conditional_table(&dist, |k| k.0.clone(), |k| k.1)
        .into_values()
        .collect();
    conditionals.sort();
    conditionals.dedup();
    Ok(CollusionDemo {
        parties,
        target,
        conditionals,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditCheck {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub role: Party,
    pub checks: Vec<AuditCheck>,
    /// Exact distances as rational strings, keyed by sensitive bit, plus
    /// `tv` for the joint real-vs-simulated distance.
    pub distances: BTreeMap<String, String>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AuditCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

fn check(name: impl Into<String>, pass: bool, witness: Option<String>) -> AuditCheck {
    AuditCheck {
        name: name.into(),
        pass,
        witness: if pass { None } else { witness },
    }
}

/// Runs every privacy check for one corrupted role.
pub fn audit_role(spec: &ResourceSpec, role: Party) -> Result<AuditReport> {
    let mut checks = Vec::new();
    let mut distances = BTreeMap::new();

    let branches = residual_branches(spec, role)?;
    let bad = branches.iter().find(|(b, _)| !b.matches);
    checks.push(check(
        "residual-stabilizer",
        bad.is_none(),
        bad.map(|(b, _)| format!("{:?}", b.honest)),
    ));

    let cq = cq_marginal(spec, role)?;
    checks.push(check(
        "cq-marginal-maximally-mixed",
        cq.is_maximally_mixed(),
        cq.nonzero().next().map(|(p, e)| format!("<{p}> = {e}")),
    ));

    for v in view_privacy(spec, role)? {
        checks.push(check(
            format!("view-privacy:{}", v.bit),
            v.worst.is_zero(),
            v.witness
                .as_ref()
                .map(|w| serde_json::to_string(w).expect("plain data")),
        ));
    }

    let ind = indistinguishability_test(spec, role, SimulatorVariant::Faithful)?;
    checks.push(check(
        "simulator-indistinguishable",
        ind.is_perfect(),
        ind.witness.clone(),
    ));
    for (bit, d) in &ind.per_bit {
        distances.insert(bit.to_string(), d.to_string());
    }
    distances.insert("tv".into(), ind.tv.to_string());

    if role != Party::R {
        let sabotaged = indistinguishability_test(spec, role, SimulatorVariant::Sabotaged)?;
        checks.push(check(
            "sabotaged-simulator-detected",
            !sabotaged.is_perfect(),
            Some("sabotaged simulator was not distinguished".into()),
        ));
    }

    if role == Party::A {
        let attack = astar_joint_attack(spec, BackendKind::Tableau)?;
        checks.push(check(
            "joint-attack-reveals-q^s",
            attack.reveals_q_xor_s,
            Some("X10 X11 outcome differs from q ^ s".into()),
        ));
        checks.push(check(
            "joint-attack-undisturbing",
            attack.undisturbed,
            Some("honest outcome distribution changed".into()),
        ));
        let private = attack.q_given_outcome.values().all(|p| *p == half());
        checks.push(check(
            "joint-attack-private",
            private,
            Some(format!("{:?}", attack.q_given_outcome)),
        ));
    }

    Ok(AuditReport {
        role,
        checks,
        distances,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coins::ScriptedCoins;
    use crate::resource::build_g_and;

    #[test]
    fn formula_display_and_eval() {
        let f = PhaseFormula::new(&[&[2, 8], &[9], &[]]);
        assert_eq!(f.to_string(), "m2m8 ^ m9 ^ 1");
        let o: Outcomes = [(2, true), (8, true), (9, true)].into_iter().collect();
        assert!(f.eval(&o));
        assert_eq!(PhaseFormula::zero().to_string(), "0");
        assert_eq!(f.variables(), vec![2, 8, 9]);
    }

    #[test]
    fn zero_outcomes_give_unsigned_generators_for_a() {
        let o: Outcomes = (1..=12).map(|l| (l, false)).collect();
        let r = residual_stabilizer(&[Party::A], &o).unwrap();
        let ops: Vec<String> = r
            .signed(&o)
            .iter()
            .map(|g| g.restricted(&[0, 4, 9, 10]).to_string())
            .collect();
        assert_eq!(ops, ["+ZIII", "+IXII", "+IIXX", "+IIZZ"]);
    }

    #[test]
    fn two_corrupted_parties_are_refused() {
        let o = Outcomes::default();
        assert_eq!(
            residual_stabilizer(&[Party::A, Party::R], &o),
            Err(Error::UnsupportedCorruption(2))
        );
    }

    #[test]
    fn simulator_example_for_a() {
        let ideal = TripleShares {
            p: true,
            q: true,
            s: None,
            share_a: true,
            share_b: false,
            share_r: false,
        };
        // x = 0, y = 1
        let sim = simulate(
            Party::A,
            &ideal,
            &mut ScriptedCoins::new(vec![false, true]),
            SimulatorVariant::Faithful,
        );
        let c: Vec<bool> = sim.view.raw.iter().map(|(_, b)| b).collect();
        assert_eq!(c, [true, false, true, false]);
    }

    #[test]
    fn degenerate_simulator_is_all_plus() {
        let ideal = TripleShares {
            p: false,
            q: false,
            s: None,
            share_a: false,
            share_b: false,
            share_r: false,
        };
        for party in Party::ALL {
            let sim = simulate(party, &ideal, &mut ScriptedCoins::default(), SimulatorVariant::Faithful);
            assert!(sim.generators.iter().all(|g| g.is_negative() == Some(false)));
        }
    }

    #[test]
    fn residuals_match_on_every_branch() {
        let spec = build_g_and();
        for party in Party::ALL {
            let b = residual_branches(&spec, party).unwrap();
            assert!(b.iter().all(|(b, _)| b.matches), "{party}");
        }
    }

    #[test]
    fn every_role_passes_the_audit() {
        let spec = build_g_and();
        for role in Party::ALL {
            let report = audit_role(&spec, role).unwrap();
            assert!(report.passed(), "{}", serde_json::to_string_pretty(&report).unwrap());
        }
    }

    #[test]
    fn literal_simulator_is_distinguishable() {
        let spec = build_g_and();
        let lit = indistinguishability_test(&spec, Party::A, SimulatorVariant::Literal).unwrap();
        assert!(!lit.tv.is_zero());
    }

    #[test]
    fn collusion_breaks_privacy() {
        let spec = build_g_and();
        for pair in [[Party::A, Party::R], [Party::B, Party::R], [Party::A, Party::B]] {
            assert!(collusion_demo(&spec, pair).unwrap().breaks_privacy(), "{pair:?}");
        }
    }
}
