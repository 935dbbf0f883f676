// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Certification of a candidate resource graph.
//!
//! Every correlation the protocol relies on is checked on every branch of an
//! exhaustive enumeration. Failures are recorded rather than raised, so a
//! search over candidate graphs can read the report.

use crate::audit::{honest_pair_schedule, residual_stabilizer};
use crate::backend::BackendKind;
use crate::error::Result;
use crate::pauli::{Basis, Letter, PauliOperator};
use crate::protocol::{enumerate_sessions, Action, Outcomes, Schedule};
use crate::resource::{Party, ResourceSpec};
use crate::stabilizer::Sign;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckFamily {
    /// Appendage correlations that fix `p`, `q` and `s`.
    Appendage,
    /// The conditional stabilizer test on the fork, one record per `(p, s)`.
    Fork,
    /// The fork outcomes XOR to `pq`.
    Correctness,
    /// Residual stabilizer of each corrupted role.
    Residual,
    /// No single party's qubits carry a stabilizer sign fixing `pq` before
    /// the fork is measured.
    Locality,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertRecord {
    pub family: CheckFamily,
    pub identity: String,
    pub backend: BackendKind,
    pub pass: bool,
    pub branches: usize,
    pub failures: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertReport {
    pub records: Vec<CertRecord>,
}

impl CertReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CertRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn record(&self, identity: &str, backend: BackendKind) -> Option<&CertRecord> {
        self.records
            .iter()
            .find(|r| r.identity == identity && r.backend == backend)
    }

    /// Whether every backend reached the same verdict and branch count on
    /// every identity it checked.
    pub fn backends_agree(&self) -> bool {
        let mut seen: BTreeMap<(&str, CheckFamily), (bool, usize)> = BTreeMap::new();
        for r in &self.records {
            let key = (r.identity.as_str(), r.family);
            match seen.get(&key) {
                Some(&v) if v != (r.pass, r.branches) => return false,
                _ => {
                    seen.insert(key, (r.pass, r.branches));
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// Tallies one identity over a list of branches.
struct Tally {
    family: CheckFamily,
    identity: String,
    branches: usize,
    failures: usize,
    witness: Option<String>,
}

impl Tally {
    fn new(family: CheckFamily, identity: impl Into<String>) -> Self {
        Tally {
            family,
            identity: identity.into(),
            branches: 0,
            failures: 0,
            witness: None,
        }
    }

    fn observe(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.branches += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    fn finish(self, backend: BackendKind) -> CertRecord {
        CertRecord {
            family: self.family,
            pass: self.failures == 0 && self.branches > 0,
            identity: self.identity,
            backend,
            branches: self.branches,
            failures: self.failures,
            witness: self.witness,
        }
    }
}

fn describe(o: &Outcomes) -> String {
    o.iter()
        .map(|(l, b)| format!("m{l}={}", b as u8))
        .collect::<Vec<_>>()
        .join(" ")
}

fn steps_one_to_four() -> Vec<Action> {
    let canonical = Schedule::canonical().0;
    let end = canonical
        .iter()
        .position(|a| matches!(a, Action::Measure { vertex: 9..=12 }))
        .expect("canonical schedule measures the fork");
    canonical[..end].to_vec()
}

/// Fork bases for a given `(p, s)`.
pub fn fork_bases(p: bool, s: bool) -> [(usize, Basis); 4] {
    let y = Basis::Y;
    [
        (9, if s { y } else { Basis::Z }),
        (10, if p { y } else { Basis::Z }),
        (11, if p { y.negated() } else { Basis::Z }),
        (12, if s { y } else { Basis::X }),
    ]
}

fn fork_product(spec: &ResourceSpec, p: bool, s: bool) -> PauliOperator {
    fork_bases(p, s)
        .iter()
        .map(|&(l, b)| b.on(spec.n(), l - 1))
        .reduce(|a, b| a.multiply(&b).expect("same register"))
        .expect("four factors")
}

fn product_label(p: bool, s: bool) -> String {
    fork_bases(p, s)
        .iter()
        .map(|(l, b)| format!("{b}{l}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn check_backend(spec: &ResourceSpec, kind: BackendKind) -> Result<Vec<CertRecord>> {
    let mut records = Vec::new();

    // Full honest runs: appendage correlations and the fork total.
    let full = enumerate_sessions(spec, kind, &Schedule::canonical().0, |s, _| Ok(s.outcomes()))?;
    let mut appendage = [
        (Tally::new(CheckFamily::Appendage, "m1 = m2 ^ m3"), [1, 2, 3]),
        (Tally::new(CheckFamily::Appendage, "m4 = m5 ^ m6"), [4, 5, 6]),
    ];
    let mut tail = Tally::new(CheckFamily::Appendage, "m7 = m8");
    let mut total = Tally::new(CheckFamily::Correctness, "m9 ^ m10 ^ m11 ^ m12 = m1 m4");
    for b in &full {
        let o = &b.value;
        for (t, [a, x, y]) in appendage.iter_mut() {
            t.observe(o.m(*a) == (o.m(*x) ^ o.m(*y)), || describe(o));
        }
        tail.observe(o.m(7) == o.m(8), || describe(o));
        total.observe((o.m(9) ^ o.m(10) ^ o.m(11) ^ o.m(12)) == (o.m(1) & o.m(4)), || {
            describe(o)
        });
    }
    let [(a, _), (b, _)] = appendage;
    records.extend([a, b, tail, total].map(|t| t.finish(kind)));

    // After step 4: each fork row's product is a stabilizer element whose
    // sign is s'p ^ p'(q ^ s), which is pq whenever (p', s') = (p, s).
    let prefix = steps_one_to_four();
    let rows: Vec<(bool, bool)> = vec![(false, false), (false, true), (true, false), (true, true)];
    let products: Vec<PauliOperator> = rows.iter().map(|&(p, s)| fork_product(spec, p, s)).collect();
    let post_step_four = enumerate_sessions(spec, kind, &prefix, |session, _| {
        let signs = products
            .iter()
            .map(|g| session.backend().stabilizer_sign(g))
            .collect::<Result<Vec<_>>>()?;
        Ok((session.outcomes(), signs))
    })?;
    for (row, &(rp, rs)) in rows.iter().enumerate() {
        let formula = match (rp, rs) {
            (false, false) => "0",
            (false, true) => "p",
            (true, false) => "q ^ s",
            (true, true) => "p ^ q ^ s",
        };
        let mut t = Tally::new(
            CheckFamily::Fork,
            format!("({}, {}): {} = {formula}", rp as u8, rs as u8, product_label(rp, rs)),
        );
        for b in &post_step_four {
            let (o, signs) = &b.value;
            let (p, q, s) = (o.m(1), o.m(4), o.m(8));
            let expected = (rs & p) ^ (rp & (q ^ s));
            t.observe(signs[row] == Some(Sign::from_bit(expected)), || {
                format!("{} sign {:?}", describe(o), signs[row])
            });
        }
        records.push(t.finish(kind));
    }
    records.extend(check_residuals(spec, kind)?);
    if kind == BackendKind::Tableau {
        records.extend(check_locality(spec, &prefix)?);
    }
    Ok(records)
}

fn check_residuals(spec: &ResourceSpec, kind: BackendKind) -> Result<Vec<CertRecord>> {
    let mut records = Vec::new();
    for party in Party::ALL {
        let schedule = honest_pair_schedule(spec, party)?;
        let q: Vec<usize> = spec.owned(party).iter().map(|l| l - 1).collect();
        let branches = enumerate_sessions(spec, kind, &schedule.0, |session, _| {
            let o = session.outcomes();
            let residual = residual_stabilizer(&[party], &o)?;
            let signs = residual
                .signed(&o)
                .iter()
                .map(|g| session.backend().stabilizer_sign(g))
                .collect::<Result<Vec<_>>>()?;
            let pure = session
                .backend()
                .stabilizer()
                .map(|t| t.restricted_subgroup(&q).len() == q.len());
            Ok((o, residual, signs, pure))
        })?;
        let names: Vec<String> = match branches.first() {
            Some(b) => b
                .value
                .1
                .generators
                .iter()
                .map(|g| {
                    let ops = if g.label == 9 {
                        "(Z9 or Y9 as s = m7)".to_string()
                    } else if g.label == 12 {
                        "(X12 or Y12 as s = m8)".to_string()
                    } else {
                        g.operator
                            .restricted(&g.operator.support())
                            .to_string()
                            .trim_start_matches('+')
                            .chars()
                            .zip(g.operator.support())
                            .map(|(c, i)| format!("{c}{}", i + 1))
                            .collect::<Vec<_>>()
                            .join(" ")
                    };
                    format!("{party}*: (-1)^({}) {ops}", g.phase)
                })
                .collect(),
            None => Vec::new(),
        };
        let mut tallies: Vec<Tally> = names
            .into_iter()
            .map(|n| Tally::new(CheckFamily::Residual, n))
            .collect();
        let mut purity = Tally::new(CheckFamily::Residual, format!("{party}*: reduced state is pure"));
        for b in &branches {
            let (o, _, signs, pure) = &b.value;
            for (t, sign) in tallies.iter_mut().zip(signs) {
                t.observe(*sign == Some(Sign::Plus), || format!("{} sign {sign:?}", describe(o)));
            }
            if let Some(pure) = pure {
                purity.observe(*pure, || describe(o));
            }
        }
        records.extend(tallies.into_iter().map(|t| t.finish(kind)));
        if purity.branches > 0 {
            records.push(purity.finish(kind));
        }
    }
    Ok(records)
}

/// Before the fork is measured, no Pauli on one party's qubits may have a
/// sign that, combined with that party's own outcomes, equals `pq` on every
/// branch.
fn check_locality(spec: &ResourceSpec, prefix: &[Action]) -> Result<Vec<CertRecord>> {
    const LETTERS: [Letter; 4] = [Letter::I, Letter::X, Letter::Y, Letter::Z];
    let mut records = Vec::new();
    for party in Party::ALL {
        let labels = spec.owned(party).to_vec();
        let q: Vec<usize> = labels.iter().map(|l| l - 1).collect();
        let own: Vec<usize> = prefix
            .iter()
            .filter_map(|a| match a {
                Action::Measure { vertex } if labels.contains(vertex) => Some(*vertex),
                _ => None,
            })
            .collect();
        let candidates: Vec<PauliOperator> = (1u32..256)
            .map(|code| {
                let letters: Vec<(usize, Letter)> =
                    (0..4).map(|k| (k, LETTERS[((code >> (2 * k)) & 3) as usize])).collect();
                PauliOperator::from_letters(4, &letters).embedded(spec.n(), &q)
            })
            .collect();
        let branches = enumerate_sessions(spec, BackendKind::Tableau, prefix, |session, _| {
            let tableau = session.backend().stabilizer().expect("tableau");
            let signs = candidates
                .iter()
                .map(|c| tableau.contains(c))
                .collect::<Result<Vec<_>>>()?;
            Ok((session.outcomes(), signs))
        })?;
        let mut t = Tally::new(
            CheckFamily::Locality,
            format!("{party}: no stabilizer on its qubits fixes pq before the fork"),
        );
        for (k, c) in candidates.iter().enumerate() {
            for mask in 0u32..(1 << own.len()) {
                let leaks = branches.iter().all(|b| {
                    let (o, signs) = &b.value;
                    let pad = own
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| mask >> j & 1 == 1)
                        .fold(false, |acc, (_, &l)| acc ^ o.m(l));
                    signs[k].map(|s| s.bit() ^ pad == (o.m(1) & o.m(4))).unwrap_or(false)
                });
                t.observe(!leaks, || format!("{c} with pad mask {mask:b} over {own:?}"));
            }
        }
        let mut record = t.finish(BackendKind::Tableau);
        record.branches = branches.len();
        records.push(record);
    }
    Ok(records)
}

/// Certifies `spec` on each listed backend by exhaustive enumeration.
pub fn verify_g_and(spec: &ResourceSpec, backends: &[BackendKind]) -> Result<CertReport> {
    let mut records = Vec::new();
    for &kind in backends {
        records.extend(check_backend(spec, kind)?);
    }
    Ok(CertReport { records })
}
