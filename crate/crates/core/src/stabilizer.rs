// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Pure stabilizer states stored as a list of `n` generators.
//!
//! There is no destabilizer half: membership queries run a fresh GF(2)
//! elimination, which is cheap at the sizes used here (a dozen qubits).

use crate::coins::CoinSource;
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `Minus` for `true`, matching the `(-1)^m` outcome encoding.
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn bit(self) -> bool {
        self == Sign::Minus
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Result of a single Pauli measurement. `outcome` is the bit `m` of the
/// eigenvalue `(-1)^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Measurement {
    pub outcome: bool,
    pub deterministic: bool,
}

/// A column of the symplectic matrix: qubit index and whether it is the X half.
type Column = (usize, bool);

fn column_bit(op: &PauliOperator, (q, is_x): Column) -> bool {
    if is_x {
        op.x_bit(q)
    } else {
        op.z_bit(q)
    }
}

/// Reduced row echelon form over the given column order. Zero rows are
/// dropped; the returned pivots line up with the returned rows.
fn row_reduce(mut rows: Vec<PauliOperator>, columns: &[Column]) -> (Vec<PauliOperator>, Vec<Column>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in columns {
        let Some(k) = (r..rows.len()).find(|&k| column_bit(&rows[k], c)) else {
            continue;
        };
        rows.swap(r, k);
        for j in 0..rows.len() {
            if j != r && column_bit(&rows[j], c) {
                rows[j] = rows[j].mul_unchecked(&rows[r]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

fn natural_columns(n: usize) -> Vec<Column> {
    (0..n).flat_map(|q| [(q, true), (q, false)]).collect()
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StabilizerState {
    n: usize,
    generators: Vec<PauliOperator>,
}

impl StabilizerState {
    /// Validates commutation, hermiticity and independence.
    pub fn new(generators: Vec<PauliOperator>) -> Result<Self> {
        let n = generators.len();
        for g in &generators {
            if g.n() != n {
                return Err(Error::InvalidStabilizer(format!(
                    "{n} generators but {g} acts on {} qubits",
                    g.n()
                )));
            }
            if !g.is_hermitian() {
                return Err(Error::NotHermitian(g.to_string()));
            }
        }
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if !a.commutes_unchecked(b) {
                    return Err(Error::InvalidStabilizer(format!("{a} and {b} anticommute")));
                }
            }
        }
        let (rows, _) = row_reduce(generators.clone(), &natural_columns(n));
        if rows.len() != n {
            return Err(Error::InvalidStabilizer(format!(
                "generators have rank {} < {n}",
                rows.len()
            )));
        }
        Ok(Self { n, generators })
    }

    /// `|0...0>`.
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            generators: (0..n).map(|q| PauliOperator::single(n, q, crate::Letter::Z)).collect(),
        }
    }

    /// `|+...+>`.
    pub fn plus(n: usize) -> Self {
        Self {
            n,
            generators: (0..n).map(|q| PauliOperator::single(n, q, crate::Letter::X)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    fn check_observable(&self, obs: &PauliOperator) -> Result<()> {
        if obs.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: obs.n(),
            });
        }
        Ok(())
    }

    /// The sign `s` with `s * obs` in the stabilizer group, if any.
    pub fn contains(&self, obs: &PauliOperator) -> Result<Option<Sign>> {
        self.check_observable(obs)?;
        let (rows, pivots) = row_reduce(self.generators.clone(), &natural_columns(self.n));
        let mut residual = obs.unsigned();
        let mut acc = PauliOperator::identity(self.n);
        for (row, &c) in rows.iter().zip(&pivots) {
            if column_bit(&residual, c) {
                residual = residual.mul_unchecked(row);
                acc = acc.mul_unchecked(row);
            }
        }
        if !residual.is_identity_up_to_phase() {
            return Ok(None);
        }
        Ok(match (acc.phase() + 4 - obs.phase()) % 4 {
            0 => Some(Sign::Plus),
            2 => Some(Sign::Minus),
            _ => None,
        })
    }

    /// Projective measurement of a Hermitian Pauli, returning the new state.
    pub fn measure(&self, obs: &PauliOperator, coins: &mut dyn CoinSource) -> Result<(Measurement, StabilizerState)> {
        let mut next = self.clone();
        let m = next.measure_in_place(obs, coins)?;
        Ok((m, next))
    }

    pub fn measure_in_place(&mut self, obs: &PauliOperator, coins: &mut dyn CoinSource) -> Result<Measurement> {
        self.check_observable(obs)?;
        if !obs.is_hermitian() {
            return Err(Error::NotHermitian(obs.to_string()));
        }
        let anti: Vec<usize> = (0..self.n)
            .filter(|&k| !self.generators[k].commutes_unchecked(obs))
            .collect();
        let Some((&k, rest)) = anti.split_first() else {
            let sign = self
                .contains(obs)?
                .ok_or_else(|| Error::InvalidStabilizer(format!("{obs} commutes with a non-maximal group")))?;
            return Ok(Measurement {
                outcome: sign.bit(),
                deterministic: true,
            });
        };
        let pivot = self.generators[k].clone();
        for &j in rest {
            self.generators[j] = self.generators[j].mul_unchecked(&pivot);
        }
        let outcome = coins.flip();
        self.generators[k] = obs.with_sign_bit(outcome);
        Ok(Measurement {
            outcome,
            deterministic: false,
        })
    }

    /// Conjugates the state by a Pauli: `|psi> -> P|psi>`.
    pub fn apply_pauli(&mut self, op: &PauliOperator) -> Result<()> {
        self.check_observable(op)?;
        for g in &mut self.generators {
            if !g.commutes_unchecked(op) {
                *g = g.negated();
            }
        }
        Ok(())
    }

    /// Generators of the subgroup supported inside `qubits`, written over
    /// those qubits in the listed order. The reduced state on `qubits` is pure
    /// exactly when this returns `qubits.len()` generators.
    pub fn restricted_subgroup(&self, qubits: &[usize]) -> Vec<PauliOperator> {
        let inside: std::collections::BTreeSet<usize> = qubits.iter().copied().collect();
        let mut columns: Vec<Column> = natural_columns(self.n)
            .into_iter()
            .filter(|(q, _)| !inside.contains(q))
            .collect();
        columns.extend(qubits.iter().flat_map(|&q| [(q, true), (q, false)]));
        let (rows, pivots) = row_reduce(self.generators.clone(), &columns);
        let first_inside = pivots
            .iter()
            .position(|c| inside.contains(&c.0))
            .unwrap_or(pivots.len());
        rows[first_inside..].iter().map(|r| r.restricted(qubits)).collect()
    }

    /// Reduced row echelon generators; equal groups give equal lists.
    pub fn canonical_generators(&self) -> Vec<PauliOperator> {
        row_reduce(self.generators.clone(), &natural_columns(self.n)).0
    }

    /// Same stabilizer group, compared through canonical generators.
    pub fn same_state(&self, other: &Self) -> bool {
        self.n == other.n && self.canonical_generators() == other.canonical_generators()
    }
}

impl fmt::Debug for StabilizerState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.generators.iter().map(|g| g.to_string()))
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coins::{enumerate_branches, SeededCoins};
    use crate::pauli::Letter;
    use proptest::prelude::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    fn state(gens: &[&str]) -> StabilizerState {
        StabilizerState::new(gens.iter().map(|g| p(g)).collect()).unwrap()
    }

    #[test]
    fn validation_rejects_bad_generators() {
        assert!(matches!(
            StabilizerState::new(vec![p("X"), p("Z")]),
            Err(Error::InvalidStabilizer(_))
        ));
        assert!(matches!(
            StabilizerState::new(vec![p("XX"), p("XX")]),
            Err(Error::InvalidStabilizer(_))
        ));
        assert!(matches!(
            StabilizerState::new(vec![p("iZ")]),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn membership() {
        let z = StabilizerState::zero(1);
        assert_eq!(z.contains(&p("Z")).unwrap(), Some(Sign::Plus));
        assert_eq!(z.contains(&p("-Z")).unwrap(), Some(Sign::Minus));
        assert_eq!(z.contains(&p("X")).unwrap(), None);
        let bell = state(&["XX", "ZZ"]);
        assert_eq!(bell.contains(&p("YY")).unwrap(), Some(Sign::Minus));
        assert_eq!(bell.contains(&p("ZI")).unwrap(), None);
        assert!(bell.contains(&p("Z")).is_err());
    }

    #[test]
    fn deterministic_measurement_leaves_state_alone() {
        let z = StabilizerState::zero(1);
        let (m, after) = z.measure(&p("Z"), &mut SeededCoins::new(0)).unwrap();
        assert_eq!(
            m,
            Measurement {
                outcome: false,
                deterministic: true
            }
        );
        assert_eq!(after, z);
    }

    #[test]
    fn plus_measured_in_z_splits_evenly() {
        let plus = StabilizerState::plus(1);
        let branches = enumerate_branches(|c| {
            let (m, after) = plus.measure(&p("Z"), c)?;
            Ok((m, after))
        })
        .unwrap();
        assert_eq!(branches.len(), 2);
        for b in &branches {
            let (m, after) = &b.value;
            assert!(!m.deterministic);
            let expected = p("Z").with_sign_bit(m.outcome);
            assert_eq!(after.generators(), &[expected]);
        }
    }

    #[test]
    fn bell_pair_outcomes_agree() {
        let bell = state(&["XX", "ZZ"]);
        for b in enumerate_branches(|c| {
            let (m1, s) = bell.measure(&p("ZI"), c)?;
            let (m2, _) = s.measure(&p("IZ"), c)?;
            Ok((m1, m2))
        })
        .unwrap()
        {
            let (m1, m2) = b.value;
            assert_eq!(m1.outcome, m2.outcome);
            assert!(m2.deterministic);
        }
    }

    #[test]
    fn pauli_frame_flips_signs() {
        let mut s = StabilizerState::zero(2);
        s.apply_pauli(&p("XI")).unwrap();
        assert_eq!(s.contains(&p("ZI")).unwrap(), Some(Sign::Minus));
        assert_eq!(s.contains(&p("IZ")).unwrap(), Some(Sign::Plus));
    }

    #[test]
    fn subgroup_on_a_subset() {
        // |Phi+> on qubits 0,2 and |0> on qubit 1
        let s = state(&["XIX", "ZIZ", "IZI"]);
        let sub = s.restricted_subgroup(&[0, 2]);
        assert_eq!(sub.len(), 2);
        let pair = StabilizerState::new(sub).unwrap();
        assert!(pair.same_state(&state(&["XX", "ZZ"])));
        assert!(s.restricted_subgroup(&[0]).is_empty());
        assert_eq!(s.restricted_subgroup(&[1]), vec![p("Z")]);
    }

    fn random_state(n: usize, seed: u64, steps: usize) -> StabilizerState {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut coins = SeededCoins::new(seed ^ 0x5eed);
        let mut s = StabilizerState::zero(n);
        for _ in 0..steps {
            let letters: Vec<_> = (0..n)
                .map(|q| (q, [Letter::I, Letter::X, Letter::Y, Letter::Z][rng.gen_range(0..4)]))
                .collect();
            let obs = PauliOperator::from_letters(n, &letters);
            if obs.weight() > 0 {
                s.measure_in_place(&obs, &mut coins).unwrap();
            }
        }
        s
    }

    proptest! {
        #[test]
        fn repeated_measurement_is_deterministic(seed in any::<u64>(), obs_seed in any::<u64>()) {
            let s = random_state(5, seed, 12);
            let obs = random_state(5, obs_seed, 3).generators()[0].clone();
            let mut coins = SeededCoins::new(seed);
            let (first, after) = s.measure(&obs, &mut coins).unwrap();
            let (second, again) = after.measure(&obs, &mut coins).unwrap();
            prop_assert!(second.deterministic);
            prop_assert_eq!(first.outcome, second.outcome);
            prop_assert!(again.same_state(&after));
        }

        #[test]
        fn measured_states_stay_valid(seed in any::<u64>()) {
            let s = random_state(6, seed, 20);
            prop_assert!(StabilizerState::new(s.generators().to_vec()).is_ok());
            for g in s.generators() {
                prop_assert_eq!(s.contains(g).unwrap(), Some(Sign::Plus));
            }
        }
    }
}
