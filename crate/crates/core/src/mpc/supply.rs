// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

use super::sharing::Player;
use crate::backend::BackendKind;
use crate::coins::CoinSource;
use crate::dist::Distribution;
use crate::error::{Error, Result};
use crate::protocol::{f_td_ideal, run_pi_and, triple_distribution, Schedule, TripleShares};
use crate::resource::ResourceSpec;
use crate::Prob;
use std::collections::BTreeSet;

/// Anything that hands out one triple per call, drawing its randomness from
/// `coins`.
pub trait TripleSource {
    fn triple(&mut self, coins: &mut dyn CoinSource) -> Result<TripleShares>;
}

/// The trusted functionality.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdealSource;

impl TripleSource for IdealSource {
    fn triple(&mut self, coins: &mut dyn CoinSource) -> Result<TripleShares> {
        Ok(f_td_ideal(coins))
    }
}

/// Runs the measurement protocol on a fresh resource for every triple.
pub struct LiveSource<'a> {
    pub spec: &'a ResourceSpec,
    pub backend: BackendKind,
}

impl TripleSource for LiveSource<'_> {
    fn triple(&mut self, coins: &mut dyn CoinSource) -> Result<TripleShares> {
        let run = run_pi_and(self.spec, self.backend, &Schedule::canonical(), coins)?;
        Ok(run.shares.without_aux())
    }
}

/// Samples exactly from a dyadic distribution over triples by reading a
/// fixed number of flips as a binary fraction.
#[derive(Debug, Clone)]
pub struct MarginalSource {
    flips: u32,
    cumulative: Vec<(u64, TripleShares)>,
}

impl MarginalSource {
    pub fn from_distribution(dist: &Distribution<TripleShares>) -> Result<Self> {
        let mut flips = 0;
        for (_, w) in dist.iter() {
            let d = *w.denom();
            if d <= 0 || (d & (d - 1)) != 0 {
                return Err(Error::NonDyadicProbability(w.to_string()));
            }
            flips = flips.max(d.trailing_zeros());
        }
        let scale = 1u64 << flips;
        let mut acc = 0u64;
        let mut cumulative = Vec::new();
        for (t, w) in dist.iter() {
            acc += (*w * Prob::from_integer(scale as i64)).to_integer() as u64;
            cumulative.push((acc, *t));
        }
        if acc != scale {
            return Err(Error::NonDyadicProbability(format!("total {acc}/{scale}")));
        }
        Ok(Self { flips, cumulative })
    }

    /// The output marginal of the measurement protocol on `spec`.
    pub fn from_pi_and(spec: &ResourceSpec, backend: BackendKind) -> Result<Self> {
        let d = triple_distribution(spec, backend)?.map(|(t, _)| t.without_aux());
        Self::from_distribution(&d)
    }

    pub fn flips(&self) -> u32 {
        self.flips
    }
}

impl TripleSource for MarginalSource {
    fn triple(&mut self, coins: &mut dyn CoinSource) -> Result<TripleShares> {
        let u = (0..self.flips).fold(0u64, |acc, _| (acc << 1) | coins.flip() as u64);
        Ok(self
            .cumulative
            .iter()
            .find(|(c, _)| u < *c)
            .map(|(_, t)| *t)
            .expect("cumulative weights cover every draw"))
    }
}

/// A triple with the players bound to its A and B roles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundTriple {
    pub id: u64,
    pub a_role: Player,
    pub b_role: Player,
    pub shares: TripleShares,
}

impl BoundTriple {
    /// What `holder` owns of `[pq]`.
    pub fn share(&self, holder: Player) -> bool {
        if holder == self.a_role {
            self.shares.share_a
        } else if holder == self.b_role {
            self.shares.share_b
        } else {
            self.shares.share_r
        }
    }

    pub fn pair(&self) -> String {
        format!("{}-{}", self.a_role, self.b_role)
    }
}

/// Triples waiting to be consumed. Each id can be taken once.
#[derive(Debug, Clone, Default)]
pub struct TripleSupply {
    next_id: u64,
    pending: Vec<BoundTriple>,
    consumed: BTreeSet<u64>,
}

impl TripleSupply {
    pub fn new() -> Self {
        Self::default()
    }

    /// Draws a triple from `source` for the given role binding.
    pub fn fill(
        &mut self,
        source: &mut dyn TripleSource,
        coins: &mut dyn CoinSource,
        a_role: Player,
        b_role: Player,
    ) -> Result<u64> {
        let shares = source.triple(coins)?;
        let id = self.next_id;
        self.next_id += 1;
        self.pending.push(BoundTriple {
            id,
            a_role,
            b_role,
            shares,
        });
        Ok(id)
    }

    /// Fills one triple per binding, in order.
    pub fn provision(
        &mut self,
        bindings: &[(Player, Player)],
        source: &mut dyn TripleSource,
        coins: &mut dyn CoinSource,
    ) -> Result<()> {
        for &(a, b) in bindings {
            self.fill(source, coins, a, b)?;
        }
        Ok(())
    }

    /// Puts a triple back in the queue. Taking it again fails if it was
    /// already consumed.
    pub fn push(&mut self, triple: BoundTriple) {
        self.next_id = self.next_id.max(triple.id + 1);
        self.pending.push(triple);
    }

    pub fn take(&mut self, a_role: Player, b_role: Player) -> Result<BoundTriple> {
        match self
            .pending
            .iter()
            .position(|t| t.a_role == a_role && t.b_role == b_role)
        {
            Some(i) => {
                let t = self.pending.remove(i);
                if !self.consumed.insert(t.id) {
                    return Err(Error::TripleReused(t.id));
                }
                Ok(t)
            }
            None if self.pending.iter().any(|t| t.a_role == b_role && t.b_role == a_role) => {
                Err(Error::WrongPairBinding(format!("{a_role}-{b_role}")))
            }
            None => Err(Error::InsufficientTriples(format!("{a_role}-{b_role}"))),
        }
    }

    pub fn remaining(&self) -> usize {
        self.pending.len()
    }

    pub fn consumed(&self) -> usize {
        self.consumed.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coins::{enumerate_branches, ScriptedCoins};

    #[test]
    fn reuse_is_refused() {
        let mut s = TripleSupply::new();
        s.fill(
            &mut IdealSource,
            &mut ScriptedCoins::default(),
            Player::P(1),
            Player::P(2),
        )
        .unwrap();
        let t = s.take(Player::P(1), Player::P(2)).unwrap();
        s.push(t);
        assert_eq!(s.take(Player::P(1), Player::P(2)), Err(Error::TripleReused(t.id)));
    }

    #[test]
    fn binding_errors() {
        let mut s = TripleSupply::new();
        assert!(matches!(
            s.take(Player::P(1), Player::P(2)),
            Err(Error::InsufficientTriples(_))
        ));
        s.fill(
            &mut IdealSource,
            &mut ScriptedCoins::default(),
            Player::P(2),
            Player::P(1),
        )
        .unwrap();
        assert!(matches!(
            s.take(Player::P(1), Player::P(2)),
            Err(Error::WrongPairBinding(_))
        ));
    }

    #[test]
    fn ideal_is_uniform_over_valid_triples() {
        let b = enumerate_branches(|c| Ok(f_td_ideal(c))).unwrap();
        let d = Distribution::<TripleShares>::from_branches(&b);
        assert!(d.is_uniform_over(16));
        assert!(d.keys().all(|t| t.is_valid()));
        let zero = f_td_ideal(&mut ScriptedCoins::default());
        assert!(!zero.p && !zero.q && !zero.reconstruct());
    }

    #[test]
    fn marginal_sampler_reproduces_its_distribution() {
        let d: Distribution<TripleShares> = enumerate_branches(|c| Ok(f_td_ideal(c)))
            .map(|b| Distribution::from_branches(&b))
            .unwrap();
        let mut m = MarginalSource::from_distribution(&d).unwrap();
        assert_eq!(m.flips(), 4);
        let again = enumerate_branches(|c| m.triple(c)).unwrap();
        assert!(Distribution::from_branches(&again).same(&d));
    }

    #[test]
    fn pi_and_marginal_equals_ideal() {
        let spec = crate::resource::build_g_and();
        let mut m = MarginalSource::from_pi_and(&spec, BackendKind::Tableau).unwrap();
        let real: Distribution<TripleShares> =
            Distribution::from_branches(&enumerate_branches(|c| m.triple(c)).unwrap());
        let ideal: Distribution<TripleShares> =
            Distribution::from_branches(&enumerate_branches(|c| Ok(f_td_ideal(c))).unwrap());
        assert!(real.same(&ideal));
    }
}
