// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Sources of fair coin flips and the exhaustive branch driver.
//!
//! Every random measurement outcome in the crate is drawn from a
//! [`CoinSource`]. Replacing the seeded generator with [`ScriptedCoins`] lets
//! [`enumerate_branches`] walk the whole outcome tree depth first.

use crate::error::Result;
use crate::scalar::Weight;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub trait CoinSource {
    fn flip(&mut self) -> bool;
}

impl<C: CoinSource + ?Sized> CoinSource for &mut C {
    fn flip(&mut self) -> bool {
        (**self).flip()
    }
}

/// Deterministic pseudo-random coins.
#[derive(Debug, Clone)]
pub struct SeededCoins {
    rng: ChaCha8Rng,
}

impl SeededCoins {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl CoinSource for SeededCoins {
    fn flip(&mut self) -> bool {
        self.rng.gen()
    }
}

/// Replays a fixed prefix of flips, then answers `false`, remembering every
/// flip it handed out.
#[derive(Debug, Clone, Default)]
pub struct ScriptedCoins {
    script: Vec<bool>,
    used: Vec<bool>,
}

impl ScriptedCoins {
    pub fn new(script: Vec<bool>) -> Self {
        Self {
            script,
            used: Vec::new(),
        }
    }

    pub fn consumed(&self) -> &[bool] {
        &self.used
    }
}

impl CoinSource for ScriptedCoins {
    fn flip(&mut self) -> bool {
        let bit = self.script.get(self.used.len()).copied().unwrap_or(false);
        self.used.push(bit);
        bit
    }
}

/// One leaf of the outcome tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch<T> {
    pub value: T,
    pub coins: Vec<bool>,
}

impl<T> Branch<T> {
    /// Probability of reaching this leaf, `2^-flips`.
    pub fn weight<W: Weight>(&self) -> W {
        W::dyadic(self.coins.len() as u32)
    }
}

/// Runs `run` once per leaf of its coin tree.
///
/// `run` must be a deterministic function of the flips it draws. Leaves come
/// out in lexicographic order of their flip sequences, so two runs with the
/// same tree shape produce branch lists that line up index by index.
pub fn enumerate_branches<T, F>(mut run: F) -> Result<Vec<Branch<T>>>
where
    F: FnMut(&mut ScriptedCoins) -> Result<T>,
{
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    loop {
        let mut coins = ScriptedCoins::new(prefix);
        let value = run(&mut coins)?;
        let used = coins.used;
        let next = used.iter().rposition(|&b| !b);
        out.push(Branch {
            value,
            coins: used.clone(),
        });
        match next {
            Some(i) => {
                prefix = used[..i].to_vec();
                prefix.push(true);
            }
            None => return Ok(out),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Prob;
    use num_traits::{One, Zero};

    #[test]
    fn enumerates_a_fixed_depth_tree() {
        let branches = enumerate_branches(|c| {
            let a = c.flip();
            let b = c.flip();
            Ok((a, b))
        })
        .unwrap();
        let values: Vec<_> = branches.iter().map(|b| b.value).collect();
        assert_eq!(values, vec![(false, false), (false, true), (true, false), (true, true)]);
    }

    #[test]
    fn uneven_trees_have_unit_total_weight() {
        // second flip only happens on the left subtree
        let branches = enumerate_branches(|c| {
            let a = c.flip();
            Ok(if a {
                1
            } else if c.flip() {
                2
            } else {
                3
            })
        })
        .unwrap();
        assert_eq!(branches.len(), 3);
        let total = branches.iter().fold(Prob::zero(), |acc, b| acc + b.weight::<Prob>());
        assert!(total.is_one());
    }

    #[test]
    fn coinless_run_is_a_single_branch() {
        let branches = enumerate_branches(|_| Ok(7)).unwrap();
        assert_eq!(branches.len(), 1);
        assert!(branches[0].weight::<Prob>().is_one());
    }

    #[test]
    fn seeded_coins_repeat() {
        let mut a = SeededCoins::new(9);
        let mut b = SeededCoins::new(9);
        let xs: Vec<bool> = (0..64).map(|_| a.flip()).collect();
        let ys: Vec<bool> = (0..64).map(|_| b.flip()).collect();
        assert_eq!(xs, ys);
        assert!(xs.iter().any(|&x| x) && xs.iter().any(|&x| !x));
    }
}
