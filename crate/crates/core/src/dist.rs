// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Finite distributions with exact (or float) weights.

use crate::coins::Branch;
use crate::scalar::Weight;
use crate::Prob;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq)]
pub struct Distribution<K: Ord, W = Prob> {
    entries: BTreeMap<K, W>,
}

impl<K: Ord, W> Default for Distribution<K, W> {
    fn default() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone, W: Weight> Distribution<K, W> {
    pub fn new() -> Self {
        Self::default()
    }

    /// A point mass.
    pub fn certain(key: K) -> Self {
        let mut d = Self::new();
        d.add(key, W::one());
        d
    }

    /// Equal weight on every listed key (repeats accumulate).
    pub fn uniform<I: IntoIterator<Item = K>>(keys: I) -> Self {
        let keys: Vec<K> = keys.into_iter().collect();
        let w = W::one() / count_weight::<W>(keys.len());
        let mut d = Self::new();
        for k in keys {
            d.add(k, w.clone());
        }
        d
    }

    pub fn from_branches(branches: &[Branch<K>]) -> Self {
        let mut d = Self::new();
        for b in branches {
            d.add(b.value.clone(), b.weight());
        }
        d
    }

    pub fn add(&mut self, key: K, weight: W) {
        if weight.is_zero() {
            return;
        }
        let slot = self.entries.entry(key).or_insert_with(W::zero);
        *slot = slot.clone() + weight;
    }

    pub fn get(&self, key: &K) -> W {
        self.entries.get(key).cloned().unwrap_or_else(W::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &W)> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.entries.keys()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> W {
        self.entries.values().fold(W::zero(), |acc, w| acc + w.clone())
    }

    /// Push-forward along `f`; this is how marginals are taken.
    pub fn map<K2: Ord + Clone, F: Fn(&K) -> K2>(&self, f: F) -> Distribution<K2, W> {
        let mut out = Distribution::new();
        for (k, w) in &self.entries {
            out.add(f(k), w.clone());
        }
        out
    }

    pub fn probability<F: Fn(&K) -> bool>(&self, event: F) -> W {
        self.entries
            .iter()
            .filter(|(k, _)| event(k))
            .fold(W::zero(), |acc, (_, w)| acc + w.clone())
    }

    /// Renormalised restriction to `given`, or `None` if it has no weight.
    pub fn conditional<F: Fn(&K) -> bool>(&self, given: F) -> Option<Self> {
        let mass = self.probability(&given);
        if mass.is_zero() {
            return None;
        }
        let mut out = Self::new();
        for (k, w) in &self.entries {
            if given(k) {
                out.add(k.clone(), w.clone() / mass.clone());
            }
        }
        Some(out)
    }

    /// Half the L1 distance.
    pub fn tv_distance(&self, other: &Self) -> W {
        let mut sum = W::zero();
        for (k, w) in &self.entries {
            sum = sum + (w.clone() - other.get(k)).abs();
        }
        for (k, w) in &other.entries {
            if !self.entries.contains_key(k) {
                sum = sum + w.abs();
            }
        }
        sum / (W::one() + W::one())
    }

    pub fn same(&self, other: &Self) -> bool {
        self.tv_distance(other).same(&W::zero())
    }

    /// Exactly `count` outcomes, each with weight `1/count`.
    pub fn is_uniform_over(&self, count: usize) -> bool {
        let w = W::one() / count_weight::<W>(count);
        self.len() == count && self.entries.values().all(|v| v.same(&w))
    }
}

fn count_weight<W: Weight>(count: usize) -> W {
    (0..count).fold(W::zero(), |acc, _| acc + W::one())
}

impl<K: Ord + Clone, W: Weight> FromIterator<(K, W)> for Distribution<K, W> {
    fn from_iter<I: IntoIterator<Item = (K, W)>>(iter: I) -> Self {
        let mut d = Self::new();
        for (k, w) in iter {
            d.add(k, w);
        }
        d
    }
}

/// For every value of `view` with positive weight, the probability that
/// `secret` is false given that view.
pub fn conditional_table<K, V, F, G>(dist: &Distribution<K>, view: F, secret: G) -> BTreeMap<V, Prob>
where
    K: Ord + Clone,
    V: Ord + Clone,
    F: Fn(&K) -> V,
    G: Fn(&K) -> bool,
{
    let joint = dist.map(|k| (view(k), secret(k)));
    let mut out = BTreeMap::new();
    for v in dist.map(&view).keys() {
        let given = joint.get(&(v.clone(), false)) + joint.get(&(v.clone(), true));
        out.insert(v.clone(), joint.get(&(v.clone(), false)) / given);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn half() -> Prob {
        Prob::new(1, 2)
    }

    #[test]
    fn marginals_and_conditionals() {
        let d: Distribution<(bool, bool)> =
            Distribution::uniform([(false, false), (false, true), (true, false), (true, true)]);
        assert!(d.total().is_one());
        assert!(d.map(|k| k.0).is_uniform_over(2));
        let c = d.conditional(|k| k.0).unwrap();
        assert_eq!(c.get(&(true, false)), half());
        assert!(d.conditional(|_| false).is_none());
    }

    #[test]
    fn total_variation() {
        let a: Distribution<u8> = Distribution::uniform([0, 1]);
        let b: Distribution<u8> = Distribution::certain(0);
        assert_eq!(a.tv_distance(&b), half());
        assert_eq!(a.tv_distance(&a), Prob::from_integer(0));
        let c: Distribution<u8> = Distribution::certain(2);
        assert!(b.tv_distance(&c).is_one());
    }

    #[test]
    fn conditional_table_of_a_correlated_pair() {
        let d: Distribution<(bool, bool)> = Distribution::uniform([(false, false), (true, true)]);
        let t = conditional_table(&d, |k| k.0, |k| k.1);
        assert_eq!(t[&false], Prob::one());
        assert_eq!(t[&true], Prob::from_integer(0));
    }
}
