// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// A computing party `P_k` (1-based) or the referee.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Player {
    P(usize),
    R,
}

impl Player {
    /// Sender in oblivious transfer and the A role of a lone triple.
    pub const SENDER: Player = Player::P(1);
    /// Receiver in oblivious transfer and the B role of a lone triple.
    pub const RECEIVER: Player = Player::P(2);
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::P(k) => write!(f, "P{k}"),
            Player::R => f.write_str("R"),
        }
    }
}

impl FromStr for Player {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "R" {
            return Ok(Player::R);
        }
        s.strip_prefix('P')
            .and_then(|k| k.parse().ok())
            .filter(|&k| k > 0)
            .map(Player::P)
            .ok_or_else(|| Error::Serialization(format!("unknown player {s:?}")))
    }
}

impl Serialize for Player {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Player {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// An XOR sharing of one bit.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdditiveShare(BTreeMap<Player, bool>);

impl AdditiveShare {
    pub fn new() -> Self {
        Self::default()
    }

    /// XORs `bit` into `holder`'s share.
    pub fn add(&mut self, holder: Player, bit: bool) {
        *self.0.entry(holder).or_insert(false) ^= bit;
    }

    pub fn get(&self, holder: Player) -> bool {
        self.0.get(&holder).copied().unwrap_or(false)
    }

    pub fn holders(&self) -> impl Iterator<Item = Player> + '_ {
        self.0.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Player, bool)> + '_ {
        self.0.iter().map(|(&p, &b)| (p, b))
    }

    pub fn reconstruct(&self) -> bool {
        self.0.values().fold(false, |acc, &b| acc ^ b)
    }

    /// Share-wise XOR.
    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, b) in other.iter() {
            out.add(p, b);
        }
        out
    }
}

impl FromIterator<(Player, bool)> for AdditiveShare {
    fn from_iter<I: IntoIterator<Item = (Player, bool)>>(iter: I) -> Self {
        let mut s = Self::new();
        for (p, b) in iter {
            s.add(p, b);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn players_round_trip() {
        for p in [Player::P(1), Player::P(12), Player::R] {
            assert_eq!(p.to_string().parse::<Player>().unwrap(), p);
        }
        assert!("P0".parse::<Player>().is_err());
        assert!("Q".parse::<Player>().is_err());
    }

    #[test]
    fn shares_xor() {
        let s: AdditiveShare = [(Player::P(1), true), (Player::R, true), (Player::P(1), true)]
            .into_iter()
            .collect();
        assert!(s.reconstruct());
        assert!(!s.get(Player::P(1)));
    }
}
