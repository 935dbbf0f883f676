// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Two ways to distribute a triple without the graph-state resource: a
//! trusted dealer over private channels, and a referee who samples the
//! triple and sends it over key-encrypted public messages, after which A and
//! B re-randomise it with a key of their own.

use super::channel::{BroadcastChannel, Message};
use super::sharing::Player;
use super::supply::TripleSource;
use crate::coins::CoinSource;
use crate::error::Result;
use crate::pauli::PauliOperator;
use crate::protocol::{f_td_ideal, TripleShares};
use crate::stabilizer::StabilizerState;
use serde::{Deserialize, Serialize};

/// The dealer samples `p`, `q` and a sharing of `pq`, sends A and B their
/// parts privately and keeps the third share.
pub fn ctd_dealer_baseline(coins: &mut dyn CoinSource) -> TripleShares {
    f_td_ideal(coins)
}

/// One key bit from measuring both halves of `(|00> + |11>)/sqrt 2` in Z.
pub fn bell_pair_key(coins: &mut dyn CoinSource) -> Result<(bool, bool)> {
    let bell = StabilizerState::new(vec!["+XX".parse()?, "+ZZ".parse()?])?;
    let (first, bell) = bell.measure(&"+ZI".parse::<PauliOperator>()?, coins)?;
    let (second, _) = bell.measure(&"+IZ".parse::<PauliOperator>()?, coins)?;
    Ok((first.outcome, second.outcome))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QkdVariant {
    /// `[pq]_X = [xy]_X ^ k` for X in {A, B}. Reconstructs `xy`, not
    /// `(x ^ k)(y ^ k)`, so it is wrong whenever `k = 1` and `x = y`.
    AsStated,
    /// `[pq]_A = [xy]_A ^ kx ^ k`, `[pq]_B = [xy]_B ^ ky`, which adds the
    /// missing `k(x ^ y) ^ k` using only bits each side already holds.
    Corrected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QkdRun {
    pub shares: TripleShares,
    pub channel: BroadcastChannel,
}

/// Five Bell pairs: two between R and A, two between R and B, one between A
/// and B.
pub fn qkd_td_baseline(variant: QkdVariant, coins: &mut dyn CoinSource) -> Result<QkdRun> {
    let mut keys = [false; 5];
    for k in keys.iter_mut() {
        let (r_side, other) = bell_pair_key(coins)?;
        debug_assert_eq!(r_side, other);
        *k = other;
    }
    let [k_ra1, k_ra2, k_rb1, k_rb2, k] = keys;
    let r = f_td_ideal(coins);
    let (x, y, xy_a, xy_b, xy_r) = (r.p, r.q, r.share_a, r.share_b, r.share_r);
    let mut channel = BroadcastChannel::new();
    let sent = channel
        .round(vec![
            Message::new(Player::R, "x", x ^ k_ra1),
            Message::new(Player::R, "[xy]_A", xy_a ^ k_ra2),
            Message::new(Player::R, "y", y ^ k_rb1),
            Message::new(Player::R, "[xy]_B", xy_b ^ k_rb2),
        ])
        .to_vec();
    // A and B strip the pads with their halves of the keys.
    let (x, xy_a) = (sent[0].bit ^ k_ra1, sent[1].bit ^ k_ra2);
    let (y, xy_b) = (sent[2].bit ^ k_rb1, sent[3].bit ^ k_rb2);
    let (share_a, share_b) = match variant {
        QkdVariant::AsStated => (xy_a ^ k, xy_b ^ k),
        QkdVariant::Corrected => (xy_a ^ (k & x) ^ k, xy_b ^ (k & y)),
    };
    Ok(QkdRun {
        shares: TripleShares {
            p: x ^ k,
            q: y ^ k,
            s: None,
            share_a,
            share_b,
            share_r: xy_r,
        },
        channel,
    })
}

/// The dealer baseline as a triple source.
#[derive(Debug, Clone, Copy, Default)]
pub struct DealerSource;

impl TripleSource for DealerSource {
    fn triple(&mut self, coins: &mut dyn CoinSource) -> Result<TripleShares> {
        Ok(ctd_dealer_baseline(coins))
    }
}

/// The key-based baseline as a triple source.
#[derive(Debug, Clone, Copy)]
pub struct QkdSource(pub QkdVariant);

impl TripleSource for QkdSource {
    fn triple(&mut self, coins: &mut dyn CoinSource) -> Result<TripleShares> {
        Ok(qkd_td_baseline(self.0, coins)?.shares)
    }
}
