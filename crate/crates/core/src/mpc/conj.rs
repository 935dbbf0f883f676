// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Sharing of an N-fold conjunction `x_1 ... x_N`, built up one input at a
//! time.
//!
//! Step `n` turns a sharing of `x_1 ... x_{n-1}` held by `P_1 .. P_{n-1}`
//! into one of `x_1 ... x_n` with one triple per pair `(P_k, P_n)`. Before a
//! non-final step the referee must leave the sharing, so it opens its share
//! of each of that step's triples up front and `P_n` absorbs it, together
//! with the single copy of each public `c_a c_b` term. In the final step all
//! three holders of each triple add `c_a c_b`, which counts it once.

use super::beaver::{local_shares, openings};
use super::channel::{BroadcastChannel, Message};
use super::sharing::{AdditiveShare, Player};
use super::supply::{BoundTriple, TripleSupply};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Roles for the triple shared by positions `k < n` (1-based): the lower
/// position plays A when `k + n` is odd.
fn binding(players: &[Player], k: usize, n: usize) -> (Player, Player) {
    let (pk, pn) = (players[k - 1], players[n - 1]);
    if (k + n) % 2 == 1 {
        (pk, pn)
    } else {
        (pn, pk)
    }
}

/// Every triple binding the conjunction consumes, in consumption order.
pub fn conj_bindings(players: &[Player]) -> Vec<(Player, Player)> {
    (2..=players.len())
        .flat_map(|n| (1..n).map(move |k| (k, n)))
        .map(|(k, n)| binding(players, k, n))
        .collect()
}

pub fn triple_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Online rounds before reconstruction.
pub fn round_count(n: usize) -> usize {
    n.saturating_sub(1) + usize::from(n >= 3)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjRun {
    pub shares: AdditiveShare,
    pub rounds: usize,
    pub triples: usize,
}

pub fn conj_n(
    inputs: &[bool],
    players: &[Player],
    supply: &mut TripleSupply,
    ch: &mut BroadcastChannel,
) -> Result<ConjRun> {
    let n_total = inputs.len();
    if n_total == 0 {
        return Err(Error::MissingInput("conjunction of no inputs".into()));
    }
    if players.len() != n_total {
        return Err(Error::MissingInput(format!(
            "{} inputs for {} players",
            n_total,
            players.len()
        )));
    }
    for (i, p) in players.iter().enumerate() {
        if *p == Player::R || players[..i].contains(p) {
            return Err(Error::MalformedAnf(format!(
                "player {p} cannot provide a conjunction input"
            )));
        }
    }
    let start = ch.rounds();

    // Offline material, all taken before anything is broadcast.
    let mut triples: BTreeMap<(usize, usize), BoundTriple> = BTreeMap::new();
    for n in 2..=n_total {
        for k in 1..n {
            let (a, b) = binding(players, k, n);
            triples.insert((k, n), supply.take(a, b)?);
        }
    }

    let mut absorbed: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    if n_total >= 3 {
        let msgs: Vec<Message> = triples
            .iter()
            .filter(|((_, n), _)| *n < n_total)
            .map(|((k, n), t)| Message::new(Player::R, format!("[pq]_R{k}{n}"), t.shares.share_r))
            .collect();
        let opened = ch.round(msgs);
        for ((k, n), m) in triples.keys().filter(|(_, n)| *n < n_total).zip(opened) {
            absorbed.insert((*k, *n), m.bit);
        }
    }

    let mut sigma = vec![inputs[0]];
    let mut shares: AdditiveShare = [(players[0], inputs[0])].into_iter().collect();
    for n in 2..=n_total {
        let last = n == n_total;
        let pn = players[n - 1];
        let x = inputs[n - 1];
        let mut msgs = Vec::new();
        for k in 1..n {
            let t = &triples[&(k, n)];
            let (a, b) = if t.a_role == players[k - 1] {
                (sigma[k - 1], x)
            } else {
                (x, sigma[k - 1])
            };
            msgs.extend(openings(a, b, t, &format!("{k}{n}")));
        }
        let round = ch.round(msgs).to_vec();
        let mut next = AdditiveShare::new();
        for k in 1..n {
            let t = &triples[&(k, n)];
            let (c_a, c_b) = (round[2 * (k - 1)].bit, round[2 * (k - 1) + 1].bit);
            for (holder, bit) in local_shares(t, c_a, c_b).iter() {
                if holder == Player::R && !last {
                    next.add(pn, absorbed[&(k, n)]);
                } else {
                    next.add(holder, bit);
                }
            }
            if last {
                for holder in [t.a_role, t.b_role, Player::R] {
                    next.add(holder, c_a & c_b);
                }
            } else {
                next.add(pn, c_a & c_b);
            }
        }
        sigma = players[..n].iter().map(|&p| next.get(p)).collect();
        shares = next;
    }
    Ok(ConjRun {
        shares,
        rounds: ch.rounds() - start,
        triples: triples.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coins::{enumerate_branches, CoinSource, SeededCoins};
    use crate::mpc::beaver::beaver_open_and_multiply;
    use crate::mpc::supply::IdealSource;

    fn players(n: usize) -> Vec<Player> {
        (1..=n).map(Player::P).collect()
    }

    fn run(inputs: &[bool], coins: &mut dyn CoinSource) -> Result<ConjRun> {
        let ps = players(inputs.len());
        let mut supply = TripleSupply::new();
        supply.provision(&conj_bindings(&ps), &mut IdealSource, coins)?;
        conj_n(inputs, &ps, &mut supply, &mut BroadcastChannel::new())
    }

    #[test]
    fn bindings_follow_the_three_party_schedule() {
        let b = conj_bindings(&players(3));
        assert_eq!(
            b,
            [
                (Player::P(1), Player::P(2)),
                (Player::P(3), Player::P(1)),
                (Player::P(2), Player::P(3)),
            ]
        );
    }

    #[test]
    fn three_inputs_exhaustive() {
        for x in 0..8u8 {
            let inputs: Vec<bool> = (0..3).map(|i| x >> i & 1 == 1).collect();
            let runs = enumerate_branches(|c| run(&inputs, c)).unwrap();
            assert_eq!(runs.len(), 1 << 12);
            for r in &runs {
                assert_eq!(r.value.shares.reconstruct(), x == 7);
                assert_eq!((r.value.triples, r.value.rounds), (3, 3));
            }
        }
    }

    #[test]
    fn two_inputs_match_beaver() {
        for x in 0..4u8 {
            let (a, b) = (x & 1 == 1, x & 2 == 2);
            let conj = enumerate_branches(|c| run(&[a, b], c)).unwrap();
            let beaver = enumerate_branches(|c| {
                let mut supply = TripleSupply::new();
                supply.fill(&mut IdealSource, c, Player::P(1), Player::P(2))?;
                beaver_open_and_multiply(
                    a,
                    b,
                    Player::P(1),
                    Player::P(2),
                    &mut supply,
                    &mut BroadcastChannel::new(),
                )
            })
            .unwrap();
            for (c, b) in conj.iter().zip(&beaver) {
                assert_eq!(c.value.shares, b.value);
                assert_eq!(c.value.rounds, 1);
            }
        }
    }

    #[test]
    fn counts_up_to_five() {
        let mut coins = SeededCoins::new(7);
        for n in 1..=5 {
            for trial in 0..16u32 {
                let inputs: Vec<bool> = (0..n).map(|i| trial >> i & 1 == 1 || trial == 15).collect();
                let r = run(&inputs, &mut coins).unwrap();
                assert_eq!(r.triples, triple_count(n));
                assert_eq!(r.rounds, round_count(n));
                assert_eq!(r.shares.reconstruct(), inputs.iter().all(|&b| b));
            }
        }
        assert_eq!((triple_count(4), round_count(4)), (6, 4));
    }

    #[test]
    fn both_parties_adding_the_public_term_cancels_it() {
        // Two holders each adding c_a c_b leaves it out of the sum; with R's
        // share absorbed, the product comes out wrong whenever c_a c_b = 1.
        let (x1, x2, p, q, r) = (true, true, false, false, false);
        let (c_a, c_b) = (x1 ^ p, x2 ^ q);
        let both = (c_a & c_b) ^ (c_b & p) ^ r ^ (c_a & c_b) ^ (c_a & q);
        assert_ne!(both, x1 & x2);
        let once = (c_a & c_b) ^ (c_b & p) ^ r ^ (c_a & q);
        assert_eq!(once, x1 & x2);
    }

    #[test]
    fn too_few_triples() {
        let ps = players(3);
        let mut supply = TripleSupply::new();
        let mut coins = SeededCoins::new(1);
        supply
            .provision(&conj_bindings(&ps)[..2], &mut IdealSource, &mut coins)
            .unwrap();
        let r = conj_n(&[true; 3], &ps, &mut supply, &mut BroadcastChannel::new());
        assert!(matches!(r, Err(Error::InsufficientTriples(_))));
    }
}
