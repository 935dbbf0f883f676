// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

//! One multiplication from one triple.
//!
//! The A-role party holds `a` and opens `c_a = a ^ p`; the B-role party holds
//! `b` and opens `c_b = b ^ q`. Then
//! `ab = c_a c_b ^ c_b p ^ c_a q ^ [pq]`, and each term lands with whoever
//! can compute it.

use super::channel::{BroadcastChannel, Message};
use super::sharing::{AdditiveShare, Player};
use super::supply::{BoundTriple, TripleSupply};
use crate::error::Result;

/// The two openings for one multiplication.
pub fn openings(a: bool, b: bool, t: &BoundTriple, tag: &str) -> [Message; 2] {
    [
        Message::new(t.a_role, format!("c_a{tag}"), a ^ t.shares.p),
        Message::new(t.b_role, format!("c_b{tag}"), b ^ t.shares.q),
    ]
}

/// Local shares before the public `c_a c_b` term is placed: the A role
/// takes `c_b p ^ [pq]_A`, the B role `c_a q ^ [pq]_B`, the referee
/// `[pq]_R`.
pub fn local_shares(t: &BoundTriple, c_a: bool, c_b: bool) -> AdditiveShare {
    [
        (t.a_role, (c_b & t.shares.p) ^ t.shares.share_a),
        (t.b_role, (c_a & t.shares.q) ^ t.shares.share_b),
        (Player::R, t.shares.share_r),
    ]
    .into_iter()
    .collect()
}

/// Three-way sharing of `ab` in one round. All three holders add `c_a c_b`,
/// which counts it once.
pub fn beaver_open_and_multiply(
    a: bool,
    b: bool,
    a_role: Player,
    b_role: Player,
    supply: &mut TripleSupply,
    ch: &mut BroadcastChannel,
) -> Result<AdditiveShare> {
    let t = supply.take(a_role, b_role)?;
    let round = ch.round(openings(a, b, &t, "").to_vec());
    let (c_a, c_b) = (round[0].bit, round[1].bit);
    let mut shares = local_shares(&t, c_a, c_b);
    for holder in [t.a_role, t.b_role, Player::R] {
        shares.add(holder, c_a & c_b);
    }
    Ok(shares)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coins::{enumerate_branches, CoinSource};
    use crate::dist::{conditional_table, Distribution};
    use crate::error::Error;
    use crate::mpc::supply::IdealSource;
    use crate::protocol::TripleShares;
    use crate::Prob;

    const A: Player = Player::SENDER;
    const B: Player = Player::RECEIVER;

    fn with(t: TripleShares) -> TripleSupply {
        let mut s = TripleSupply::new();
        s.push(BoundTriple {
            id: 0,
            a_role: A,
            b_role: B,
            shares: t,
        });
        s
    }

    #[test]
    fn hand_example() {
        // p=0, q=1, [pq] = (1, 1, 0)
        let t = TripleShares {
            p: false,
            q: true,
            s: None,
            share_a: true,
            share_b: true,
            share_r: false,
        };
        let mut ch = BroadcastChannel::new();
        let shares = beaver_open_and_multiply(true, true, A, B, &mut with(t), &mut ch).unwrap();
        assert_eq!(ch.read("c_a"), Some(true));
        assert_eq!(ch.read("c_b"), Some(false));
        assert!(shares.reconstruct());
    }

    #[test]
    fn zero_input_zero_pad() {
        let t = TripleShares {
            p: false,
            q: true,
            s: None,
            share_a: false,
            share_b: true,
            share_r: true,
        };
        for b in [false, true] {
            let mut ch = BroadcastChannel::new();
            let shares = beaver_open_and_multiply(false, b, A, B, &mut with(t), &mut ch).unwrap();
            assert_eq!(ch.read("c_a"), Some(false));
            assert!(!shares.reconstruct());
        }
    }

    #[test]
    fn second_use_is_refused() {
        let t = TripleShares {
            p: false,
            q: false,
            s: None,
            share_a: false,
            share_b: false,
            share_r: false,
        };
        let mut supply = with(t);
        let mut ch = BroadcastChannel::new();
        beaver_open_and_multiply(true, true, A, B, &mut supply, &mut ch).unwrap();
        supply.push(BoundTriple {
            id: 0,
            a_role: A,
            b_role: B,
            shares: t,
        });
        assert_eq!(
            beaver_open_and_multiply(true, true, A, B, &mut supply, &mut ch),
            Err(Error::TripleReused(0))
        );
    }

    #[test]
    fn exhaustive_correctness_and_uniform_openings() {
        let runs = enumerate_branches(|coins| {
            let (a, b) = (coins.flip(), coins.flip());
            let mut supply = TripleSupply::new();
            supply.fill(&mut IdealSource, coins, A, B)?;
            let mut ch = BroadcastChannel::new();
            let s = beaver_open_and_multiply(a, b, A, B, &mut supply, &mut ch)?;
            Ok((a, b, s.reconstruct(), ch.read("c_a").unwrap(), ch.read("c_b").unwrap()))
        })
        .unwrap();
        assert_eq!(runs.len(), 64);
        assert!(runs.iter().all(|r| r.value.2 == (r.value.0 & r.value.1)));
        let d: Distribution<_> = runs.iter().map(|r| (r.value, r.weight::<Prob>())).collect();
        let half = Prob::new(1, 2);
        for table in [
            conditional_table(&d, |k| k.3, |k| k.0),
            conditional_table(&d, |k| k.3, |k| k.1),
            conditional_table(&d, |k| k.4, |k| k.0),
            conditional_table(&d, |k| k.4, |k| k.1),
        ] {
            assert!(table.values().all(|p| *p == half));
        }
    }
}
