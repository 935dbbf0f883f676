// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Referee-assisted 1-out-of-2 oblivious transfer from two triples.
//!
//! The receiver learns `a0 (b ^ 1) ^ a1 b`. Only the sender and the referee
//! open their output shares, so only the receiver can reconstruct.

use super::beaver::{local_shares, openings};
use super::channel::{BroadcastChannel, Message};
use super::sharing::{AdditiveShare, Player};
use super::supply::TripleSupply;
use crate::error::Result;

pub const SENDER: Player = Player::SENDER;
pub const RECEIVER: Player = Player::RECEIVER;

/// Role bindings for the two triples.
pub fn ot_bindings() -> [(Player, Player); 2] {
    [(SENDER, RECEIVER); 2]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OtRun {
    /// What the receiver reconstructs.
    pub output: bool,
    /// The output sharing before reconstruction.
    pub shares: AdditiveShare,
}

pub fn ot_1of2(a0: bool, a1: bool, b: bool, supply: &mut TripleSupply, ch: &mut BroadcastChannel) -> Result<OtRun> {
    let t0 = supply.take(SENDER, RECEIVER)?;
    let t1 = supply.take(SENDER, RECEIVER)?;
    let mut msgs = openings(a0, !b, &t0, "0").to_vec();
    msgs.extend(openings(a1, b, &t1, "1"));
    let round = ch.round(msgs).to_vec();
    let mut shares = AdditiveShare::new();
    for (i, t) in [t0, t1].iter().enumerate() {
        let (c_a, c_b) = (round[2 * i].bit, round[2 * i + 1].bit);
        shares = shares.xor(&local_shares(t, c_a, c_b));
        for holder in [SENDER, RECEIVER, Player::R] {
            shares.add(holder, c_a & c_b);
        }
    }
    let opened = ch.round(vec![
        Message::new(SENDER, "f", shares.get(SENDER)),
        Message::new(Player::R, "f", shares.get(Player::R)),
    ]);
    let output = opened.iter().fold(shares.get(RECEIVER), |acc, m| acc ^ m.bit);
    Ok(OtRun { output, shares })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coins::{enumerate_branches, ScriptedCoins};
    use crate::mpc::supply::IdealSource;

    fn run(a0: bool, a1: bool, b: bool, coins: &mut dyn crate::coins::CoinSource) -> OtRun {
        let mut supply = TripleSupply::new();
        supply.provision(&ot_bindings(), &mut IdealSource, coins).unwrap();
        ot_1of2(a0, a1, b, &mut supply, &mut BroadcastChannel::new()).unwrap()
    }

    #[test]
    fn examples() {
        assert!(run(false, true, true, &mut ScriptedCoins::default()).output);
        for b in [false, true] {
            assert!(!run(false, false, b, &mut ScriptedCoins::default()).output);
        }
    }

    #[test]
    fn receiver_gets_the_chosen_bit_on_every_branch() {
        for x in 0..8u8 {
            let (a0, a1, b) = (x & 1 == 1, x & 2 == 2, x & 4 == 4);
            let outs = enumerate_branches(|c| Ok(run(a0, a1, b, c).output)).unwrap();
            assert!(outs.iter().all(|o| o.value == if b { a1 } else { a0 }));
        }
    }
}
