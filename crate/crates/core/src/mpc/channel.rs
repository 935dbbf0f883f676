// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

use super::sharing::Player;
use crate::bits;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Message {
    pub sender: Player,
    pub label: String,
    #[serde(with = "bits")]
    pub bit: bool,
}

impl Message {
    pub fn new(sender: Player, label: impl Into<String>, bit: bool) -> Self {
        Message {
            sender,
            label: label.into(),
            bit,
        }
    }
}

/// Append-only public channel. A round is committed as a whole, so nobody
/// reads a message before every message of that round is in.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BroadcastChannel {
    rounds: Vec<Vec<Message>>,
}

impl BroadcastChannel {
    pub fn new() -> Self {
        Self::default()
    }

    /// Commits one round and returns it for the parties to read.
    pub fn round(&mut self, messages: Vec<Message>) -> &[Message] {
        self.rounds.push(messages);
        self.rounds.last().expect("just pushed")
    }

    pub fn rounds(&self) -> usize {
        self.rounds.len()
    }

    /// Everything a passive eavesdropper has seen.
    pub fn log(&self) -> &[Vec<Message>] {
        &self.rounds
    }

    /// The log flattened to `(label, bit)` pairs.
    pub fn transcript(&self) -> Vec<(String, bool)> {
        self.rounds
            .iter()
            .flatten()
            .map(|m| (format!("{}:{}", m.sender, m.label), m.bit))
            .collect()
    }

    /// The value of the first message with this label.
    pub fn read(&self, label: &str) -> Option<bool> {
        self.rounds.iter().flatten().find(|m| m.label == label).map(|m| m.bit)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}
