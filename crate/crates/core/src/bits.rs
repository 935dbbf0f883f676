// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Serde adapters that write bits as `0`/`1` instead of `false`/`true`.

use serde::{Deserialize, Deserializer, Serializer};

pub fn serialize<S: Serializer>(bit: &bool, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u8(*bit as u8)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<bool, D::Error> {
    match u8::deserialize(d)? {
        0 => Ok(false),
        1 => Ok(true),
        v => Err(serde::de::Error::custom(format!("expected a bit, got {v}"))),
    }
}

pub mod option {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(bit: &Option<bool>, s: S) -> Result<S::Ok, S::Error> {
        match bit {
            Some(b) => s.serialize_some(&(*b as u8)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<bool>, D::Error> {
        match Option::<u8>::deserialize(d)? {
            None => Ok(None),
            Some(0) => Ok(Some(false)),
            Some(1) => Ok(Some(true)),
            Some(v) => Err(serde::de::Error::custom(format!("expected a bit, got {v}"))),
        }
    }
}

pub mod vec {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(bits: &[bool], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(bits.iter().map(|&b| b as u8))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<bool>, D::Error> {
        Vec::<u8>::deserialize(d)?
            .into_iter()
            .map(|v| match v {
                0 => Ok(false),
                1 => Ok(true),
                v => Err(serde::de::Error::custom(format!("expected a bit, got {v}"))),
            })
            .collect()
    }
}

/// Maps from labels to bits, written as `{"3": 1}`.
pub mod map {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(m: &BTreeMap<usize, bool>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(m.iter().map(|(k, v)| (k, *v as u8)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, bool>, D::Error> {
        BTreeMap::<usize, u8>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| match v {
                0 => Ok((k, false)),
                1 => Ok((k, true)),
                v => Err(serde::de::Error::custom(format!("expected a bit, got {v}"))),
            })
            .collect()
    }
}
