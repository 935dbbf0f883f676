// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

//! n-qubit Pauli operators in the binary symplectic representation.
//!
//! An operator is stored as `i^phase * prod_j X_j^{x_j} Z_j^{z_j}` with the X
//! factor to the left of the Z factor on every qubit. Under this ordering
//! `Y = i X Z`, so the stored phase of `Y` is 1 while its printed sign is `+`.

use crate::error::{Error, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// A single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub const NON_IDENTITY: [Letter; 3] = [Letter::X, Letter::Y, Letter::Z];

    fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Letter {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    fn parse(c: char) -> Option<Letter> {
        match c {
            'I' | '_' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

const WORD: usize = 64;

fn word_count(n: usize) -> usize {
    n.div_ceil(WORD)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            x: vec![0; word_count(n)],
            z: vec![0; word_count(n)],
            phase: 0,
        }
    }

    /// `letter` acting on qubit `q`, identity elsewhere.
    pub fn single(n: usize, q: usize, letter: Letter) -> Self {
        Self::from_letters(n, &[(q, letter)])
    }

    /// Tensor product of the given letters with a `+` sign. Repeated qubits
    /// are multiplied left to right.
    pub fn from_letters(n: usize, letters: &[(usize, Letter)]) -> Self {
        let mut op = Self::identity(n);
        for &(q, l) in letters {
            assert!(q < n, "qubit {q} out of range for {n} qubits");
            let mut f = Self::identity(n);
            let (xb, zb) = l.bits();
            f.set_bits(q, xb, zb);
            if l == Letter::Y {
                f.phase = 1;
            }
            op = op.mul_unchecked(&f);
        }
        op
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Exponent of `i` in the XZ-ordered representation.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn x_bit(&self, q: usize) -> bool {
        self.x[q / WORD] >> (q % WORD) & 1 == 1
    }

    pub fn z_bit(&self, q: usize) -> bool {
        self.z[q / WORD] >> (q % WORD) & 1 == 1
    }

    pub fn letter(&self, q: usize) -> Letter {
        Letter::from_bits(self.x_bit(q), self.z_bit(q))
    }

    fn set_bits(&mut self, q: usize, xb: bool, zb: bool) {
        let (w, b) = (q / WORD, q % WORD);
        self.x[w] = (self.x[w] & !(1 << b)) | ((xb as u64) << b);
        self.z[w] = (self.z[w] & !(1 << b)) | ((zb as u64) << b);
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| self.letter(q) != Letter::I).collect()
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.weight() == 0
    }

    fn y_count(&self) -> u32 {
        self.x.iter().zip(&self.z).map(|(x, z)| (x & z).count_ones()).sum()
    }

    /// Phase relative to the plain letter string, so `-iY` has letter phase 3.
    pub fn letter_phase(&self) -> u8 {
        ((self.phase as u32 + 4 - self.y_count() % 4) % 4) as u8
    }

    /// Squares to `+I`.
    pub fn is_hermitian(&self) -> bool {
        self.letter_phase().is_multiple_of(2)
    }

    /// `Some(true)` for `-P`, `Some(false)` for `+P`, `None` for `±iP`.
    pub fn is_negative(&self) -> Option<bool> {
        match self.letter_phase() {
            0 => Some(false),
            2 => Some(true),
            _ => None,
        }
    }

    pub fn negated(&self) -> Self {
        let mut out = self.clone();
        out.phase = (out.phase + 2) % 4;
        out
    }

    /// Multiplies by `i^k`.
    pub fn times_i(&self, k: u8) -> Self {
        let mut out = self.clone();
        out.phase = (out.phase + k) % 4;
        out
    }

    /// Multiplies by `(-1)^bit`.
    pub fn with_sign_bit(&self, bit: bool) -> Self {
        if bit {
            self.negated()
        } else {
            self.clone()
        }
    }

    /// Same letters with a `+` sign.
    pub fn unsigned(&self) -> Self {
        let mut out = self.clone();
        out.phase = (self.y_count() % 4) as u8;
        out
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// `self * other` with exact phase bookkeeping.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        // Z^{z1} X^{x2} = (-1)^{z1.x2} X^{x2} Z^{z1}
        let swaps: u32 = self.z.iter().zip(&other.x).map(|(z, x)| (z & x).count_ones()).sum();
        Self {
            n: self.n,
            x: self.x.iter().zip(&other.x).map(|(a, b)| a ^ b).collect(),
            z: self.z.iter().zip(&other.z).map(|(a, b)| a ^ b).collect(),
            phase: ((self.phase as u32 + other.phase as u32 + 2 * (swaps % 2)) % 4) as u8,
        }
    }

    /// Symplectic inner product is zero.
    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.commutes_unchecked(other))
    }

    pub(crate) fn commutes_unchecked(&self, other: &Self) -> bool {
        let s: u32 = (0..self.x.len())
            .map(|w| ((self.x[w] & other.z[w]) ^ (self.z[w] & other.x[w])).count_ones())
            .sum();
        s.is_multiple_of(2)
    }

    /// Same symplectic part, ignoring phase.
    pub fn same_letters(&self, other: &Self) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    /// Keeps only the listed qubits, in the listed order.
    pub fn restricted(&self, qubits: &[usize]) -> Self {
        let mut out = Self::identity(qubits.len());
        for (k, &q) in qubits.iter().enumerate() {
            out.set_bits(k, self.x_bit(q), self.z_bit(q));
        }
        out.phase = self.phase;
        out
    }

    /// Inverse of [`restricted`](Self::restricted): places qubit `k` of
    /// `self` at position `qubits[k]` of an `n`-qubit operator.
    pub fn embedded(&self, n: usize, qubits: &[usize]) -> Self {
        assert_eq!(qubits.len(), self.n);
        let mut out = Self::identity(n);
        for (k, &q) in qubits.iter().enumerate() {
            out.set_bits(q, self.x_bit(k), self.z_bit(k));
        }
        out.phase = self.phase;
        out
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.letter_phase() {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{sign}")?;
        for q in 0..self.n {
            write!(f, "{}", self.letter(q))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    /// Parses strings such as `+XIZ`, `-iY`, `−Z`; a missing sign means `+`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::PauliParse(s.to_string());
        let t = s.trim().replace('−', "-");
        let (letter_phase, body) = if let Some(rest) = t.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = t.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = t.strip_prefix('i') {
            (1, rest)
        } else if let Some(rest) = t.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = t.strip_prefix('-') {
            (2, rest)
        } else {
            (0, t.as_str())
        };
        if body.is_empty() {
            return Err(err());
        }
        let letters = body
            .chars()
            .map(Letter::parse)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(err)?;
        let n = letters.len();
        let pairs: Vec<_> = letters.into_iter().enumerate().collect();
        let mut op = Self::from_letters(n, &pairs);
        op.phase = (op.phase + letter_phase) % 4;
        Ok(op)
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A signed single-qubit observable such as `X` or `-Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Basis {
    pub letter: Letter,
    pub negative: bool,
}

impl Basis {
    pub const X: Basis = Basis::plus(Letter::X);
    pub const Y: Basis = Basis::plus(Letter::Y);
    pub const Z: Basis = Basis::plus(Letter::Z);

    pub const fn plus(letter: Letter) -> Self {
        Self {
            letter,
            negative: false,
        }
    }

    pub fn negated(self) -> Self {
        Self {
            letter: self.letter,
            negative: !self.negative,
        }
    }

    pub fn with_sign_bit(self, bit: bool) -> Self {
        if bit {
            self.negated()
        } else {
            self
        }
    }

    /// The observable on qubit `q` of an `n`-qubit register.
    pub fn on(self, n: usize, q: usize) -> PauliOperator {
        PauliOperator::single(n, q, self.letter).with_sign_bit(self.negative)
    }

    /// Reads a Hermitian weight-one operator back as a basis.
    pub fn from_operator(op: &PauliOperator) -> Option<(usize, Basis)> {
        let support = op.support();
        let [q] = support[..] else { return None };
        Some((
            q,
            Basis {
                letter: op.letter(q),
                negative: op.is_negative()?,
            },
        ))
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        write!(f, "{}", self.letter)
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let op: PauliOperator = s.parse()?;
        match Basis::from_operator(&op) {
            Some((0, b)) if op.n() == 1 => Ok(b),
            _ => Err(Error::NotSingleQubit(s.to_string())),
        }
    }
}

impl Serialize for Basis {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Basis {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
