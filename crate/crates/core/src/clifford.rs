// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Single-qubit Clifford unitaries, kept as their action on X and Z.
//!
//! A unitary `U` is stored as the pair `(U X U†, U Z U†)`. Global phase is
//! not tracked, which is all the graph engine needs to carry the rotations
//! left over by Y and X measurements.

use crate::pauli::{Basis, Letter, PauliOperator};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalClifford {
    x_image: Basis,
    z_image: Basis,
}

impl Default for LocalClifford {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl LocalClifford {
    pub const IDENTITY: LocalClifford = LocalClifford {
        x_image: Basis::X,
        z_image: Basis::Z,
    };

    /// `(I + s i P) / sqrt(2)` with `s = +1` when `plus` is set.
    ///
    /// Conjugation fixes `P` and sends any anticommuting `Q` to `s i P Q`.
    pub fn sqrt_rotation(axis: Letter, plus: bool) -> Self {
        assert_ne!(axis, Letter::I, "rotation axis must be X, Y or Z");
        let p = PauliOperator::single(1, 0, axis);
        let map = |q: Basis| -> Basis {
            let qop = q.on(1, 0);
            if qop.commutes_unchecked(&p) {
                return q;
            }
            let out = p.mul_unchecked(&qop).times_i(if plus { 1 } else { 3 });
            Basis::from_operator(&out).expect("image of a Pauli is a Pauli").1
        };
        Self {
            x_image: map(Basis::X),
            z_image: map(Basis::Z),
        }
    }

    /// The Clifford with the given images, if they anticommute.
    pub fn from_images(x_image: Basis, z_image: Basis) -> Option<Self> {
        let anticommute = !x_image.on(1, 0).commutes_unchecked(&z_image.on(1, 0));
        (x_image.letter != Letter::I && z_image.letter != Letter::I && anticommute).then_some(Self { x_image, z_image })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn x_image(&self) -> Basis {
        self.x_image
    }

    pub fn z_image(&self) -> Basis {
        self.z_image
    }

    /// `U P U†` for a signed letter `P`.
    pub fn conjugate(&self, b: Basis) -> Basis {
        let image = match b.letter {
            Letter::X => self.x_image,
            Letter::Z => self.z_image,
            Letter::Y => {
                // Y = i X Z
                let xz = self.x_image.on(1, 0).mul_unchecked(&self.z_image.on(1, 0));
                Basis::from_operator(&xz.times_i(1))
                    .expect("conjugation preserves Hermitian Paulis")
                    .1
            }
            Letter::I => return b,
        };
        image.with_sign_bit(b.negative)
    }

    /// The `Q` with `U Q U† = b`.
    pub fn preimage(&self, b: Basis) -> Basis {
        for l in Letter::NON_IDENTITY {
            let image = self.conjugate(Basis::plus(l));
            if image.letter == b.letter {
                return Basis::plus(l).with_sign_bit(image.negative ^ b.negative);
            }
        }
        unreachable!("a Clifford permutes the non-identity letters")
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn after(&self, inner: &Self) -> Self {
        Self {
            x_image: self.conjugate(inner.x_image),
            z_image: self.conjugate(inner.z_image),
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            x_image: self.preimage(Basis::X),
            z_image: self.preimage(Basis::Z),
        }
    }
}

/// Heisenberg image of an `n`-qubit Pauli under a product of local
/// Cliffords, one per qubit.
pub fn conjugate_operator(op: &PauliOperator, frame: &[LocalClifford]) -> PauliOperator {
    assert_eq!(op.n(), frame.len());
    let n = op.n();
    let mut out = PauliOperator::identity(n).times_i(op.phase());
    for (q, c) in frame.iter().enumerate() {
        if op.x_bit(q) {
            out = out.mul_unchecked(&c.x_image.on(n, q));
        }
        if op.z_bit(q) {
            out = out.mul_unchecked(&c.z_image.on(n, q));
        }
    }
    out
}
