// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Brute-force state vectors, the reference every stabilizer result is
//! checked against. Qubit `q` is bit `q` of the amplitude index.

use crate::clifford::LocalClifford;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBasisState, PhaseVector};
use crate::pauli::{Basis, Letter, PauliOperator};
use crate::scalar::Real;
use crate::stabilizer::Sign;
use num_complex::Complex;
use num_traits::{One, Zero};

/// Largest register the oracle will allocate.
pub const MAX_DENSE_QUBITS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseState<T: Real = f64> {
    n: usize,
    amps: Vec<Complex<T>>,
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_DENSE_QUBITS {
        return Err(Error::TooManyQubits {
            n,
            limit: MAX_DENSE_QUBITS,
        });
    }
    Ok(())
}

fn i_power<T: Real>(k: u8) -> Complex<T> {
    match k % 4 {
        0 => Complex::one(),
        1 => Complex::i(),
        2 => -Complex::one(),
        _ => -Complex::i(),
    }
}

fn masks(op: &PauliOperator) -> (usize, usize) {
    let mut x = 0;
    let mut z = 0;
    for q in 0..op.n() {
        x |= (op.x_bit(q) as usize) << q;
        z |= (op.z_bit(q) as usize) << q;
    }
    (x, z)
}

/// A 2x2 unitary realising `c`, up to global phase.
pub fn clifford_matrix<T: Real>(c: &LocalClifford) -> [[Complex<T>; 2]; 2] {
    // U|0> is the +1 eigenvector of U Z U†, and U|1> = (U X U†) U|0>.
    let col0 = eigenvector::<T>(c.z_image());
    let a = DenseState::<T> {
        n: 1,
        amps: col0.to_vec(),
    }
    .with_pauli(&c.x_image().on(1, 0));
    let col1 = [a.amps[0], a.amps[1]];
    [[col0[0], col1[0]], [col0[1], col1[1]]]
}

/// The +1 eigenvector of a signed single-qubit Pauli.
pub fn eigenvector<T: Real>(b: Basis) -> [Complex<T>; 2] {
    let h = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    let s = if b.negative { -T::one() } else { T::one() };
    match b.letter {
        Letter::Z if b.negative => [Complex::zero(), Complex::one()],
        Letter::Z => [Complex::one(), Complex::zero()],
        Letter::X => [Complex::new(h, T::zero()), Complex::new(s * h, T::zero())],
        Letter::Y => [Complex::new(h, T::zero()), Complex::new(T::zero(), s * h)],
        Letter::I => panic!("identity has no distinguished eigenvector"),
    }
}

impl<T: Real> DenseState<T> {
    /// `|0...0>`.
    pub fn zero(n: usize) -> Result<Self> {
        check_size(n)?;
        let mut amps = vec![Complex::zero(); 1 << n];
        amps[0] = Complex::one();
        Ok(Self { n, amps })
    }

    /// `|+...+>`.
    pub fn plus(n: usize) -> Result<Self> {
        check_size(n)?;
        let a = T::one() / T::lit((1u64 << n) as f64).sqrt();
        Ok(Self {
            n,
            amps: vec![Complex::new(a, T::zero()); 1 << n],
        })
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex<T>>) -> Result<Self> {
        check_size(n)?;
        if amps.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: amps.len().trailing_zeros() as usize,
            });
        }
        Ok(Self { n, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn norm(&self) -> T {
        self.amps.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr()).sqrt()
    }

    fn check(&self, op: &PauliOperator) -> Result<()> {
        if op.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: op.n(),
            });
        }
        Ok(())
    }

    fn with_pauli(&self, op: &PauliOperator) -> Self {
        let (x, z) = masks(op);
        let phase = i_power::<T>(op.phase());
        let mut out = vec![Complex::zero(); self.amps.len()];
        for (b, a) in self.amps.iter().enumerate() {
            // X^x Z^z |b> = (-1)^{z.b} |b xor x>
            let sign = if (z & b).count_ones() % 2 == 1 {
                -T::one()
            } else {
                T::one()
            };
            out[b ^ x] = *a * phase * sign;
        }
        Self { n: self.n, amps: out }
    }

    pub fn apply_pauli(&mut self, op: &PauliOperator) -> Result<()> {
        self.check(op)?;
        *self = self.with_pauli(op);
        Ok(())
    }

    pub fn apply_cz(&mut self, i: usize, j: usize) {
        let mask = (1 << i) | (1 << j);
        for (b, a) in self.amps.iter_mut().enumerate() {
            if b & mask == mask {
                *a = -*a;
            }
        }
    }

    /// Applies a 2x2 matrix to qubit `q`.
    pub fn apply_single(&mut self, q: usize, m: &[[Complex<T>; 2]; 2]) {
        let bit = 1 << q;
        for b in 0..self.amps.len() {
            if b & bit == 0 {
                let (a0, a1) = (self.amps[b], self.amps[b | bit]);
                self.amps[b] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[b | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.amps
            .iter()
            .zip(&other.amps)
            .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b)
    }

    pub fn expectation(&self, op: &PauliOperator) -> Result<Complex<T>> {
        self.check(op)?;
        Ok(self.inner(&self.with_pauli(op)))
    }

    /// `Some(s)` if `s * op` stabilizes the state, `None` if the expectation
    /// vanishes. Anything else is not a stabilizer-state answer.
    pub fn stabilizer_sign(&self, op: &PauliOperator) -> Result<Option<Sign>> {
        let e = self.expectation(op)?.re;
        let tol = T::tolerance();
        if (e - T::one()).abs() < tol {
            Ok(Some(Sign::Plus))
        } else if (e + T::one()).abs() < tol {
            Ok(Some(Sign::Minus))
        } else if e.abs() < tol {
            Ok(None)
        } else {
            Err(Error::NonDyadicProbability(format!("{e:?}")))
        }
    }

    /// Probability of eigenvalue `(-1)^branch` and the renormalised
    /// post-measurement state.
    pub fn measure_pauli_dense(&self, obs: &PauliOperator, branch: bool) -> Result<(T, Self)> {
        self.check(obs)?;
        if !obs.is_hermitian() {
            return Err(Error::NotHermitian(obs.to_string()));
        }
        let flipped = self.with_pauli(obs);
        let sign = if branch { -T::one() } else { T::one() };
        let half = T::lit(0.5);
        let amps: Vec<Complex<T>> = self
            .amps
            .iter()
            .zip(&flipped.amps)
            .map(|(a, pa)| (*a + *pa * sign) * half)
            .collect();
        let prob = amps.iter().fold(T::zero(), |acc, a| acc + a.norm_sqr());
        if prob < T::tolerance() {
            return Err(Error::ZeroProbabilityBranch);
        }
        let scale = T::one() / prob.sqrt();
        Ok((
            prob,
            Self {
                n: self.n,
                amps: amps.into_iter().map(|a| a * scale).collect(),
            },
        ))
    }

    /// Probability of eigenvalue `(-1)^branch`, zero allowed.
    pub fn probability(&self, obs: &PauliOperator, branch: bool) -> Result<T> {
        let e = self.expectation(obs)?.re;
        let s = if branch { -e } else { e };
        Ok((T::one() + s) * T::lit(0.5))
    }

    pub fn equal_up_to_global_phase(&self, other: &Self) -> bool {
        self.n == other.n && (self.inner(other).norm() - T::one()).abs() < T::tolerance()
    }

    /// `Z^r prod_{ij in E} CZ_ij |+>^n`.
    pub fn build_graph_state(g: &Graph, phases: &PhaseVector) -> Result<Self> {
        if phases.len() != g.n() {
            return Err(Error::DimensionMismatch {
                left: g.n(),
                right: phases.len(),
            });
        }
        let mut s = Self::plus(g.n())?;
        for (i, j) in g.edges() {
            s.apply_cz(i, j);
        }
        for i in 0..g.n() {
            if phases.get(i) {
                s.apply_pauli(&PauliOperator::single(g.n(), i, Letter::Z))?;
            }
        }
        Ok(s)
    }

    /// The physical state described by a graph basis state, pending
    /// rotations and measured vertices included.
    pub fn from_graph_basis_state(s: &GraphBasisState) -> Result<Self> {
        let mut out = Self::build_graph_state(s.graph(), s.phases())?;
        for v in 0..s.n() {
            match s.measured(v) {
                // the tombstone sits in |+>; rotate it onto the recorded eigenstate
                Some(m) => {
                    let target = m.basis.with_sign_bit(m.outcome);
                    let partner = Letter::NON_IDENTITY
                        .into_iter()
                        .find(|&l| l != target.letter)
                        .expect("two other letters");
                    let c =
                        LocalClifford::from_images(target, Basis::plus(partner)).expect("distinct letters anticommute");
                    out.apply_single(v, &clifford_matrix(&c));
                }
                None if !s.frame()[v].is_identity() => {
                    out.apply_single(v, &clifford_matrix(&s.frame()[v]));
                }
                None => {}
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    fn close(a: Complex<f64>, re: f64, im: f64) -> bool {
        (a.re - re).abs() < 1e-12 && (a.im - im).abs() < 1e-12
    }

    #[test]
    fn one_vertex_graph_is_plus() {
        let s = DenseState::<f64>::build_graph_state(&Graph::empty(1), &PhaseVector::zeros(1)).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(s.amplitudes()[0], h, 0.0) && close(s.amplitudes()[1], h, 0.0));
    }

    #[test]
    fn single_edge_has_one_negative_amplitude() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let s = DenseState::<f64>::build_graph_state(&g, &PhaseVector::zeros(2)).unwrap();
        let a = s.amplitudes();
        assert!(close(a[0], 0.5, 0.0) && close(a[1], 0.5, 0.0) && close(a[2], 0.5, 0.0));
        assert!(close(a[3], -0.5, 0.0));
    }

    #[test]
    fn plus_in_z_is_even() {
        let s = DenseState::<f64>::plus(1).unwrap();
        let (prob, post) = s.measure_pauli_dense(&p("Z"), false).unwrap();
        assert!((prob - 0.5).abs() < 1e-12);
        assert!(post.equal_up_to_global_phase(&DenseState::zero(1).unwrap()));
    }

    #[test]
    fn graph_state_eigen_branch_has_unit_probability() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let s = DenseState::<f64>::build_graph_state(&g, &PhaseVector::zeros(3)).unwrap();
        let (prob, _) = s.measure_pauli_dense(&p("ZXZ"), false).unwrap();
        assert!((prob - 1.0).abs() < 1e-12);
        assert_eq!(
            s.measure_pauli_dense(&p("ZXZ"), true).unwrap_err(),
            Error::ZeroProbabilityBranch
        );
        assert!(s.measure_pauli_dense(&p("iZII"), false).is_err());
    }

    #[test]
    fn global_phase_comparison() {
        let plus = DenseState::<f64>::plus(1).unwrap();
        let mut minus = plus.clone();
        minus.apply_pauli(&p("Z")).unwrap();
        assert!(plus.equal_up_to_global_phase(&plus));
        assert!(!plus.equal_up_to_global_phase(&minus));
        let mut rotated = plus.clone();
        rotated.apply_pauli(&p("iI")).unwrap();
        assert!(plus.equal_up_to_global_phase(&rotated));
    }

    #[test]
    fn size_limit() {
        assert!(matches!(
            DenseState::<f64>::plus(MAX_DENSE_QUBITS + 1),
            Err(Error::TooManyQubits { .. })
        ));
    }

    #[test]
    fn single_precision_agrees() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let s = DenseState::<f32>::build_graph_state(&g, &PhaseVector::zeros(3)).unwrap();
        assert_eq!(s.stabilizer_sign(&p("XZZ")).unwrap(), Some(Sign::Plus));
        assert!((s.norm() - 1.0).abs() < 1e-5);
    }

    #[test]
    fn clifford_matrices_realise_their_images() {
        let rots = [
            LocalClifford::sqrt_rotation(Letter::Z, false),
            LocalClifford::sqrt_rotation(Letter::Y, true),
            LocalClifford::sqrt_rotation(Letter::X, true).after(&LocalClifford::sqrt_rotation(Letter::Z, true)),
        ];
        for c in rots {
            let m = clifford_matrix::<f64>(&c);
            for b in [Basis::X, Basis::Z, Basis::Y.negated()] {
                // U applied to the eigenvector of b is the eigenvector of U b U†
                let mut s = DenseState::from_amplitudes(1, eigenvector::<f64>(b).to_vec()).unwrap();
                s.apply_single(0, &m);
                let want = DenseState::from_amplitudes(1, eigenvector::<f64>(c.conjugate(b)).to_vec()).unwrap();
                assert!(s.equal_up_to_global_phase(&want), "{c:?} on {b}");
                assert!((s.norm() - 1.0).abs() < 1e-12);
            }
        }
    }
}
