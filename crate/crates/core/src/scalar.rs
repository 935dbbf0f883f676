// Copyright 2026 The tripleforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Scalar abstractions shared by the dense oracle and the distribution code.
//!
//! Amplitudes are generic over [`Real`] (`f32` or `f64`); branch weights are
//! generic over [`Weight`], which covers exact rationals as well as floats.

use num_rational::Ratio;
use num_traits::{Float, FromPrimitive, Num, Signed};
use std::fmt::Debug;

/// Floating point type backing dense amplitudes.
pub trait Real: Float + FromPrimitive + Debug + Send + Sync + 'static {
    /// Slack used when comparing states and probabilities.
    fn tolerance() -> Self;

    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal fits the scalar type")
    }
}

impl Real for f64 {
    fn tolerance() -> Self {
        1e-8
    }
}

impl Real for f32 {
    fn tolerance() -> Self {
        1e-4
    }
}

/// Probability weight of a branch or distribution entry.
pub trait Weight: Num + Signed + Clone + PartialOrd + Debug {
    /// `2^-k`.
    fn dyadic(k: u32) -> Self {
        let two = Self::one() + Self::one();
        let mut w = Self::one();
        for _ in 0..k {
            w = w / two.clone();
        }
        w
    }

    fn half() -> Self {
        Self::dyadic(1)
    }

    /// Whether two weights agree; exact for rationals.
    fn same(&self, other: &Self) -> bool;
}

impl Weight for Ratio<i64> {
    fn same(&self, other: &Self) -> bool {
        self == other
    }
}

impl Weight for f64 {
    fn same(&self, other: &Self) -> bool {
        (self - other).abs() <= 1e-12
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_weights() {
        assert_eq!(<Ratio<i64>>::dyadic(3), Ratio::new(1, 8));
        assert!(<f64 as Weight>::dyadic(2).same(&0.25));
        assert_eq!(<Ratio<i64>>::dyadic(0), Ratio::from_integer(1));
    }
}
