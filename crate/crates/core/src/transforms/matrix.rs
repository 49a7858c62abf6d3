use std::collections::HashSet;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;

use super::{Letter, TransformWord};
use crate::codes::{LinearCode, WeightEnumerator};
use crate::error::{Error, Result};

/// Row-major 2×2 integer matrix `[[α, β], [γ, δ]]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub alpha: BigInt,
    pub beta: BigInt,
    pub gamma: BigInt,
    pub delta: BigInt,
}

impl Mat2 {
    pub fn new(alpha: impl Into<BigInt>, beta: impl Into<BigInt>, gamma: impl Into<BigInt>, delta: impl Into<BigInt>) -> Self {
        Self { alpha: alpha.into(), beta: beta.into(), gamma: gamma.into(), delta: delta.into() }
    }

    pub fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    /// `diag(9, 1)`, acting on `(W(1,3), W(3,1))` like `a`.
    pub fn letter_a() -> Self {
        Self::new(9, 0, 0, 1)
    }

    /// `[[10, 6], [6, 10]]`, acting like `b`.
    pub fn letter_b() -> Self {
        Self::new(10, 6, 6, 10)
    }

    pub fn of_letter(l: Letter) -> Self {
        match l {
            Letter::A => Self::letter_a(),
            Letter::B => Self::letter_b(),
        }
    }

    pub fn det(&self) -> BigInt {
        &self.alpha * &self.delta - &self.beta * &self.gamma
    }

    pub fn apply(&self, v: &VPair) -> VPair {
        VPair {
            w13: &self.alpha * &v.w13 + &self.beta * &v.w31,
            w31: &self.gamma * &v.w13 + &self.delta * &v.w31,
        }
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            alpha: &self.alpha * &rhs.alpha + &self.beta * &rhs.gamma,
            beta: &self.alpha * &rhs.beta + &self.beta * &rhs.delta,
            gamma: &self.gamma * &rhs.alpha + &self.delta * &rhs.gamma,
            delta: &self.gamma * &rhs.beta + &self.delta * &rhs.delta,
        }
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.alpha, self.beta, self.gamma, self.delta)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `(W(1, 3), W(3, 1))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VPair {
    pub w13: BigInt,
    pub w31: BigInt,
}

impl VPair {
    pub fn new(w13: impl Into<BigInt>, w31: impl Into<BigInt>) -> Self {
        Self { w13: w13.into(), w31: w31.into() }
    }

    /// The pair of the trivial code of length 0.
    pub fn trivial() -> Self {
        Self::new(1, 1)
    }
}

/// `M_{σ₁}···M_{σᵣ}`.
pub fn word_matrix(f: &TransformWord) -> Mat2 {
    f.letters().iter().fold(Mat2::identity(), |acc, &l| &acc * &Mat2::of_letter(l))
}

pub fn v_of_enumerator(w: &WeightEnumerator) -> VPair {
    VPair { w13: w.evaluate(1, 3), w31: w.evaluate(3, 1) }
}

/// Computed from the code's weight enumerator, so the enumeration caps
/// apply. For codes built by words from a known seed, use
/// `word_matrix(f).apply(&seed_pair)` instead.
pub fn v_of_code(c: &LinearCode) -> Result<VPair> {
    Ok(v_of_enumerator(&c.weight_enumerator()?))
}

pub const MAX_FREENESS_LENGTH: usize = 14;

/// Whether, for every `r <= r_max`, the `2^r` word matrices of length `r`
/// are pairwise distinct.
pub fn check_free_distinctness(r_max: usize) -> Result<bool> {
    if r_max > MAX_FREENESS_LENGTH {
        return Err(Error::CapExceeded {
            what: "freeness word length",
            value: r_max as u64,
            max: MAX_FREENESS_LENGTH as u64,
        });
    }
    let (ma, mb) = (Mat2::letter_a(), Mat2::letter_b());
    let mut layer = vec![Mat2::identity()];
    for _ in 1..=r_max {
        layer = layer.iter().flat_map(|m| [m * &ma, m * &mb]).collect();
        let distinct: HashSet<&Mat2> = layer.iter().collect();
        if distinct.len() != layer.len() {
            return Ok(false);
        }
    }
    Ok(true)
}
