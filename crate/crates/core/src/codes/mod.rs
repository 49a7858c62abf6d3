//! Binary linear and affine codes.

mod bounds;
mod enumerator;

pub use bounds::{check_value_count_bounds, enumerate_all_codes, ValueCountReport, MAX_EXHAUSTIVE_LENGTH};
pub use enumerator::{macwilliams_transform, WeightEnumerator};

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

/// Largest dimension whose codewords are listed one by one.
pub const MAX_ENUMERATION_DIM: usize = 28;

/// Dimensions above this are split across rayon tasks.
const PARALLEL_DIM: usize = 16;

/// A linear subspace of F₂^ℓ, stored by its RREF generator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearCode {
    generator: BitMatrix,
    pivots: Vec<usize>,
}

impl LinearCode {
    /// Code generated by linearly independent rows.
    pub fn new(generator: BitMatrix) -> Result<Self> {
        let rows = generator.nrows();
        let code = Self::span(&generator);
        if code.dimension() != rows {
            return Err(Error::DependentRows { rank: code.dimension(), rows });
        }
        Ok(code)
    }

    /// Row span of an arbitrary matrix.
    pub fn span(generator: &BitMatrix) -> Self {
        let (generator, pivots) = generator.rref();
        Self { generator, pivots }
    }

    /// `{0} ≤ F₂^length`; with `length = 0` this is the trivial code C₀.
    pub fn zero(length: usize) -> Self {
        Self { generator: BitMatrix::empty(length), pivots: Vec::new() }
    }

    pub fn full(length: usize) -> Self {
        Self { generator: BitMatrix::identity(length), pivots: (0..length).collect() }
    }

    pub fn repetition(length: usize) -> Self {
        Self::span(&BitMatrix::from_rows(length, vec![BitVector::ones(length)]).expect("row has code length"))
    }

    pub fn length(&self) -> usize {
        self.generator.ncols()
    }

    pub fn dimension(&self) -> usize {
        self.generator.nrows()
    }

    /// Canonical (RREF) generator matrix.
    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Generator of the dual code.
    pub fn parity_check(&self) -> BitMatrix {
        self.generator.nullspace_basis()
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode::span(&self.parity_check())
    }

    /// Membership via the parity-check product `H yᵀ = 0`.
    pub fn contains(&self, y: &BitVector) -> Result<bool> {
        if y.len() != self.length() {
            return Err(Error::DimensionMismatch { expected: self.length(), found: y.len() });
        }
        Ok(self.parity_check().matvec(y)?.is_zero())
    }

    /// Reduces `y` to the canonical representative of `y + C`.
    pub fn reduce(&self, y: &BitVector) -> BitVector {
        self.generator.reduce(&self.pivots, y)
    }

    /// Weight enumerator, through the dual when the code is more than half
    /// of the space.
    pub fn weight_enumerator(&self) -> Result<WeightEnumerator> {
        let d = self.dimension();
        let co = self.length() - d;
        if d <= co {
            check_enumeration_cap(d)?;
            Ok(WeightEnumerator::from_counts(weight_histogram(&self.generator, None)))
        } else {
            check_enumeration_cap(co)?;
            let dual = self.dual();
            let dual_w = WeightEnumerator::from_counts(weight_histogram(&dual.generator, None));
            macwilliams_transform(&dual_w, co)
        }
    }

    /// Enumerator computed by listing all 2^d codewords, no dual shortcut.
    pub fn weight_enumerator_direct(&self) -> Result<WeightEnumerator> {
        check_enumeration_cap(self.dimension())?;
        Ok(WeightEnumerator::from_counts(weight_histogram(&self.generator, None)))
    }

    /// All codewords in Gray-code order; only sensible for small dimension.
    pub fn codewords(&self) -> impl Iterator<Item = BitVector> + '_ {
        let rows = self.generator.rows();
        let mut cur = BitVector::zeros(self.length());
        (0u64..1u64 << rows.len()).map(move |i| {
            if i > 0 {
                cur.xor_assign(&rows[i.trailing_zeros() as usize]);
            }
            cur.clone()
        })
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearCode[len={}, dim={}]({:?})", self.length(), self.dimension(), self.generator)
    }
}

/// A coset `L + y₀` of a linear code.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineCode {
    linear: LinearCode,
    offset: BitVector,
}

impl AffineCode {
    /// The offset is replaced by the lexicographically smallest coset member
    /// (reading coordinates left to right).
    pub fn new(linear: LinearCode, offset: BitVector) -> Result<Self> {
        if offset.len() != linear.length() {
            return Err(Error::DimensionMismatch { expected: linear.length(), found: offset.len() });
        }
        let offset = linear.reduce(&offset);
        Ok(Self { linear, offset })
    }

    pub fn linear(&self) -> &LinearCode {
        &self.linear
    }

    pub fn offset(&self) -> &BitVector {
        &self.offset
    }

    pub fn length(&self) -> usize {
        self.linear.length()
    }

    pub fn contains(&self, y: &BitVector) -> Result<bool> {
        if y.len() != self.length() {
            return Err(Error::DimensionMismatch { expected: self.length(), found: y.len() });
        }
        let mut shifted = y.clone();
        shifted.xor_assign(&self.offset);
        self.linear.contains(&shifted)
    }

    /// Weights of the |L| coset elements; `A₀` is zero unless the coset is `L`.
    pub fn weight_enumerator(&self) -> Result<WeightEnumerator> {
        check_enumeration_cap(self.linear.dimension())?;
        Ok(WeightEnumerator::from_counts(weight_histogram(self.linear.generator(), Some(&self.offset))))
    }
}

fn check_enumeration_cap(d: usize) -> Result<()> {
    if d > MAX_ENUMERATION_DIM {
        return Err(Error::CapExceeded {
            what: "enumeration dimension",
            value: d as u64,
            max: MAX_ENUMERATION_DIM as u64,
        });
    }
    Ok(())
}

/// Histogram of weights over `offset + span(generator)`; the generator rows
/// must be independent. Large spans are split on their top rows and the
/// per-chunk histograms summed.
fn weight_histogram(generator: &BitMatrix, offset: Option<&BitVector>) -> Vec<u64> {
    let len = generator.ncols();
    let d = generator.nrows();
    let base = offset.cloned().unwrap_or_else(|| BitVector::zeros(len));
    if let (Some(rows), Some(start)) = (generator.to_u64_rows(), base.as_u64()) {
        let split = d.saturating_sub(PARALLEL_DIM);
        let (low, high) = rows.split_at(d - split);
        return (0u64..1u64 << split)
            .into_par_iter()
            .map(|chunk| {
                let mut hist = vec![0u64; len + 1];
                let mut cur = start;
                for (i, row) in high.iter().enumerate() {
                    if (chunk >> i) & 1 == 1 {
                        cur ^= row;
                    }
                }
                hist[cur.count_ones() as usize] += 1;
                for i in 1u64..(1u64 << low.len()) {
                    cur ^= low[i.trailing_zeros() as usize];
                    hist[cur.count_ones() as usize] += 1;
                }
                hist
            })
            .reduce(
                || vec![0u64; len + 1],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
    }
    let mut hist = vec![0u64; len + 1];
    let mut cur = base;
    hist[cur.weight()] += 1;
    for i in 1u64..(1u64 << d) {
        cur.xor_assign(generator.row(i.trailing_zeros() as usize));
        hist[cur.weight()] += 1;
    }
    hist
}
