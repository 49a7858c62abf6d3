//! Dense linear algebra over GF(2).
//!
//! Vectors are packed into 64-bit words. Coordinate `j` (0-indexed) lives in
//! bit `j % 64` of word `j / 64`, so the first coordinate of a vector written
//! left to right is the least significant bit of the first word. Every row
//! operation is a whole-word XOR.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A vector in F₂^len.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; words_for(len)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for w in v.words.iter_mut() {
            *w = u64::MAX;
        }
        v.clear_tail();
        v
    }

    /// Builds a vector of length `len <= 64` from the low bits of `bits`.
    pub fn from_u64(len: usize, bits: u64) -> Self {
        assert!(len <= WORD_BITS, "from_u64 needs len <= 64, got {len}");
        let mut v = Self { len, words: if len == 0 { Vec::new() } else { vec![bits] } };
        v.clear_tail();
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// The packed value when the vector fits in one word.
    pub fn as_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Standard inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        let ones: u32 = self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum();
        ones & 1 == 1
    }

    /// Appends coordinates to the end.
    pub fn extended(&self, tail: &[bool]) -> BitVector {
        let mut out = BitVector::zeros(self.len + tail.len());
        out.words[..self.words.len()].copy_from_slice(&self.words);
        for (i, &b) in tail.iter().enumerate() {
            if b {
                out.set(self.len + i, true);
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Indices of the nonzero coordinates, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// Parses a string of `0`/`1` characters, first character = coordinate 0.
impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut v = BitVector::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => return Err(Error::invalid(format!("unexpected character {other:?} in bit string"))),
            }
        }
        Ok(v)
    }
}

/// Row-major dense matrix over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

impl BitMatrix {
    pub fn empty(cols: usize) -> Self {
        Self { cols, rows: Vec::new() }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { cols, rows: vec![BitVector::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut r = BitVector::zeros(n);
                r.set(i, true);
                r
            })
            .collect();
        Self { cols: n, rows }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch { expected: cols, found: bad.len() });
        }
        Ok(Self { cols, rows })
    }

    /// Rows given as packed words; requires `cols <= 64`.
    pub fn from_u64_rows(cols: usize, rows: &[u64]) -> Self {
        Self { cols, rows: rows.iter().map(|&r| BitVector::from_u64(cols, r)).collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: row.len() });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    /// Packed rows, when every row fits in a single word.
    pub fn to_u64_rows(&self) -> Option<Vec<u64>> {
        if self.cols > WORD_BITS {
            return None;
        }
        Some(self.rows.iter().map(|r| r.as_u64().unwrap_or(0)).collect())
    }

    /// Reduced row echelon form with zero rows dropped, plus the pivot columns.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == rows.len() {
                break;
            }
            let Some(found) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, found);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        rows.truncate(rank);
        (BitMatrix { cols: self.cols, rows }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of `{ y : M yᵀ = 0 }`, one basis vector per free column.
    pub fn nullspace_basis(&self) -> BitMatrix {
        let (reduced, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let rows = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = BitVector::zeros(self.cols);
                v.set(free, true);
                for (row, &p) in reduced.rows.iter().zip(&pivots) {
                    if row.get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        BitMatrix { cols: self.cols, rows }
    }

    /// `M vᵀ` as a vector of length `nrows`.
    pub fn matvec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let bits: Vec<bool> = self.rows.iter().map(|r| r.dot(v)).collect();
        Ok(BitVector::from_bools(&bits))
    }

    /// Reduces `v` modulo the row span. Only meaningful on an RREF matrix
    /// with its pivot list; the result is zero in every pivot column.
    pub fn reduce(&self, pivots: &[usize], v: &BitVector) -> BitVector {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(pivots) {
            if out.get(p) {
                out.xor_assign(row);
            }
        }
        out
    }

    /// Matrix with `extra` zero columns appended on the right.
    pub fn with_zero_columns(&self, extra: usize) -> BitMatrix {
        let tail = vec![false; extra];
        BitMatrix { cols: self.cols + extra, rows: self.rows.iter().map(|r| r.extended(&tail)).collect() }
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix[{}x{}](", self.rows.len(), self.cols)?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(")")
    }
}

/// Number of `k`-dimensional subspaces of F₂ⁿ.
pub fn gaussian_binomial(n: usize, k: usize) -> Result<BigUint> {
    if k > n {
        return Err(Error::invalid(format!("gaussian binomial needs k <= n, got n={n}, k={k}")));
    }
    let one = BigUint::one();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= (&one << (n - i)) - &one;
        den *= (&one << (k - i)) - &one;
    }
    Ok(num / den)
}

/// Binomial coefficient C(n, k) as a big integer (0 when k > n).
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

/// Scatters the low bits of `value` onto the set bits of `mask` (bit-deposit).
pub(crate) fn deposit(mut value: u64, mut mask: u64) -> u64 {
    let mut out = 0;
    while mask != 0 {
        let low = mask & mask.wrapping_neg();
        if value & 1 == 1 {
            out |= low;
        }
        value >>= 1;
        mask &= mask - 1;
    }
    out
}

/// Canonical bases (RREF, packed rows) of every subspace of F₂ⁿ with a
/// fixed pivot-column set, in increasing order of the free-bit assignment.
pub(crate) fn subspaces_with_pivots(n: usize, pivots: &[usize]) -> impl Iterator<Item = Vec<u64>> + '_ {
    debug_assert!(n <= WORD_BITS);
    let pivot_mask: u64 = pivots.iter().fold(0, |m, &p| m | (1u64 << p));
    // Row i may be nonzero only in non-pivot columns to the right of its pivot.
    let free_masks: Vec<u64> = pivots
        .iter()
        .map(|&p| {
            let right = if p + 1 >= WORD_BITS { 0 } else { full_mask(n) & !((1u64 << (p + 1)) - 1) };
            right & !pivot_mask
        })
        .collect();
    let widths: Vec<u32> = free_masks.iter().map(|m| m.count_ones()).collect();
    let total: u32 = widths.iter().sum();
    (0..1u64 << total).map(move |assignment| {
        let mut shift = total;
        pivots
            .iter()
            .zip(free_masks.iter().zip(&widths))
            .map(|(&p, (&free, &w))| {
                // Earlier rows take the more significant assignment bits.
                shift -= w;
                let chunk = (assignment >> shift) & ((1u64 << w) - 1);
                (1u64 << p) | deposit(chunk, free)
            })
            .collect()
    })
}

/// Canonical bases of every `k`-dimensional subspace of F₂ⁿ (`n <= 63`),
/// ordered by pivot set and then free bits.
pub fn subspaces(n: usize, k: usize) -> impl Iterator<Item = Vec<u64>> {
    assert!(n < WORD_BITS, "packed subspace enumeration supports n <= 63");
    combinations(n, k).into_iter().flat_map(move |pivots| subspaces_with_pivots(n, &pivots).collect::<Vec<_>>())
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= WORD_BITS {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// All 2^k elements of the span of packed `basis` rows, in Gray-code order.
pub(crate) fn span_points(basis: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(1usize << basis.len());
    let mut cur = 0u64;
    out.push(cur);
    for i in 1u64..(1u64 << basis.len()) {
        cur ^= basis[i.trailing_zeros() as usize];
        out.push(cur);
    }
    out
}
