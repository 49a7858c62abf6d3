//! Point sets in F₂ⁿ, k-flats and the brute-force profile scans.
//!
//! A point `x = (x₁, …, x_n)` is encoded as the integer `Σ x_j 2^(j-1)`.
//! Flats are enumerated canonically: an RREF basis of the direction space
//! plus the coset representative that is zero in every pivot coordinate.
//! Scans are partitioned by pivot-column set and merged with associative
//! operations, so results do not depend on how rayon schedules the work.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix, BitVector};

/// Largest ambient dimension for a membership bitmap.
pub const MAX_SET_DIM: usize = 24;

/// Default cap on the number of flats a scan may visit.
pub const DEFAULT_FLAT_BUDGET: u64 = 1 << 28;

/// A subset of F₂ⁿ as a 2ⁿ-bit membership bitmap.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    n: usize,
    words: Vec<u64>,
}

impl PointSet {
    pub fn empty(n: usize) -> Result<Self> {
        check_set_dim(n)?;
        Ok(Self { n, words: vec![0; words_for_points(n)] })
    }

    pub fn full(n: usize) -> Result<Self> {
        let mut s = Self::empty(n)?;
        s.words.iter_mut().for_each(|w| *w = u64::MAX);
        s.clear_tail();
        Ok(s)
    }

    pub fn from_points(n: usize, points: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut s = Self::empty(n)?;
        for p in points {
            if p >= s.universe() {
                return Err(Error::invalid(format!("point {p} outside F2^{n}")));
            }
            s.insert(p);
        }
        Ok(s)
    }

    /// Membership decided per point; words of the bitmap are filled in parallel.
    pub fn from_fn(n: usize, member: impl Fn(u64) -> bool + Sync) -> Result<Self> {
        check_set_dim(n)?;
        let universe = 1u64 << n;
        let words = (0..words_for_points(n) as u64)
            .into_par_iter()
            .map(|w| {
                let base = w * 64;
                let top = (base + 64).min(universe);
                (base..top).fold(0u64, |acc, p| if member(p) { acc | 1 << (p - base) } else { acc })
            })
            .collect();
        Ok(Self { n, words })
    }

    /// Bitmap words, point `p` at bit `p % 64` of word `p / 64`.
    pub fn from_words(n: usize, words: Vec<u64>) -> Result<Self> {
        check_set_dim(n)?;
        if words.len() != words_for_points(n) {
            return Err(Error::DimensionMismatch { expected: words_for_points(n), found: words.len() });
        }
        let mut s = Self { n, words };
        let before = s.words.clone();
        s.clear_tail();
        if s.words != before {
            return Err(Error::invalid(format!("bitmap has bits beyond point {}", s.universe() - 1)));
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 2ⁿ.
    pub fn universe(&self) -> u64 {
        1u64 << self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, p: u64) -> bool {
        (self.words[(p >> 6) as usize] >> (p & 63)) & 1 == 1
    }

    pub fn insert(&mut self, p: u64) {
        self.words[(p >> 6) as usize] |= 1 << (p & 63);
    }

    pub fn remove(&mut self, p: u64) {
        self.words[(p >> 6) as usize] &= !(1 << (p & 63));
    }

    pub fn len(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn points(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as u64;
                w &= w - 1;
                Some(i as u64 * 64 + b)
            })
        })
    }

    pub fn complement(&self) -> PointSet {
        let mut out = Self { n: self.n, words: self.words.iter().map(|w| !w).collect() };
        out.clear_tail();
        out
    }

    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &PointSet) -> Result<PointSet> {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn symmetric_difference(&self, other: &PointSet) -> Result<PointSet> {
        self.zip_with(other, |a, b| a ^ b)
    }

    fn zip_with(&self, other: &PointSet, op: impl Fn(u64, u64) -> u64) -> Result<PointSet> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(Self { n: self.n, words: self.words.iter().zip(&other.words).map(|(&a, &b)| op(a, b)).collect() })
    }

    fn clear_tail(&mut self) {
        if self.n < 6 {
            self.words[0] &= (1u64 << (1u64 << self.n)) - 1;
        }
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSet[n={}]", self.n)?;
        f.debug_set().entries(self.points()).finish()
    }
}

fn words_for_points(n: usize) -> usize {
    (1usize << n).div_ceil(64)
}

fn check_set_dim(n: usize) -> Result<()> {
    if n > MAX_SET_DIM {
        return Err(Error::CapExceeded { what: "set dimension", value: n as u64, max: MAX_SET_DIM as u64 });
    }
    Ok(())
}

/// Largest ambient dimension for a packed flat.
pub const MAX_FLAT_DIM: usize = 63;

/// A k-dimensional affine subspace of F₂ⁿ in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Flat {
    n: usize,
    basis: Vec<u64>,
    rep: u64,
}

impl Flat {
    /// The flat `point + span(directions)`. Dependent direction rows are
    /// allowed; the dimension is the rank.
    pub fn new(n: usize, directions: &BitMatrix, point: &BitVector) -> Result<Self> {
        if directions.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: directions.ncols() });
        }
        if point.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: point.len() });
        }
        check_flat_dim(n)?;
        let rows = directions.to_u64_rows().expect("n <= 63");
        Self::from_masks(n, &rows, point.as_u64().expect("n <= 63"))
    }

    /// Packed form of [`Flat::new`].
    pub fn from_masks(n: usize, directions: &[u64], point: u64) -> Result<Self> {
        check_flat_dim(n)?;
        let full = gf2::full_mask(n);
        if directions.iter().any(|&d| d & !full != 0) || point & !full != 0 {
            return Err(Error::invalid(format!("flat coordinates exceed n = {n}")));
        }
        let (reduced, pivots) = BitMatrix::from_u64_rows(n, directions).rref();
        let basis = reduced.to_u64_rows().expect("n <= 63");
        let rep = reduce_rep(&basis, &pivots, point);
        Ok(Self { n, basis, rep })
    }

    /// `{x : x_v = 1 for every v in ones}`, coordinates 0-indexed in the mask.
    pub fn coordinate(n: usize, ones: u64) -> Result<Self> {
        check_flat_dim(n)?;
        let free = gf2::full_mask(n) & !ones;
        let basis: Vec<u64> = (0..n).filter(|&i| (free >> i) & 1 == 1).map(|i| 1u64 << i).collect();
        Self::from_masks(n, &basis, ones)
    }

    /// Built straight from an enumerated canonical basis.
    fn from_canonical(n: usize, basis: Vec<u64>, rep: u64) -> Self {
        Self { n, basis, rep }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> BitMatrix {
        BitMatrix::from_u64_rows(self.n, &self.basis)
    }

    pub fn rep(&self) -> BitVector {
        BitVector::from_u64(self.n, self.rep)
    }

    pub fn basis_masks(&self) -> &[u64] {
        &self.basis
    }

    pub fn rep_mask(&self) -> u64 {
        self.rep
    }

    /// The 2^k point codes, in Gray-code order from the representative.
    pub fn points(&self) -> Vec<u64> {
        gf2::span_points(&self.basis).into_iter().map(|p| p ^ self.rep).collect()
    }

    pub fn contains(&self, p: u64) -> bool {
        let pivots: Vec<usize> = self.basis.iter().map(|b| b.trailing_zeros() as usize).collect();
        reduce_rep(&self.basis, &pivots, p) == self.rep
    }

    pub fn to_point_set(&self) -> Result<PointSet> {
        PointSet::from_points(self.n, self.points())
    }
}

impl fmt::Debug for Flat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Flat[n={}, k={}](rep={}, basis={:?})", self.n, self.k(), self.rep(), self.basis())
    }
}

fn check_flat_dim(n: usize) -> Result<()> {
    if n > MAX_FLAT_DIM {
        return Err(Error::CapExceeded { what: "flat dimension", value: n as u64, max: MAX_FLAT_DIM as u64 });
    }
    Ok(())
}

fn reduce_rep(basis: &[u64], pivots: &[usize], mut p: u64) -> u64 {
    for (&row, &piv) in basis.iter().zip(pivots) {
        if (p >> piv) & 1 == 1 {
            p ^= row;
        }
    }
    p
}

/// Number of k-flats in F₂ⁿ: `2^(n-k) · [n k]₂`.
pub fn flat_count(n: usize, k: usize) -> Result<BigUint> {
    Ok(gf2::gaussian_binomial(n, k)? << (n - k))
}

fn check_budget(n: usize, k: usize, budget: u64) -> Result<u64> {
    if k > n {
        return Err(Error::invalid(format!("flat dimension k = {k} exceeds n = {n}")));
    }
    check_flat_dim(n)?;
    let count = flat_count(n, k)?;
    if count > BigUint::from(budget) {
        return Err(Error::BudgetExceeded { required: count.to_string(), budget });
    }
    Ok(u64::try_from(count).expect("within a u64 budget"))
}

/// Every k-flat of F₂ⁿ exactly once, ordered by (pivot set, free basis bits,
/// representative).
pub fn enumerate_flats(n: usize, k: usize, budget: u64) -> Result<impl Iterator<Item = Flat>> {
    check_budget(n, k, budget)?;
    let full = gf2::full_mask(n);
    Ok(gf2::combinations(n, k).into_iter().flat_map(move |pivots| {
        let pivot_mask = pivots.iter().fold(0u64, |m, &p| m | 1 << p);
        let free = full & !pivot_mask;
        gf2::subspaces_with_pivots(n, &pivots)
            .flat_map(move |basis| submasks(free).map(move |rep| Flat::from_canonical(n, basis.clone(), rep)))
            .collect::<Vec<_>>()
    }))
}

/// All submasks of `mask` in increasing order.
fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        let after = cur.wrapping_sub(mask) & mask;
        next = (after != 0).then_some(after);
        Some(cur)
    })
}

/// Calls `visit(offsets, rep)` for every flat whose direction space has
/// the given pivot set; `offsets` are the direction-space points. Returns
/// false if `visit` asked to stop.
fn scan_class(n: usize, pivots: &[usize], mut visit: impl FnMut(&[u64], u64) -> bool) -> bool {
    let pivot_mask = pivots.iter().fold(0u64, |m, &p| m | 1 << p);
    let free = gf2::full_mask(n) & !pivot_mask;
    for basis in gf2::subspaces_with_pivots(n, pivots) {
        let offsets = gf2::span_points(&basis);
        for rep in submasks(free) {
            if !visit(&offsets, rep) {
                return false;
            }
        }
    }
    true
}

#[inline]
fn count_on(s: &PointSet, offsets: &[u64], rep: u64) -> usize {
    offsets.iter().filter(|&&o| s.contains(o ^ rep)).count()
}

/// The k-profile: the set of all sizes `|S ∩ F|` over k-flats `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub k: usize,
    pub sizes: BTreeSet<usize>,
    pub flats_scanned: u64,
}

impl Profile {
    pub fn contains(&self, t: usize) -> bool {
        self.sizes.contains(&t)
    }

    pub fn is_even(&self) -> bool {
        self.sizes.iter().all(|s| s % 2 == 0)
    }

    pub fn max(&self) -> Option<usize> {
        self.sizes.last().copied()
    }
}

pub fn profile(s: &PointSet, k: usize, budget: u64) -> Result<Profile> {
    let flats_scanned = check_budget(s.n, k, budget)?;
    let seen = gf2::combinations(s.n, k)
        .into_par_iter()
        .map(|pivots| {
            let mut seen = vec![false; (1usize << k) + 1];
            scan_class(s.n, &pivots, |offsets, rep| {
                seen[count_on(s, offsets, rep)] = true;
                true
            });
            seen
        })
        .reduce(
            || vec![false; (1usize << k) + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x |= y);
                a
            },
        );
    let sizes = seen.iter().enumerate().filter(|(_, &hit)| hit).map(|(i, _)| i).collect();
    Ok(Profile { k, sizes, flats_scanned })
}

/// Whether some k-flat satisfies `hit(|S ∩ F|)`; stops early on success.
fn any_flat(s: &PointSet, k: usize, budget: u64, hit: impl Fn(usize) -> bool + Sync) -> Result<bool> {
    check_budget(s.n, k, budget)?;
    Ok(gf2::combinations(s.n, k)
        .into_par_iter()
        .any(|pivots| !scan_class(s.n, &pivots, |offsets, rep| !hit(count_on(s, offsets, rep)))))
}

/// True iff no k-flat meets `s` in exactly `t` points.
pub fn is_avoider(s: &PointSet, k: usize, t: usize, budget: u64) -> Result<bool> {
    check_t(k, t)?;
    Ok(!any_flat(s, k, budget, |c| c == t)?)
}

/// True iff every k-flat meets `s` in at most `c` points.
pub fn is_evasive(s: &PointSet, k: usize, c: usize, budget: u64) -> Result<bool> {
    Ok(!any_flat(s, k, budget, |count| count > c)?)
}

pub(crate) fn check_t(k: usize, t: usize) -> Result<()> {
    if k >= 63 || t > 1usize << k {
        return Err(Error::invalid(format!("t = {t} outside [0, 2^{k}]")));
    }
    Ok(())
}
