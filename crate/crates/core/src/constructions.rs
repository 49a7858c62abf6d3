//! Explicit `[k,1]`-avoiders: the code-based construction and its affine
//! variant, the hypergraph construction, and unions of symmetric
//! differences of `(n-k+1)`-flats.

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::codes::{AffineCode, LinearCode, WeightEnumerator};
use crate::error::{Error, Result};
use crate::geometry::{Flat, PointSet, MAX_SET_DIM};
use crate::gf2::BitVector;

/// Splits the `n = ℓ(k-1)` coordinates into ℓ consecutive blocks of `k-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignatureContext {
    k: usize,
    length: usize,
}

impl SignatureContext {
    pub fn new(k: usize, length: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::invalid(format!("the code-based construction needs k >= 3, got {k}")));
        }
        Ok(Self { k, length })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn n(&self) -> usize {
        self.length * (self.k - 1)
    }

    /// Coordinates of block `i` (0-indexed) as a mask; needs `n <= 64`.
    pub fn block_mask(&self, i: usize) -> u64 {
        let width = self.k - 1;
        ((1u64 << width) - 1) << (i * width)
    }

    /// Bit `i` is set iff block `i` of `x` is all ones.
    pub fn signature(&self, x: &BitVector) -> Result<BitVector> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: x.len() });
        }
        let width = self.k - 1;
        let bits: Vec<bool> = (0..self.length).map(|i| (i * width..(i + 1) * width).all(|j| x.get(j))).collect();
        Ok(BitVector::from_bools(&bits))
    }

    /// Packed signature of a point code; needs `n <= 64`.
    #[inline]
    pub fn signature_mask(&self, x: u64) -> u64 {
        let width = self.k - 1;
        let block = (1u64 << width) - 1;
        let mut sig = 0;
        for i in 0..self.length {
            if (x >> (i * width)) & block == block {
                sig |= 1 << i;
            }
        }
        sig
    }

    /// The flat `F_i` of points whose block `i` is all ones.
    pub fn block_flat(&self, i: usize) -> Result<Flat> {
        Flat::coordinate(self.n(), self.block_mask(i))
    }
}

fn check_n(ctx: &SignatureContext) -> Result<usize> {
    let n = ctx.n();
    if n > MAX_SET_DIM {
        return Err(Error::CapExceeded { what: "construction dimension", value: n as u64, max: MAX_SET_DIM as u64 });
    }
    Ok(n)
}

fn packed_parity_rows(code: &LinearCode) -> Vec<u64> {
    code.parity_check().to_u64_rows().expect("length <= n <= 24")
}

#[inline]
fn syndrome(rows: &[u64], y: u64) -> u64 {
    rows.iter().enumerate().fold(0, |acc, (i, r)| acc | (u64::from((r & y).count_ones() & 1) << i))
}

/// `S_C(k) = { x : s(x) ∉ C }` in F₂^(ℓ(k-1)).
pub fn code_based_set(code: &LinearCode, k: usize) -> Result<PointSet> {
    let ctx = SignatureContext::new(k, code.length())?;
    let n = check_n(&ctx)?;
    let rows = packed_parity_rows(code);
    PointSet::from_fn(n, |x| syndrome(&rows, ctx.signature_mask(x)) != 0)
}

/// `{ x : s(x) ∉ L + y₀ }` for an affine code.
pub fn affine_code_based_set(code: &AffineCode, k: usize) -> Result<PointSet> {
    let ctx = SignatureContext::new(k, code.length())?;
    let n = check_n(&ctx)?;
    let rows = packed_parity_rows(code.linear());
    let target = syndrome(&rows, code.offset().as_u64().expect("length <= 24"));
    PointSet::from_fn(n, |x| syndrome(&rows, ctx.signature_mask(x)) != target)
}

/// `2ⁿ - W(1, 2^(k-1) - 1)`, the predicted size of the code-based set.
pub fn predicted_size(w: &WeightEnumerator, k: usize) -> Result<BigUint> {
    let ctx = SignatureContext::new(k, w.length())?;
    let outside = w.evaluate(1, (1i64 << (k - 1)) - 1);
    let total = BigInt::one() << ctx.n();
    (total - outside).to_biguint().ok_or_else(|| Error::CorruptEnumerator("more words than points".into()))
}

/// The groups `T_r` from the parity-check rows: group `r` holds the block
/// flats `F_j` for every `j` in the support of row `r`. Their
/// [`flats_avoider`] equals [`code_based_set`].
pub fn parity_check_groups(code: &LinearCode, k: usize) -> Result<Vec<Vec<Flat>>> {
    let ctx = SignatureContext::new(k, code.length())?;
    code.parity_check().rows().iter().map(|row| row.support().map(|j| ctx.block_flat(j)).collect()).collect()
}

/// Groups for an affine code: rows whose syndrome bit of the offset is set
/// get the whole space added, written as the disjoint cosets of the
/// subspace spanned by the first `n-k+1` coordinates.
pub fn affine_parity_check_groups(code: &AffineCode, k: usize) -> Result<Vec<Vec<Flat>>> {
    let ctx = SignatureContext::new(k, code.length())?;
    let n = ctx.n();
    let parity = code.linear().parity_check();
    let whole_space: Vec<Flat> = {
        let dim = n + 1 - k;
        let basis: Vec<u64> = (0..dim).map(|i| 1u64 << i).collect();
        (0..1u64 << (k - 1)).map(|high| Flat::from_masks(n, &basis, high << dim)).collect::<Result<_>>()?
    };
    parity
        .rows()
        .iter()
        .map(|row| {
            let mut group: Vec<Flat> = row.support().map(|j| ctx.block_flat(j)).collect::<Result<_>>()?;
            if row.dot(code.offset()) {
                group.extend(whole_space.iter().cloned());
            }
            Ok(group)
        })
        .collect()
}

/// `∪_groups △_group F`, where every flat has dimension `n-k+1`
/// (points when `k = n + 1`).
pub fn flats_avoider(n: usize, k: usize, groups: &[Vec<Flat>]) -> Result<PointSet> {
    if k < 2 || k > n + 1 {
        return Err(Error::invalid(format!("flat avoiders need 2 <= k <= n + 1, got k={k}, n={n}")));
    }
    let mut out = PointSet::empty(n)?;
    for group in groups {
        let mut acc = PointSet::empty(n)?;
        for flat in group {
            if flat.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: flat.n() });
            }
            if flat.k() != n + 1 - k {
                return Err(Error::DimensionMismatch { expected: n + 1 - k, found: flat.k() });
            }
            for p in flat.points() {
                if acc.contains(p) {
                    acc.remove(p);
                } else {
                    acc.insert(p);
                }
            }
        }
        out = out.union(&acc)?;
    }
    Ok(out)
}

/// A hypergraph on vertices `1..=n`, edges stored as vertex bitmasks
/// (vertex `v` at bit `v-1`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<u64>,
}

impl Hypergraph {
    /// Edges are lists of 1-indexed vertices.
    pub fn new(n: usize, edges: &[Vec<usize>]) -> Result<Self> {
        if n > 63 {
            return Err(Error::CapExceeded { what: "hypergraph vertices", value: n as u64, max: 63 });
        }
        let mut masks = Vec::with_capacity(edges.len());
        for edge in edges {
            let mut mask = 0u64;
            for &v in edge {
                if v == 0 || v > n {
                    return Err(Error::invalid(format!("vertex {v} outside 1..={n}")));
                }
                if mask & (1 << (v - 1)) != 0 {
                    return Err(Error::invalid(format!("vertex {v} repeated in edge {edge:?}")));
                }
                mask |= 1 << (v - 1);
            }
            if masks.contains(&mask) {
                return Err(Error::invalid(format!("duplicate edge {edge:?}")));
            }
            masks.push(mask);
        }
        Ok(Self { n, edges: masks })
    }

    /// Graph from a bitmask over the pairs `(i, j)`, `i < j`, in
    /// lexicographic order.
    pub fn graph_from_pair_mask(n: usize, mask: u64) -> Result<Self> {
        let pairs = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| vec![i, j]));
        let edges: Vec<Vec<usize>> = pairs.enumerate().filter(|(b, _)| (mask >> b) & 1 == 1).map(|(_, e)| e).collect();
        Self::new(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_masks(&self) -> &[u64] {
        &self.edges
    }

    /// 1-indexed vertex lists.
    pub fn edges(&self) -> Vec<Vec<usize>> {
        self.edges.iter().map(|&m| (0..self.n).filter(|&v| (m >> v) & 1 == 1).map(|v| v + 1).collect()).collect()
    }

    /// Largest edge size.
    pub fn rank(&self) -> usize {
        self.edges.iter().map(|e| e.count_ones() as usize).max().unwrap_or(0)
    }

    #[inline]
    fn is_independent(&self, w: u64) -> bool {
        self.edges.iter().all(|&e| w & e != e)
    }
}

pub const MAX_INDEPENDENT_SCAN: usize = 20;

/// Number of vertex subsets containing no edge entirely.
pub fn count_independent_sets(h: &Hypergraph) -> Result<BigUint> {
    if h.n > MAX_INDEPENDENT_SCAN {
        return Err(Error::CapExceeded {
            what: "independent-set scan vertices",
            value: h.n as u64,
            max: MAX_INDEPENDENT_SCAN as u64,
        });
    }
    Ok(BigUint::from((0..1u64 << h.n).filter(|&w| h.is_independent(w)).count()))
}

/// `S_H = ∪_e { x : x_v = 1 ∀ v ∈ e }`; its complement is the set of
/// characteristic vectors of independent sets.
pub fn hypergraph_set(h: &Hypergraph, k: usize) -> Result<PointSet> {
    if k < 3 {
        return Err(Error::invalid(format!("the hypergraph construction needs k >= 3, got {k}")));
    }
    if h.rank() > k - 1 {
        return Err(Error::invalid(format!("hypergraph rank {} exceeds k - 1 = {}", h.rank(), k - 1)));
    }
    PointSet::from_fn(h.n, |x| !h.is_independent(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::enumerate_all_codes;
    use crate::geometry::{is_avoider, DEFAULT_FLAT_BUDGET};
    use crate::gf2::BitMatrix;
    use std::collections::{BTreeSet, HashSet};

    fn bits(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    fn code(rows: &[&str]) -> LinearCode {
        let cols = rows[0].len();
        LinearCode::new(BitMatrix::from_rows(cols, rows.iter().map(|r| bits(r)).collect()).unwrap()).unwrap()
    }

    #[test]
    fn signature_examples() {
        let ctx = SignatureContext::new(3, 2).unwrap();
        assert_eq!(ctx.signature(&bits("1111")).unwrap(), bits("11"));
        assert_eq!(ctx.signature(&bits("0000")).unwrap(), bits("00"));
        assert_eq!(ctx.signature(&bits("1101")).unwrap(), bits("10"));
        assert!(ctx.signature(&bits("110")).is_err());
        // x = (1,1,0,1) is 1 + 2 + 8 = 11
        assert_eq!(ctx.signature_mask(11), 0b01);
        assert!(SignatureContext::new(2, 2).is_err());
    }

    #[test]
    fn zero_code_gives_two_quarter_spaces() {
        let s = code_based_set(&LinearCode::zero(2), 3).unwrap();
        let f1 = Flat::coordinate(4, 0b0011).unwrap().to_point_set().unwrap();
        let f2 = Flat::coordinate(4, 0b1100).unwrap().to_point_set().unwrap();
        assert_eq!(s, f1.union(&f2).unwrap());
        assert_eq!(s.len(), 7);
    }

    #[test]
    fn full_code_gives_empty_set() {
        for k in 3..=5 {
            assert!(code_based_set(&LinearCode::full(3), k).unwrap().is_empty());
        }
    }

    #[test]
    fn repetition_code_gives_symmetric_difference() {
        let rep = LinearCode::repetition(2);
        let s = code_based_set(&rep, 3).unwrap();
        assert_eq!(s.len(), 6);
        assert_eq!(predicted_size(&rep.weight_enumerator().unwrap(), 3).unwrap(), BigUint::from(6u32));
        let f1 = Flat::coordinate(4, 0b0011).unwrap();
        let f2 = Flat::coordinate(4, 0b1100).unwrap();
        assert_eq!(s, flats_avoider(4, 3, &[vec![f1.clone(), f2.clone()]]).unwrap());
        assert_eq!(s, f1.to_point_set().unwrap().symmetric_difference(&f2.to_point_set().unwrap()).unwrap());
        assert!(is_avoider(&s, 3, 1, DEFAULT_FLAT_BUDGET).unwrap());
    }

    #[test]
    fn construction_rejects_bad_parameters() {
        assert!(code_based_set(&LinearCode::zero(2), 2).is_err());
        assert!(matches!(code_based_set(&LinearCode::zero(13), 3), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn size_formula_small_codes() {
        for l in 1..=3 {
            for c in enumerate_all_codes(l).unwrap() {
                let w = c.weight_enumerator().unwrap();
                for k in [3, 4] {
                    let s = code_based_set(&c, k).unwrap();
                    assert_eq!(BigUint::from(s.len()), predicted_size(&w, k).unwrap(), "{c:?} k={k}");
                }
            }
        }
    }

    #[test]
    fn four_three_code_size() {
        let c = code(&["1001", "0101", "1110"]);
        let w = c.weight_enumerator().unwrap();
        let s = code_based_set(&c, 3).unwrap();
        assert_eq!(BigUint::from(s.len()), BigUint::from(256u32) - w.evaluate(1, 3).to_biguint().unwrap());
        assert_eq!(BigUint::from(s.len()), predicted_size(&w, 3).unwrap());
    }

    #[test]
    fn parity_check_decomposition() {
        for l in 1..=3 {
            for c in enumerate_all_codes(l).unwrap() {
                for k in [3, 4] {
                    let n = l * (k - 1);
                    let groups = parity_check_groups(&c, k).unwrap();
                    assert_eq!(flats_avoider(n, k, &groups).unwrap(), code_based_set(&c, k).unwrap());
                }
            }
        }
    }

    #[test]
    fn affine_examples() {
        let rep = LinearCode::repetition(2);
        let zero_offset = AffineCode::new(rep.clone(), bits("00")).unwrap();
        assert_eq!(affine_code_based_set(&zero_offset, 3).unwrap(), code_based_set(&rep, 3).unwrap());

        // L = {0}, y₀ = 1…1: only the all-ones point has the all-ones signature
        for l in 1..=3 {
            let a = AffineCode::new(LinearCode::zero(l), BitVector::ones(l)).unwrap();
            let s = affine_code_based_set(&a, 3).unwrap();
            assert_eq!(s.len(), (1u64 << (2 * l)) - 1);
            assert!(!s.contains((1u64 << (2 * l)) - 1));
        }

        let a = AffineCode::new(LinearCode::zero(2), bits("00")).unwrap();
        assert_eq!(affine_code_based_set(&a, 3).unwrap().len(), 7);
    }

    #[test]
    fn affine_size_formula_and_decomposition() {
        for l in 1..=3 {
            for c in enumerate_all_codes(l).unwrap() {
                for y in 0..1u64 << l {
                    let a = AffineCode::new(c.clone(), BitVector::from_u64(l, y)).unwrap();
                    let s = affine_code_based_set(&a, 3).unwrap();
                    let w = a.weight_enumerator().unwrap();
                    assert_eq!(BigUint::from(s.len()), predicted_size(&w, 3).unwrap());
                    let groups = affine_parity_check_groups(&a, 3).unwrap();
                    assert_eq!(flats_avoider(2 * l, 3, &groups).unwrap(), s);
                }
            }
        }
    }

    #[test]
    fn flats_avoider_examples() {
        let f = Flat::coordinate(4, 0b0011).unwrap();
        assert_eq!(flats_avoider(4, 3, &[vec![f.clone()]]).unwrap(), f.to_point_set().unwrap());
        let g = Flat::from_masks(4, &[0b0100, 0b1000], 0b0001).unwrap();
        let union = f.to_point_set().unwrap().union(&g.to_point_set().unwrap()).unwrap();
        assert_eq!(flats_avoider(4, 3, &[vec![f.clone(), g]]).unwrap(), union);
        let line = Flat::from_masks(4, &[1], 0).unwrap();
        assert!(matches!(flats_avoider(4, 3, &[vec![line]]), Err(Error::DimensionMismatch { .. })));
        assert!(flats_avoider(4, 1, &[]).is_err());
        assert!(flats_avoider(4, 6, &[]).is_err());
        assert!(flats_avoider(4, 2, &[]).unwrap().is_empty());
    }

    fn brute_independent(h: &Hypergraph) -> u64 {
        let edges = h.edges();
        (0..1u64 << h.n())
            .filter(|w| !edges.iter().any(|e| e.iter().all(|&v| (w >> (v - 1)) & 1 == 1)))
            .count() as u64
    }

    #[test]
    fn independent_set_examples() {
        assert_eq!(count_independent_sets(&Hypergraph::new(4, &[]).unwrap()).unwrap(), BigUint::from(16u32));
        assert_eq!(count_independent_sets(&Hypergraph::new(2, &[vec![1, 2]]).unwrap()).unwrap(), BigUint::from(3u32));
        let path = Hypergraph::new(3, &[vec![1, 2], vec![2, 3]]).unwrap();
        assert_eq!(count_independent_sets(&path).unwrap(), BigUint::from(5u32));
        assert_eq!(brute_independent(&path), 5);
        assert!(count_independent_sets(&Hypergraph::new(21, &[]).unwrap()).is_err());
    }

    #[test]
    fn hypergraph_validation() {
        assert!(Hypergraph::new(3, &[vec![0, 1]]).is_err());
        assert!(Hypergraph::new(3, &[vec![1, 4]]).is_err());
        assert!(Hypergraph::new(3, &[vec![1, 2], vec![2, 1]]).is_err());
        assert!(Hypergraph::new(3, &[vec![1, 1]]).is_err());
        let h = Hypergraph::new(4, &[vec![1, 2, 3]]).unwrap();
        assert_eq!(h.rank(), 3);
        assert!(hypergraph_set(&h, 3).is_err());
        assert!(hypergraph_set(&h, 4).is_ok());
    }

    #[test]
    fn hypergraph_set_examples() {
        assert!(hypergraph_set(&Hypergraph::new(4, &[]).unwrap(), 3).unwrap().is_empty());
        let edge = Hypergraph::new(4, &[vec![1, 2]]).unwrap();
        let s = hypergraph_set(&edge, 3).unwrap();
        assert_eq!(s, Flat::coordinate(4, 0b0011).unwrap().to_point_set().unwrap());
        assert_eq!(s.len(), 4);

        let triangle = Hypergraph::new(3, &[vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap();
        let s = hypergraph_set(&triangle, 3).unwrap();
        assert_eq!(count_independent_sets(&triangle).unwrap(), BigUint::from(4u32));
        assert_eq!(s.points().collect::<Vec<_>>(), vec![3, 5, 6, 7]);
    }

    #[test]
    fn pair_mask_graphs() {
        let g = Hypergraph::graph_from_pair_mask(3, 0b101).unwrap();
        assert_eq!(g.edges(), vec![vec![1, 2], vec![2, 3]]);
    }

    /// Unions of symmetric differences of hyperplanes (k = 2) only reach the
    /// sizes 0, 2ⁿ - 2^(n-c) for 1 <= c <= n, and 2ⁿ.
    #[test]
    fn halfspace_union_sizes() {
        for n in 1..=4usize {
            let halfspaces: Vec<u64> = crate::geometry::enumerate_flats(n, n - 1, DEFAULT_FLAT_BUDGET)
                .unwrap()
                .map(|f| f.points().iter().fold(0u64, |m, p| m | 1 << p))
                .collect();
            let full = (1u64 << (1 << n)) - 1;
            // symmetric-difference closure
            let mut sym: HashSet<u64> = HashSet::from([0]);
            loop {
                let next: HashSet<u64> = sym.iter().flat_map(|&s| halfspaces.iter().map(move |&h| s ^ h)).collect();
                let grown: HashSet<u64> = sym.union(&next).copied().collect();
                if grown.len() == sym.len() {
                    break;
                }
                sym = grown;
            }
            assert!(sym.contains(&full));
            // union closure
            let mut unions: HashSet<u64> = sym.clone();
            loop {
                let next: HashSet<u64> = unions.iter().flat_map(|&u| sym.iter().map(move |&t| u | t)).collect();
                let grown: HashSet<u64> = unions.union(&next).copied().collect();
                if grown.len() == unions.len() {
                    break;
                }
                unions = grown;
            }
            let sizes: BTreeSet<u64> = unions.iter().map(|u| u64::from(u.count_ones())).collect();
            let mut want: BTreeSet<u64> = (1..=n).map(|c| (1u64 << n) - (1u64 << (n - c))).collect();
            want.insert(0);
            want.insert(1 << n);
            assert_eq!(sizes, want, "n={n}");
        }
    }
}
