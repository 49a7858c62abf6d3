//! Brute-force reference computations that share no code with the library.
//! Vectors of F₂^ℓ are `u64` masks with coordinate `j` (0-indexed) at bit `j`.

#![allow(dead_code)]

use std::collections::HashSet;

/// Every XOR combination of `rows`.
pub fn span(rows: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64];
    for &r in rows {
        let shifted: Vec<u64> = out.iter().map(|w| w ^ r).collect();
        out.extend(shifted);
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// `counts[w]` = number of words of weight `w`.
pub fn weight_counts(words: &[u64], len: usize) -> Vec<u64> {
    let mut counts = vec![0u64; len + 1];
    for w in words {
        counts[w.count_ones() as usize] += 1;
    }
    counts
}

/// `Σ A_w a^w b^(ℓ-w)`.
pub fn evaluate(counts: &[u64], a: i128, b: i128) -> i128 {
    let l = counts.len() - 1;
    counts.iter().enumerate().map(|(w, &c)| c as i128 * a.pow(w as u32) * b.pow((l - w) as u32)).sum()
}

/// All linear subspaces of F₂^ℓ as sorted word lists, by testing every
/// subset of the `2^ℓ` vectors for closure. Only feasible for `ℓ <= 4`.
pub fn all_subspaces(l: usize) -> Vec<Vec<u64>> {
    assert!(l <= 4);
    let size = 1usize << l;
    let mut out = Vec::new();
    for subset in 0u64..1 << size {
        if subset & 1 == 0 {
            continue;
        }
        let members: Vec<u64> = (0..size as u64).filter(|v| (subset >> v) & 1 == 1).collect();
        let closed = members.iter().all(|&x| members.iter().all(|&y| (subset >> (x ^ y)) & 1 == 1));
        if closed {
            out.push(members);
        }
    }
    out
}

/// A basis picked greedily from a list of words.
pub fn basis_of(words: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for &w in words {
        if !span(&basis).contains(&w) {
            basis.push(w);
        }
    }
    basis
}

/// Words of the dual of the code with these words, by testing every vector.
pub fn dual_words(words: &[u64], len: usize) -> Vec<u64> {
    (0..1u64 << len).filter(|y| words.iter().all(|c| (c & y).count_ones() % 2 == 0)).collect()
}

pub fn binomial(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of k-dimensional subspaces of F₂ⁿ by the product formula.
pub fn gaussian_binomial(n: u32, k: u32) -> u128 {
    let num: u128 = (0..k).map(|i| (1u128 << (n - i)) - 1).product();
    let den: u128 = (0..k).map(|i| (1u128 << (k - i)) - 1).product();
    num / den
}

/// Point masks (over the `2ⁿ <= 64` points) of every k-flat of F₂ⁿ, built
/// from all independent direction tuples and all translates.
pub fn flat_masks(n: usize, k: usize) -> Vec<u64> {
    assert!(n <= 6);
    let nonzero: Vec<u64> = (1..1u64 << n).collect();
    let mut subspaces: HashSet<Vec<u64>> = HashSet::new();
    let mut stack: Vec<(usize, Vec<u64>)> = vec![(0, Vec::new())];
    while let Some((start, dirs)) = stack.pop() {
        if dirs.len() == k {
            subspaces.insert(span(&dirs));
            continue;
        }
        let spanned = span(&dirs);
        for (i, &d) in nonzero.iter().enumerate().skip(start) {
            if spanned.binary_search(&d).is_err() {
                let mut next = dirs.clone();
                next.push(d);
                stack.push((i + 1, next));
            }
        }
    }
    let mut flats: HashSet<u64> = HashSet::new();
    for sub in &subspaces {
        for p in 0..1u64 << n {
            flats.insert(sub.iter().fold(0u64, |m, v| m | 1 << (p ^ v)));
        }
    }
    let mut out: Vec<u64> = flats.into_iter().collect();
    out.sort_unstable();
    out
}

/// Intersection sizes of `set` (a point mask) with the given flats.
pub fn profile(set: u64, flats: &[u64]) -> Vec<u32> {
    let mut sizes: Vec<u32> = flats.iter().map(|f| (set & f).count_ones()).collect();
    sizes.sort_unstable();
    sizes.dedup();
    sizes
}

/// Bit `i` set iff coordinates `i(k-1) .. (i+1)(k-1)` of `x` are all one.
pub fn signature(x: u64, length: usize, k: usize) -> u64 {
    let w = k - 1;
    (0..length).filter(|i| (0..w).all(|j| (x >> (i * w + j)) & 1 == 1)).fold(0, |s, i| s | 1 << i)
}

/// Number of vertex subsets of `0..n` containing no edge, edges as masks.
pub fn independent_sets(n: usize, edges: &[u64]) -> u64 {
    (0..1u64 << n).filter(|w| edges.iter().all(|e| w & e != *e)).count() as u64
}
