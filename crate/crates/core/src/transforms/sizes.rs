use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gf2::binomial;

pub const MAX_SIZE_WORD_LENGTH: usize = 24;

/// Words whose rightmost `SPLIT` letters are fixed form one parallel task.
const SPLIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeReport {
    pub r: usize,
    pub balanced_only: bool,
    /// Distinct `W(1, 3)` values of the codes `f(C₀)`, ascending.
    pub values: Vec<BigUint>,
    /// `2^(4r) - value` for each entry of `values`, same order.
    pub avoider_sizes: Vec<BigUint>,
    /// `⌈binom(r-1, ⌊(r-1)/2⌋)^(1/3)⌉`, for `r >= 1`.
    pub bound: Option<BigUint>,
}

impl SizeReport {
    pub fn count(&self) -> usize {
        self.values.len()
    }

    /// Big integers as decimal strings.
    pub fn to_json(&self) -> Value {
        let strings = |v: &[BigUint]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        json!({
            "r": self.r,
            "balanced_only": self.balanced_only,
            "count": self.count(),
            "values": strings(&self.values),
            "avoider_sizes": strings(&self.avoider_sizes),
            "bound": self.bound.as_ref().map(|b| b.to_string()),
        })
    }
}

/// Smallest integer `m` with `m³ >= binom(r-1, ⌊(r-1)/2⌋)`.
pub fn balanced_bound(r: usize) -> Option<BigUint> {
    if r == 0 {
        return None;
    }
    let t = binomial((r - 1) as u64, ((r - 1) / 2) as u64);
    let m = t.cbrt();
    Some(if m.pow(3) < t { m + 1u32 } else { m })
}

/// Entries stay below `16^r <= 2^96`, so `u128` is exact within the cap.
#[derive(Clone, Copy)]
struct Pair(u128, u128);

impl Pair {
    #[inline]
    fn a(self) -> Pair {
        Pair(9 * self.0, self.1)
    }

    #[inline]
    fn b(self) -> Pair {
        Pair(10 * self.0 + 6 * self.1, 6 * self.0 + 10 * self.1)
    }
}

fn collect_prefixes(v: Pair, depth: usize, out: &mut Vec<u128>) {
    if depth == 0 {
        out.push(v.0);
        return;
    }
    collect_prefixes(v.a(), depth - 1, out);
    collect_prefixes(v.b(), depth - 1, out);
}

fn all_word_values(r: usize) -> Vec<u128> {
    let split = r.min(SPLIT);
    // vectors after the rightmost `split` letters, which act first
    let starts: Vec<Pair> = (0..1u64 << split)
        .map(|mask| (0..split).fold(Pair(1, 1), |v, i| if (mask >> i) & 1 == 1 { v.b() } else { v.a() }))
        .collect();
    let mut values: Vec<u128> = starts
        .into_par_iter()
        .flat_map_iter(|start| {
            let mut out = Vec::with_capacity(1 << (r - split));
            collect_prefixes(start, r - split, &mut out);
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect();
    values.par_sort_unstable();
    values.dedup();
    values
}

/// Row-major `[α, β, γ, δ]`.
type Mat = [u128; 4];

fn mat_mul(m: Mat, n: Mat) -> Mat {
    [
        m[0] * n[0] + m[1] * n[2],
        m[0] * n[1] + m[1] * n[3],
        m[2] * n[0] + m[3] * n[2],
        m[2] * n[1] + m[3] * n[3],
    ]
}

/// Words `a·g`, `g·a` and `b·g` with `g` of length `r-1` holding exactly
/// `⌊(r-1)/2⌋` letters `a`.
fn balanced_word_values(r: usize) -> Vec<u128> {
    let g_len = r - 1;
    let n_b = g_len - g_len / 2;
    let mut values: Vec<u128> = (0..1u64 << g_len)
        .into_par_iter()
        .filter(|mask| mask.count_ones() as usize == n_b)
        .flat_map_iter(|mask| {
            let m = (0..g_len).fold([1, 0, 0, 1], |acc, i| {
                let letter = if (mask >> i) & 1 == 1 { [10, 6, 6, 10] } else { [9, 0, 0, 1] };
                mat_mul(acc, letter)
            });
            let (top, bottom) = (m[0] + m[1], m[2] + m[3]);
            [9 * top, 9 * m[0] + m[1], 10 * top + 6 * bottom]
        })
        .collect();
    values.par_sort_unstable();
    values.dedup();
    values
}

/// Distinct values of the first entry of `M_f·(1,1)ᵀ` over all words of
/// length `r` (or the balanced family), with the matching `[3,1]`-avoider
/// sizes in dimension `4r`.
pub fn distinct_sizes(r: usize, balanced_only: bool) -> Result<SizeReport> {
    if r > MAX_SIZE_WORD_LENGTH {
        return Err(Error::CapExceeded { what: "word length", value: r as u64, max: MAX_SIZE_WORD_LENGTH as u64 });
    }
    if balanced_only && r == 0 {
        return Err(Error::invalid("the balanced word family needs r >= 1"));
    }
    let raw = if balanced_only { balanced_word_values(r) } else { all_word_values(r) };
    let space = BigUint::from(1u32) << (4 * r);
    let values: Vec<BigUint> = raw.into_iter().map(BigUint::from).collect();
    let avoider_sizes = values.iter().map(|v| &space - v).collect();
    Ok(SizeReport { r, balanced_only, values, avoider_sizes, bound: balanced_bound(r) })
}
