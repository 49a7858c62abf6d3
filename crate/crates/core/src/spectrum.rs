//! Exhaustive spectra `Sp(n; k, t)` for tiny `n`, an on-disk cache for
//! them, and a backtracking search for avoiders of a given size.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{enumerate_flats, is_avoider, PointSet, DEFAULT_FLAT_BUDGET};

pub const MAX_SPECTRUM_DIM: usize = 4;
pub const MAX_SEARCH_DIM: usize = 6;

/// The sizes `m` such that every `m`-subset of F₂ⁿ meets some `k`-flat in
/// exactly `t` points. The density is kept unreduced as
/// `density_num / density_den = |members| / 2ⁿ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub members: Vec<u64>,
    pub density_num: u64,
    pub density_den: u64,
}

impl SpectrumResult {
    fn new(n: usize, k: usize, t: usize, members: Vec<u64>) -> Self {
        Self { n, k, t, density_num: members.len() as u64, density_den: 1 << n, members }
    }

    pub fn contains(&self, m: u64) -> bool {
        self.members.binary_search(&m).is_ok()
    }

    fn is_consistent(&self) -> bool {
        let sorted = self.members.windows(2).all(|w| w[0] < w[1]);
        let in_range = self.members.iter().all(|&m| m <= 1 << self.n);
        sorted && in_range && self.density_num == self.members.len() as u64 && self.density_den == 1 << self.n
    }
}

fn check_params(n: usize, k: usize, t: usize, max_n: usize) -> Result<()> {
    if n > max_n {
        return Err(Error::CapExceeded { what: "spectrum dimension", value: n as u64, max: max_n as u64 });
    }
    if k == 0 || k > n {
        return Err(Error::invalid(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    if t > 1 << k {
        return Err(Error::invalid(format!("need t <= 2^k = {}, got t={t}", 1u64 << k)));
    }
    Ok(())
}

/// Point masks of every `k`-flat, as bitmasks over the `2ⁿ <= 64` points.
fn flat_masks(n: usize, k: usize) -> Result<Vec<u64>> {
    Ok(enumerate_flats(n, k, DEFAULT_FLAT_BUDGET)?
        .map(|f| f.points().into_iter().fold(0u64, |acc, p| acc | 1 << p))
        .collect())
}

#[inline]
fn avoids(set: u64, flats: &[u64], t: u32) -> bool {
    flats.iter().all(|&f| (set & f).count_ones() != t)
}

/// Every `m`-subset of `0..points`, via Gosper's hack.
fn subsets_of_size(points: u32, m: u32) -> impl Iterator<Item = u64> {
    let limit = if points == 64 { u64::MAX } else { (1u64 << points) - 1 };
    let first = if m == 0 { 0 } else if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    std::iter::successors(Some(first), move |&s| {
        if s == 0 {
            return None;
        }
        let c = s & s.wrapping_neg();
        let r = s.checked_add(c)?;
        let next = (((r ^ s) >> 2) / c) | r;
        (next <= limit && next.count_ones() == m).then_some(next)
    })
}

pub fn spectrum_exhaustive(n: usize, k: usize, t: usize) -> Result<SpectrumResult> {
    check_params(n, k, t, MAX_SPECTRUM_DIM)?;
    let flats = flat_masks(n, k)?;
    let points = 1u32 << n;
    let members: Vec<u64> = (0..=points)
        .into_par_iter()
        .filter(|&m| !subsets_of_size(points, m).any(|s| avoids(s, &flats, t as u32)))
        .map(u64::from)
        .collect();
    Ok(SpectrumResult::new(n, k, t, members))
}

/// Spectra stored as JSON files keyed by `(n, k, t)`.
#[derive(Debug, Clone)]
pub struct SpectrumCache {
    dir: PathBuf,
}

impl SpectrumCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, n: usize, k: usize, t: usize) -> PathBuf {
        self.dir.join(format!("spectrum-n{n}-k{k}-t{t}.json"))
    }

    /// A cached result, if present and well formed.
    pub fn load(&self, n: usize, k: usize, t: usize) -> Option<SpectrumResult> {
        let text = fs::read_to_string(self.path(n, k, t)).ok()?;
        let r: SpectrumResult = serde_json::from_str(&text).ok()?;
        ((r.n, r.k, r.t) == (n, k, t) && r.is_consistent()).then_some(r)
    }

    pub fn store(&self, r: &SpectrumResult) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|e| Error::io(&self.dir, e))?;
        let target = self.path(r.n, r.k, r.t);
        let tmp = target.with_extension("json.tmp");
        let mut f = fs::File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
        f.write_all(serde_json::to_string(r).expect("plain data").as_bytes()).map_err(|e| Error::io(&tmp, e))?;
        fs::rename(&tmp, &target).map_err(|e| Error::io(&target, e))
    }

    /// Loads, or computes and stores.
    pub fn get(&self, n: usize, k: usize, t: usize) -> Result<SpectrumResult> {
        if let Some(r) = self.load(n, k, t) {
            return Ok(r);
        }
        let r = spectrum_exhaustive(n, k, t)?;
        self.store(&r)?;
        Ok(r)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A verified avoider of the requested size.
    Found(PointSet),
    /// No avoider of that size exists.
    Exhausted,
    /// The node budget ran out first.
    Unknown { nodes: u64 },
}

struct Search {
    m: u32,
    t: u32,
    points: u32,
    /// Flats whose largest point is `p`, for each `p`.
    closing: Vec<Vec<u64>>,
    nodes: u64,
    budget: u64,
}

impl Search {
    /// Decides points `p..` given the chosen points below `p`. `None` means
    /// the budget ran out.
    fn run(&mut self, p: u32, chosen: u64, count: u32) -> Option<Option<u64>> {
        if p == self.points {
            return Some((count == self.m).then_some(chosen));
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let remaining = self.points - p;
        // translation symmetry: some avoider of size m >= 1 contains 0
        let include_options: &[bool] = match (p, count < self.m, count + remaining > self.m) {
            (0, true, _) => &[true],
            (_, true, true) => &[true, false],
            (_, true, false) => &[true],
            (_, false, _) => &[false],
        };
        for &include in include_options {
            let next = if include { chosen | 1 << p } else { chosen };
            if avoids(next, &self.closing[p as usize], self.t) {
                if let Some(found) = self.run(p + 1, next, count + u32::from(include))? {
                    return Some(Some(found));
                }
            }
        }
        Some(None)
    }
}

/// Backtracking over the points in increasing order, checking each flat as
/// soon as its last point is decided.
pub fn exists_avoider_of_size(n: usize, k: usize, t: usize, m: u64, budget: u64) -> Result<SearchOutcome> {
    check_params(n, k, t, MAX_SEARCH_DIM)?;
    if m > 1 << n {
        return Err(Error::invalid(format!("size {m} exceeds 2^n = {}", 1u64 << n)));
    }
    let points = 1u32 << n;
    let mut closing = vec![Vec::new(); points as usize];
    for f in flat_masks(n, k)? {
        closing[63 - f.leading_zeros() as usize].push(f);
    }
    let mut search = Search { m: m as u32, t: t as u32, points, closing, nodes: 0, budget };
    match search.run(0, 0, 0) {
        None => Ok(SearchOutcome::Unknown { nodes: search.nodes }),
        Some(None) => Ok(SearchOutcome::Exhausted),
        Some(Some(mask)) => {
            let set = PointSet::from_points(n, (0..points as u64).filter(|p| (mask >> p) & 1 == 1))?;
            if set.len() != m || !is_avoider(&set, k, t, DEFAULT_FLAT_BUDGET)? {
                return Err(Error::invalid(format!("search produced an unverified set of size {}", set.len())));
            }
            Ok(SearchOutcome::Found(set))
        }
    }
}
