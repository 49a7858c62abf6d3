//! Plain-text file formats for codes, point sets, hypergraphs and flat
//! groups.
//!
//! All formats are line based. `#` starts a comment, blank lines are
//! ignored, and header fields are `key=value` pairs separated by spaces.
//! Bit strings are written `x₁x₂…`, the first character being coordinate 1.
//! A point of F₂ⁿ is numbered `Σ x_j·2^(j-1)`.
//!
//! Code file: a header `length=<ℓ> dim=<d>`, then `d` generator rows, then
//! optionally `offset=<bits>`, which makes the file describe an affine code.
//!
//! Set file: a header `n=<n>`, then either `points=` followed by point
//! numbers (any mix of spaces, commas and newlines), or `hex=` followed by
//! the membership bitmap in hexadecimal, most significant digit first, so
//! the last digit holds points 0 to 3.
//!
//! Hypergraph file: a header `n=<n>`, then one edge per line as 1-indexed
//! vertex numbers.
//!
//! Flats file: a header `n=<n> k=<k>`, then one flat per line as
//! `<group> <point-bits> <direction-bits>…`; each flat has dimension
//! `n + 1 - k`. Groups are emitted in increasing label order.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write;

use crate::codes::{AffineCode, LinearCode};
use crate::constructions::Hypergraph;
use crate::error::{Error, Result};
use crate::geometry::{Flat, PointSet};
use crate::gf2::{BitMatrix, BitVector};

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn header(line: usize, text: &str, keys: &[&str]) -> Result<Vec<usize>> {
    let mut found: HashMap<&str, usize> = HashMap::new();
    for token in text.split_whitespace() {
        let (key, value) =
            token.split_once('=').ok_or_else(|| Error::parse(line, format!("expected key=value, got {token:?}")))?;
        if !keys.contains(&key) {
            return Err(Error::parse(line, format!("unknown header field {key:?}")));
        }
        let value = value.parse().map_err(|_| Error::parse(line, format!("{key} must be a non-negative integer")))?;
        if found.insert(key, value).is_some() {
            return Err(Error::parse(line, format!("{key} given twice")));
        }
    }
    keys.iter()
        .map(|k| found.get(k).copied().ok_or_else(|| Error::parse(line, format!("missing header field {k}"))))
        .collect()
}

fn bits(line: usize, text: &str, len: usize) -> Result<BitVector> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.len() != len {
        return Err(Error::parse(line, format!("expected {len} bits, got {}", compact.len())));
    }
    compact.parse().map_err(|_| Error::parse(line, format!("{compact:?} is not a 0/1 string")))
}

fn missing_header() -> Error {
    Error::parse(0, "empty file, expected a header line")
}

/// A parsed code file: the linear part and, if present, the offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeFile {
    pub code: LinearCode,
    pub offset: Option<BitVector>,
}

impl CodeFile {
    pub fn affine(&self) -> Result<Option<AffineCode>> {
        self.offset.as_ref().map(|y| AffineCode::new(self.code.clone(), y.clone())).transpose()
    }
}

pub fn parse_code(text: &str) -> Result<CodeFile> {
    let mut lines = content_lines(text);
    let (hline, htext) = lines.next().ok_or_else(missing_header)?;
    let [length, dim] = header(hline, htext, &["length", "dim"])?[..] else { unreachable!() };
    let mut rows = Vec::with_capacity(dim);
    let mut offset = None;
    for (line, text) in lines {
        if let Some(rest) = text.strip_prefix("offset=") {
            if offset.is_some() {
                return Err(Error::parse(line, "offset given twice"));
            }
            offset = Some(bits(line, rest, length)?);
        } else if offset.is_some() {
            return Err(Error::parse(line, "generator rows must come before the offset"));
        } else if rows.len() == dim {
            return Err(Error::parse(line, format!("more than dim = {dim} generator rows")));
        } else {
            rows.push(bits(line, text, length)?);
        }
    }
    if rows.len() != dim {
        return Err(Error::parse(hline, format!("dim = {dim} but {} generator rows follow", rows.len())));
    }
    let generator = BitMatrix::from_rows(length, rows)?;
    let code = LinearCode::new(generator).map_err(|e| Error::parse(hline, e.to_string()))?;
    Ok(CodeFile { code, offset })
}

/// Writes the canonical generator, and the offset when given.
pub fn write_code(code: &LinearCode, offset: Option<&BitVector>) -> String {
    let mut out = format!("length={} dim={}\n", code.length(), code.dimension());
    for row in code.generator().rows() {
        writeln!(out, "{row}").unwrap();
    }
    if let Some(y) = offset {
        writeln!(out, "offset={y}").unwrap();
    }
    out
}

pub fn parse_set(text: &str) -> Result<PointSet> {
    let mut lines = content_lines(text);
    let (hline, htext) = lines.next().ok_or_else(missing_header)?;
    let [n] = header(hline, htext, &["n"])?[..] else { unreachable!() };
    let mut set = PointSet::empty(n).map_err(|e| Error::parse(hline, e.to_string()))?;
    let Some((bline, btext)) = lines.next() else {
        return Err(Error::parse(hline, "expected points= or hex= after the header"));
    };
    let rest: Vec<(usize, &str)> = lines.collect();
    if let Some(first) = btext.strip_prefix("points=") {
        for (line, text) in std::iter::once((bline, first)).chain(rest) {
            for token in text.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
                let p: u64 = token.parse().map_err(|_| Error::parse(line, format!("{token:?} is not a point number")))?;
                if p >= set.universe() {
                    return Err(Error::parse(line, format!("point {p} outside 0..{}", set.universe())));
                }
                if set.contains(p) {
                    return Err(Error::parse(line, format!("point {p} listed twice")));
                }
                set.insert(p);
            }
        }
    } else if let Some(first) = btext.strip_prefix("hex=") {
        let mut digits: Vec<(usize, char)> = Vec::new();
        for (line, text) in std::iter::once((bline, first)).chain(rest) {
            digits.extend(text.chars().filter(|c| !c.is_whitespace()).map(|c| (line, c)));
        }
        for (p, (line, c)) in digits.iter().rev().enumerate() {
            let v = c.to_digit(16).ok_or_else(|| Error::parse(*line, format!("{c:?} is not a hex digit")))?;
            for bit in 0..4 {
                if (v >> bit) & 1 == 1 {
                    let point = 4 * p as u64 + bit;
                    if point >= set.universe() {
                        return Err(Error::parse(*line, format!("bitmap sets point {point} outside 0..{}", set.universe())));
                    }
                    set.insert(point);
                }
            }
        }
    } else {
        return Err(Error::parse(bline, "expected points= or hex="));
    }
    Ok(set)
}

/// Hex bitmap form, 64 digits per line.
pub fn write_set(set: &PointSet) -> String {
    let mut digits = String::new();
    let n_digits = set.universe().div_ceil(4);
    for d in (0..n_digits).rev() {
        let v = (0..4).filter(|b| set.contains(4 * d + b)).fold(0u32, |acc, b| acc | 1 << b);
        digits.push(char::from_digit(v, 16).unwrap());
    }
    let mut out = format!("n={}\nhex=", set.n());
    for (i, chunk) in digits.as_bytes().chunks(64).enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(std::str::from_utf8(chunk).unwrap());
    }
    out.push('\n');
    out
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut lines = content_lines(text);
    let (hline, htext) = lines.next().ok_or_else(missing_header)?;
    let [n] = header(hline, htext, &["n"])?[..] else { unreachable!() };
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (line, text) in lines {
        let edge = text
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::parse(line, format!("{t:?} is not a vertex number"))))
            .collect::<Result<Vec<_>>>()?;
        Hypergraph::new(n, std::slice::from_ref(&edge)).map_err(|e| Error::parse(line, e.to_string()))?;
        let mut sorted = edge.clone();
        sorted.sort_unstable();
        if !seen.insert(sorted) {
            return Err(Error::parse(line, format!("duplicate edge {edge:?}")));
        }
        edges.push(edge);
    }
    Hypergraph::new(n, &edges).map_err(|e| Error::parse(hline, e.to_string()))
}

pub fn write_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("n={}\n", h.n());
    for edge in h.edges() {
        let words: Vec<String> = edge.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{}", words.join(" ")).unwrap();
    }
    out
}

/// Parsed flats file: ambient dimension, avoider `k`, and the groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatsFile {
    pub n: usize,
    pub k: usize,
    pub groups: Vec<Vec<Flat>>,
}

pub fn parse_flats(text: &str) -> Result<FlatsFile> {
    let mut lines = content_lines(text);
    let (hline, htext) = lines.next().ok_or_else(missing_header)?;
    let [n, k] = header(hline, htext, &["n", "k"])?[..] else { unreachable!() };
    if k < 2 || k > n + 1 {
        return Err(Error::parse(hline, format!("need 2 <= k <= n + 1, got k={k}, n={n}")));
    }
    let dim = n + 1 - k;
    let mut groups: BTreeMap<u64, Vec<Flat>> = BTreeMap::new();
    for (line, text) in lines {
        let mut tokens = text.split_whitespace();
        let label = tokens.next().expect("line is non-empty");
        let label: u64 = label.parse().map_err(|_| Error::parse(line, format!("group label {label:?} is not a number")))?;
        let point = bits(line, tokens.next().ok_or_else(|| Error::parse(line, "missing point"))?, n)?;
        let directions = tokens.map(|t| bits(line, t, n)).collect::<Result<Vec<_>>>()?;
        let directions = BitMatrix::from_rows(n, directions)?;
        let flat = Flat::new(n, &directions, &point).map_err(|e| Error::parse(line, e.to_string()))?;
        if flat.k() != dim {
            return Err(Error::parse(line, format!("flat has dimension {}, expected {dim}", flat.k())));
        }
        groups.entry(label).or_default().push(flat);
    }
    Ok(FlatsFile { n, k, groups: groups.into_values().collect() })
}

/// Groups labelled `0, 1, …` in order, each flat as its canonical point and
/// basis.
pub fn write_flats(n: usize, k: usize, groups: &[Vec<Flat>]) -> String {
    let mut out = format!("n={n} k={k}\n");
    for (label, group) in groups.iter().enumerate() {
        for flat in group {
            write!(out, "{label} {}", flat.rep()).unwrap();
            for row in flat.basis().rows() {
                write!(out, " {row}").unwrap();
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_of(e: Error) -> usize {
        match e {
            Error::Parse { line, .. } => line,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn code_round_trip() {
        let text = "# generator of a [4,3] code\nlength=4 dim=3\n1001\n0101\n1110\n";
        let f = parse_code(text).unwrap();
        assert_eq!((f.code.length(), f.code.dimension()), (4, 3));
        assert_eq!(f.offset, None);
        assert_eq!(parse_code(&write_code(&f.code, None)).unwrap(), f);
    }

    #[test]
    fn trivial_code() {
        let f = parse_code("length=0 dim=0\n").unwrap();
        assert_eq!(f.code, LinearCode::zero(0));
    }

    #[test]
    fn affine_code_file() {
        let f = parse_code("length=2 dim=1\n11\noffset=10\n").unwrap();
        let a = f.affine().unwrap().unwrap();
        assert_eq!(a.offset().to_string(), "01");
        assert!(a.contains(&"01".parse().unwrap()).unwrap());
        assert_eq!(parse_code(&write_code(&f.code, f.offset.as_ref())).unwrap(), f);
    }

    #[test]
    fn code_errors_name_lines() {
        assert_eq!(line_of(parse_code("length=4 dim=2\n1001\n010\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_code("length=4 dim=1\n1001\n0101\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_code("length=4\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_code("\n\nlength=2 dim=2\n11\n11\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_code("length=2 dim=1\n1x\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_code("").unwrap_err()), 0);
    }

    #[test]
    fn set_formats() {
        let s = parse_set("n=4\npoints=3, 5 6\n7\n").unwrap();
        assert_eq!(s.points().collect::<Vec<_>>(), vec![3, 5, 6, 7]);
        assert_eq!(write_set(&s), "n=4\nhex=00e8\n");
        assert_eq!(parse_set(&write_set(&s)).unwrap(), s);
        assert_eq!(parse_set("n=2\nhex=f\n").unwrap().len(), 4);
        assert_eq!(parse_set("n=0\nhex=1\n").unwrap().len(), 1);
        assert_eq!(parse_set("n=1\npoints=\n").unwrap().len(), 0);
    }

    #[test]
    fn large_set_round_trip() {
        let s = PointSet::from_fn(10, |p| p % 7 == 3).unwrap();
        let text = write_set(&s);
        assert!(text.lines().all(|l| l.len() <= 68));
        assert_eq!(parse_set(&text).unwrap(), s);
    }

    #[test]
    fn set_errors_name_lines() {
        assert_eq!(line_of(parse_set("n=2\npoints=1 4\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_set("n=2\npoints=1\n1\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_set("n=2\nhex=1f\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_set("n=2\nhex=g\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_set("n=2\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_set("n=2\nbits=1\n").unwrap_err()), 2);
    }

    #[test]
    fn hypergraph_round_trip() {
        let h = parse_hypergraph("n=4\n1 2\n# comment\n2 3 4\n").unwrap();
        assert_eq!(h.edges(), vec![vec![1, 2], vec![2, 3, 4]]);
        assert_eq!(parse_hypergraph(&write_hypergraph(&h)).unwrap(), h);
        assert_eq!(line_of(parse_hypergraph("n=3\n1 2\n1 5\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_hypergraph("n=3\n1 2\n2 1\n").unwrap_err()), 3);
    }

    #[test]
    fn flats_round_trip() {
        let text = "n=4 k=3\n0 1100 1000 0100\n0 0011 0010 0001\n1 0000 1010 0101\n";
        let f = parse_flats(text).unwrap();
        assert_eq!((f.n, f.k, f.groups.len()), (4, 3, 2));
        assert_eq!(f.groups[0].len(), 2);
        assert_eq!(parse_flats(&write_flats(f.n, f.k, &f.groups)).unwrap(), f);
        assert_eq!(line_of(parse_flats("n=4 k=3\n0 1100 1000\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_flats("n=4 k=3\n0 1100 1000 1000\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_flats("n=4 k=1\n").unwrap_err()), 1);
    }
}
