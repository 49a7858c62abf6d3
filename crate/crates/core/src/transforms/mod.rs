//! The length-raising code maps `a` and `b`, words over them, and the
//! enumerator and matrix recurrences they induce.

mod matrix;
mod pingpong;
mod sizes;

pub use matrix::{check_free_distinctness, v_of_code, v_of_enumerator, word_matrix, Mat2, VPair, MAX_FREENESS_LENGTH};
pub use pingpong::{pingpong_region_check, PingPongReport, PingPongViolation, Region};
pub use sizes::{balanced_bound, distinct_sizes, SizeReport, MAX_SIZE_WORD_LENGTH};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::codes::{LinearCode, WeightEnumerator};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }
}

/// A word `σ₁σ₂…σᵣ`; as a map on codes the rightmost letter acts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TransformWord {
    letters: Vec<Letter>,
}

impl TransformWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.letters.iter().filter(|&&l| l == letter).count()
    }

    /// Word whose `i`-th letter (from the left) is `b` iff bit `r-1-i` of
    /// `index` is set, so indices `0..2^r` run in lexicographic order.
    pub fn from_index(r: usize, index: u64) -> Self {
        let letters = (0..r).map(|i| if (index >> (r - 1 - i)) & 1 == 1 { Letter::B } else { Letter::A }).collect();
        Self { letters }
    }

    /// All `2^r` words of length `r` in lexicographic order.
    pub fn all(r: usize) -> impl Iterator<Item = TransformWord> {
        (0..1u64 << r).map(move |i| Self::from_index(r, i))
    }
}

impl FromStr for TransformWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                'a' => Ok(Letter::A),
                'b' => Ok(Letter::B),
                other => Err(Error::invalid(format!("word letter must be 'a' or 'b', got {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

impl fmt::Display for TransformWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.letters.iter().try_for_each(|l| write!(f, "{}", l.as_char()))
    }
}

/// Generator of `a(C)` laid out from `g`: two zero columns appended.
pub fn a_generator(g: &BitMatrix) -> BitMatrix {
    g.with_zero_columns(2)
}

/// Generator of `b(C)` laid out from `g`: the `a` layout plus the rows
/// `(1,…,1,1,0)` and `(1,…,1,0,1)`.
pub fn b_generator(g: &BitMatrix) -> BitMatrix {
    let l = g.ncols();
    let mut out = a_generator(g);
    let head = BitVector::ones(l);
    for tail in [[true, false], [false, true]] {
        out.push_row(head.extended(&tail)).expect("row length is l + 2");
    }
    out
}

pub fn transform_a(c: &LinearCode) -> LinearCode {
    LinearCode::new(a_generator(c.generator())).expect("zero columns keep rows independent")
}

pub fn transform_b(c: &LinearCode) -> LinearCode {
    LinearCode::new(b_generator(c.generator())).expect("the two new rows have independent unit tails")
}

pub fn apply_letter(letter: Letter, c: &LinearCode) -> LinearCode {
    match letter {
        Letter::A => transform_a(c),
        Letter::B => transform_b(c),
    }
}

/// `f(C)` with the rightmost letter applied first.
pub fn apply_word(f: &TransformWord, c: &LinearCode) -> LinearCode {
    f.letters.iter().rev().fold(c.clone(), |acc, &l| apply_letter(l, &acc))
}

/// Appends one zero coordinate; `W(1, 3)` triples.
pub fn pad_zero(c: &LinearCode) -> LinearCode {
    LinearCode::new(c.generator().with_zero_columns(1)).expect("zero column keeps rows independent")
}

/// `y²·W(x, y)`: same coefficients, length raised by two.
pub fn enumerator_after_a(w: &WeightEnumerator) -> WeightEnumerator {
    let mut coeffs = w.coeffs().to_vec();
    coeffs.extend([BigUint::zero(), BigUint::zero()]);
    WeightEnumerator::new(coeffs)
}

/// `(x² + y²)·W(x, y) + 2xy·W(y, x)`, i.e.
/// `A'_j = A_{j-2} + A_j + 2·A_{ℓ+1-j}`.
pub fn enumerator_after_b(w: &WeightEnumerator) -> WeightEnumerator {
    let l = w.length();
    let a = w.coeffs();
    let coeffs = (0..=l + 2)
        .map(|j| {
            let mut c = BigUint::zero();
            if j >= 2 {
                c += &a[j - 2];
            }
            if j <= l {
                c += &a[j];
            }
            if (1..=l + 1).contains(&j) {
                c += &a[l + 1 - j] * 2u32;
            }
            c
        })
        .collect();
    WeightEnumerator::new(coeffs)
}

/// Enumerator of `f(C)` from that of `C` by iterating the two recurrences.
pub fn enumerator_after_word(f: &TransformWord, w: &WeightEnumerator) -> WeightEnumerator {
    f.letters.iter().rev().fold(w.clone(), |acc, l| match l {
        Letter::A => enumerator_after_a(&acc),
        Letter::B => enumerator_after_b(&acc),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::enumerate_all_codes;

    fn word(s: &str) -> TransformWord {
        s.parse().unwrap()
    }

    fn c0() -> LinearCode {
        LinearCode::zero(0)
    }

    fn rows(m: &[&str]) -> BitMatrix {
        BitMatrix::from_rows(m[0].len(), m.iter().map(|r| r.parse().unwrap()).collect()).unwrap()
    }

    fn four_three_generator() -> BitMatrix {
        rows(&["1001", "0101", "1110"])
    }

    #[test]
    fn words_parse_and_print() {
        assert_eq!(word("abba").to_string(), "abba");
        assert!("abc".parse::<TransformWord>().is_err());
        assert_eq!(word("").len(), 0);
        let all: Vec<String> = TransformWord::all(2).map(|w| w.to_string()).collect();
        assert_eq!(all, ["aa", "ab", "ba", "bb"]);
        assert_eq!(word("abb").count(Letter::B), 2);
    }

    #[test]
    fn generator_layouts() {
        let g = four_three_generator();
        assert_eq!(a_generator(&g), rows(&["100100", "010100", "111000"]));
        assert_eq!(b_generator(&g), rows(&["100100", "010100", "111000", "111110", "111101"]));
    }

    #[test]
    fn maps_on_trivial_code() {
        let a = transform_a(&c0());
        assert_eq!((a.length(), a.dimension()), (2, 0));
        assert_eq!(transform_b(&c0()), LinearCode::full(2));
    }

    #[test]
    fn composition_order() {
        let ab = apply_word(&word("ab"), &c0());
        assert_eq!((ab.length(), ab.dimension()), (4, 2));
        assert_eq!(ab.weight_enumerator().unwrap().evaluate(1, 3), 144.into());

        let ba = apply_word(&word("ba"), &c0());
        let mut words: Vec<String> = ba.codewords().map(|w| w.to_string()).collect();
        words.sort();
        assert_eq!(words, ["0000", "0011", "1101", "1110"]);
        assert_eq!(ba.weight_enumerator().unwrap().evaluate(1, 3), 96.into());

        let c = LinearCode::new(four_three_generator()).unwrap();
        assert_eq!(apply_word(&word(""), &c), c);
    }

    #[test]
    fn dimension_and_length_growth() {
        let c = LinearCode::new(four_three_generator()).unwrap();
        for f in TransformWord::all(3) {
            let out = apply_word(&f, &c);
            assert_eq!(out.length(), 4 + 6);
            assert_eq!(out.dimension(), 3 + 2 * f.count(Letter::B));
        }
    }

    #[test]
    fn pad_zero_triples() {
        let p = pad_zero(&c0());
        assert_eq!((p.length(), p.dimension()), (1, 0));
        assert_eq!(p.weight_enumerator().unwrap().evaluate(1, 3), 3.into());
        let pb = pad_zero(&transform_b(&c0()));
        assert_eq!(pb.weight_enumerator().unwrap().evaluate(1, 3), 48.into());
    }

    #[test]
    fn enumerator_identities_exhaustive() {
        for l in 0..=5 {
            for c in enumerate_all_codes(l).unwrap() {
                let w = c.weight_enumerator().unwrap();
                assert_eq!(transform_a(&c).weight_enumerator().unwrap(), enumerator_after_a(&w));
                assert_eq!(transform_b(&c).weight_enumerator().unwrap(), enumerator_after_b(&w));
            }
        }
    }

    /// Length-6 codes are too many to list, so check a deterministic spread.
    #[test]
    fn enumerator_identities_length_six() {
        for bits in (0u64..1 << 18).step_by(997) {
            let g = BitMatrix::from_u64_rows(6, &[bits & 63, (bits >> 6) & 63, bits >> 12]);
            let c = LinearCode::span(&g);
            let w = c.weight_enumerator().unwrap();
            assert_eq!(transform_a(&c).weight_enumerator().unwrap(), enumerator_after_a(&w));
            assert_eq!(transform_b(&c).weight_enumerator().unwrap(), enumerator_after_b(&w));
        }
    }

    #[test]
    fn symbolic_words_match_enumeration() {
        let w0 = c0().weight_enumerator().unwrap();
        for r in 0..=4 {
            for f in TransformWord::all(r) {
                let code = apply_word(&f, &c0());
                assert_eq!(code.weight_enumerator().unwrap(), enumerator_after_word(&f, &w0), "{f}");
            }
        }
    }
}
