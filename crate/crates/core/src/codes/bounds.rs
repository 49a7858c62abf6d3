//! Exhaustive code enumeration and the bounds on how many values
//! `W_C(a, b)` takes over all codes of a given length.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Signed;

use super::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::{self, BitMatrix};

pub const MAX_EXHAUSTIVE_LENGTH: usize = 5;

/// Every linear code of length `length`, each exactly once, ordered by
/// dimension and then by canonical generator.
pub fn enumerate_all_codes(length: usize) -> Result<impl Iterator<Item = LinearCode>> {
    if length > MAX_EXHAUSTIVE_LENGTH {
        return Err(Error::CapExceeded {
            what: "code length",
            value: length as u64,
            max: MAX_EXHAUSTIVE_LENGTH as u64,
        });
    }
    Ok((0..=length)
        .flat_map(move |k| gf2::subspaces(length, k))
        .map(move |rows| LinearCode::span(&BitMatrix::from_u64_rows(length, &rows))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueCountReport {
    pub length: usize,
    pub a: i64,
    pub b: i64,
    pub values: BTreeSet<BigInt>,
    /// `((|a|+|b|)/g)^ℓ`, doubled plus one when `ab < 0`.
    pub elementary_bound: BigUint,
    /// `(ℓ+1)·(2b / gcd(b-a, b+a))^ℓ`, only when `b > |a|`.
    pub dual_bound: Option<BigUint>,
}

impl ValueCountReport {
    pub fn distinct_count(&self) -> usize {
        self.values.len()
    }

    pub fn elementary_violated(&self) -> bool {
        BigUint::from(self.distinct_count()) > self.elementary_bound
    }

    pub fn dual_violated(&self) -> bool {
        self.dual_bound.as_ref().is_some_and(|b| BigUint::from(self.distinct_count()) > *b)
    }

    pub fn violated(&self) -> bool {
        self.elementary_violated() || self.dual_violated()
    }
}

/// Counts the distinct values of `W_C(a, b)` over all codes of length
/// `length` and compares them with the elementary and the dual bound.
pub fn check_value_count_bounds(length: usize, a: i64, b: i64) -> Result<ValueCountReport> {
    if length == 0 {
        return Err(Error::invalid("value-count bounds need length >= 1"));
    }
    if a == 0 || b == 0 {
        return Err(Error::invalid(format!("value-count bounds need a, b nonzero, got a={a}, b={b}")));
    }
    let mut values = BTreeSet::new();
    for code in enumerate_all_codes(length)? {
        values.insert(code.weight_enumerator()?.evaluate(a, b));
    }
    let l = length as u32;
    let (abs_a, abs_b) = (a.unsigned_abs(), b.unsigned_abs());
    let g = abs_a.gcd(&abs_b);
    let base = BigUint::from((abs_a + abs_b) / g).pow(l);
    let elementary_bound = if (a > 0) == (b > 0) { base } else { base * 2u32 + 1u32 };
    let dual_bound = (BigInt::from(b) > BigInt::from(a).abs()).then(|| {
        let (b, a) = (i128::from(b), i128::from(a));
        let g = (b - a).gcd(&(b + a));
        let ratio = (2 * b / g) as u128;
        BigUint::from(ratio).pow(l) * BigUint::from(length + 1)
    });
    Ok(ValueCountReport { length, a, b, values, elementary_bound, dual_bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn code_counts() {
        assert_eq!(enumerate_all_codes(0).unwrap().count(), 1);
        assert_eq!(enumerate_all_codes(1).unwrap().count(), 2);
        assert_eq!(enumerate_all_codes(2).unwrap().count(), 5);
        assert_eq!(enumerate_all_codes(4).unwrap().count(), 67);
        assert_eq!(enumerate_all_codes(5).unwrap().count(), 374);
        assert!(enumerate_all_codes(6).is_err());
    }

    #[test]
    fn codes_are_distinct() {
        let all: Vec<LinearCode> = enumerate_all_codes(4).unwrap().collect();
        let set: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
    }

    #[test]
    fn length_one_at_one_three() {
        let r = check_value_count_bounds(1, 1, 3).unwrap();
        let want: BTreeSet<BigInt> = [3, 4].into_iter().map(BigInt::from).collect();
        assert_eq!(r.values, want);
        assert_eq!(r.elementary_bound, BigUint::from(4u32));
        assert_eq!(r.dual_bound, Some(BigUint::from(6u32)));
        assert!(!r.violated());
    }

    #[test]
    fn length_two_at_one_three() {
        let r = check_value_count_bounds(2, 1, 3).unwrap();
        let want: BTreeSet<BigInt> = [9, 10, 12, 16].into_iter().map(BigInt::from).collect();
        assert_eq!(r.values, want);
        assert_eq!(r.dual_bound, Some(BigUint::from(27u32)));
    }

    #[test]
    fn at_one_one_counts_dimensions() {
        for l in 1..=5 {
            let r = check_value_count_bounds(l, 1, 1).unwrap();
            assert_eq!(r.distinct_count(), l + 1);
            assert_eq!(r.dual_bound, None);
        }
    }

    #[test]
    fn zero_arguments_rejected() {
        assert!(check_value_count_bounds(2, 0, 3).is_err());
        assert!(check_value_count_bounds(2, 1, 0).is_err());
    }

    #[test]
    fn mixed_sign_elementary_bound() {
        let r = check_value_count_bounds(2, -1, 3).unwrap();
        assert_eq!(r.elementary_bound, BigUint::from(33u32));
        assert_eq!(r.dual_bound, Some(BigUint::from(27u32)));
    }
}
