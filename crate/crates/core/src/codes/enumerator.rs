use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gf2::binomial;

/// Coefficients `A₀..A_ℓ` of `W(x, y) = Σ A_w x^w y^(ℓ-w)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightEnumerator {
    coeffs: Vec<BigUint>,
}

impl WeightEnumerator {
    /// `coeffs[w]` is the number of words of weight `w`; the length is
    /// `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<BigUint>) -> Self {
        assert!(!coeffs.is_empty(), "an enumerator has at least the A_0 coefficient");
        Self { coeffs }
    }

    pub fn from_counts(counts: Vec<u64>) -> Self {
        Self::new(counts.into_iter().map(BigUint::from).collect())
    }

    pub fn length(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn coefficient(&self, w: usize) -> &BigUint {
        &self.coeffs[w]
    }

    /// Total number of words, `W(1, 1)`.
    pub fn total(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    pub fn evaluate(&self, x: i64, y: i64) -> BigInt {
        self.evaluate_big(&BigInt::from(x), &BigInt::from(y))
    }

    pub fn evaluate_big(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let l = self.length();
        let mut y_pows = Vec::with_capacity(l + 1);
        y_pows.push(BigInt::one());
        for i in 0..l {
            let next = &y_pows[i] * y;
            y_pows.push(next);
        }
        let mut acc = BigInt::zero();
        let mut x_pow = BigInt::one();
        for (w, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero() {
                acc += BigInt::from(a.clone()) * &x_pow * &y_pows[l - w];
            }
            x_pow *= x;
        }
        acc
    }

    /// Enumerator of the same words with every coordinate flipped,
    /// i.e. `W(y, x)`.
    pub fn swapped(&self) -> WeightEnumerator {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        WeightEnumerator { coeffs }
    }
}

impl fmt::Debug for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightEnumerator{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

/// Renders as a polynomial in x and y, highest x-degree first.
impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.length();
        let mut first = true;
        for w in (0..=l).rev() {
            let a = &self.coeffs[w];
            if a.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mono = monomial(w, l - w);
            match (a.is_one(), mono.is_empty()) {
                (true, false) => f.write_str(&mono)?,
                (_, true) => write!(f, "{a}")?,
                (false, false) => write!(f, "{a}{mono}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn monomial(xp: usize, yp: usize) -> String {
    let mut s = String::new();
    for (var, p) in [("x", xp), ("y", yp)] {
        match p {
            0 => {}
            1 => s.push_str(var),
            _ => s.push_str(&format!("{var}^{p}")),
        }
    }
    s
}

/// Enumerator of the dual of a `d`-dimensional code from its own enumerator:
/// expands `W(y - x, y + x)` coefficient by coefficient and divides by `2^d`.
pub fn macwilliams_transform(w: &WeightEnumerator, d: usize) -> Result<WeightEnumerator> {
    let l = w.length();
    if w.total() != BigUint::one() << d {
        return Err(Error::CorruptEnumerator(format!("coefficients sum to {}, expected 2^{d}", w.total())));
    }
    let divisor = BigInt::one() << d;
    let mut out = Vec::with_capacity(l + 1);
    for j in 0..=l {
        // coefficient of x^j y^(l-j) in (y-x)^w (y+x)^(l-w) is the Krawtchouk value
        // Σ_i (-1)^i C(w, i) C(l-w, j-i)
        let mut sum = BigInt::zero();
        for (wt, a) in w.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mut k = BigInt::zero();
            for i in 0..=j.min(wt) {
                let term = BigInt::from(binomial(wt as u64, i as u64) * binomial((l - wt) as u64, (j - i) as u64));
                if i % 2 == 0 {
                    k += term;
                } else {
                    k -= term;
                }
            }
            sum += k * BigInt::from(a.clone());
        }
        let (q, r) = sum.div_rem(&divisor);
        if !r.is_zero() || q.sign() == Sign::Minus {
            return Err(Error::CorruptEnumerator(format!("dual coefficient {j} is {sum}/2^{d}")));
        }
        out.push(q.to_biguint().expect("checked nonnegative"));
    }
    Ok(WeightEnumerator::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn we(c: &[u64]) -> WeightEnumerator {
        WeightEnumerator::from_counts(c.to_vec())
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(we(&[1, 0, 0]).evaluate(1, 3), 9.into());
        assert_eq!(we(&[1, 2, 1]).evaluate(1, 3), 16.into());
        assert_eq!(we(&[1, 3, 3, 1]).evaluate(1, 1), 8.into());
        assert_eq!(we(&[1, 0, 1]).evaluate(-1, 3), 10.into());
        assert_eq!(we(&[1, 1]).evaluate(2, -3), (-1).into());
    }

    #[test]
    fn macwilliams_examples() {
        // repetition code of length 2 is self-dual
        assert_eq!(macwilliams_transform(&we(&[1, 0, 1]), 1).unwrap(), we(&[1, 0, 1]));
        // the full space dualises to the zero code
        assert_eq!(macwilliams_transform(&we(&[1, 3, 3, 1]), 3).unwrap(), we(&[1, 0, 0, 0]));
        assert_eq!(macwilliams_transform(&we(&[1, 0, 0, 0]), 0).unwrap(), we(&[1, 3, 3, 1]));
    }

    #[test]
    fn corrupted_enumerator_detected() {
        // wrong total
        assert!(matches!(macwilliams_transform(&we(&[1, 0, 0]), 1), Err(Error::CorruptEnumerator(_))));
        // right total, negative dual coefficient
        assert!(matches!(macwilliams_transform(&we(&[0, 2]), 1), Err(Error::CorruptEnumerator(_))));
    }

    #[test]
    fn display_polynomial() {
        assert_eq!(we(&[1, 2, 1]).to_string(), "x^2 + 2xy + y^2");
        assert_eq!(we(&[1, 0, 0, 0]).to_string(), "y^3");
        assert_eq!(we(&[1]).to_string(), "1");
    }
}
