use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Letter, Mat2};
use crate::error::{Error, Result};

/// The two regions of the ping-pong argument, for vectors with nonzero
/// entries: `X1` where one coordinate exceeds three times the other in
/// absolute value, `X2` where `1/3 < |y|/|x| < 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    X1,
    X2,
}

impl Region {
    pub fn of(x: &BigInt, y: &BigInt) -> Option<Region> {
        if x.is_zero() || y.is_zero() {
            return None;
        }
        let (ax, ay) = (x.abs(), y.abs());
        let three = BigInt::from(3);
        if &three * &ay < ax || ay > &three * &ax {
            Some(Region::X1)
        } else if ax < &three * &ay && ay < &three * &ax {
            Some(Region::X2)
        } else {
            None
        }
    }
}

/// `(x, y) / den` with `den > 0` and the three numbers coprime.
#[derive(Debug, Clone, PartialEq, Eq)]
struct RatPair {
    x: BigInt,
    y: BigInt,
    den: BigInt,
}

impl RatPair {
    fn integer(x: BigInt, y: BigInt) -> Self {
        Self { x, y, den: BigInt::one() }
    }

    fn normalized(x: BigInt, y: BigInt, den: BigInt) -> Self {
        let g = x.gcd(&y).gcd(&den);
        if g.is_one() || g.is_zero() {
            return Self { x, y, den };
        }
        Self { x: x / &g, y: y / &g, den: den / g }
    }

    fn times(&self, m: &Mat2) -> Self {
        let x = &m.alpha * &self.x + &m.beta * &self.y;
        let y = &m.gamma * &self.x + &m.delta * &self.y;
        Self::normalized(x, y, self.den.clone())
    }

    /// Multiplies by `m⁻¹ = adj(m) / det(m)`; `det(m) > 0` for both letters.
    fn times_inverse(&self, m: &Mat2) -> Self {
        let x = &m.delta * &self.x - &m.beta * &self.y;
        let y = -&m.gamma * &self.x + &m.alpha * &self.y;
        Self::normalized(x, y, &self.den * m.det())
    }

    fn region(&self) -> Option<Region> {
        Region::of(&self.x, &self.y)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PingPongViolation {
    pub start: (BigInt, BigInt),
    pub letter: Letter,
    pub exponent: i32,
    /// Image as numerators over a common positive denominator.
    pub image: (BigInt, BigInt, BigInt),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PingPongReport {
    pub checks: u64,
    pub violations: Vec<PingPongViolation>,
}

impl PingPongReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every `v` in `x2_samples` and `0 < |m| <= max_exponent`, checks
/// `M_a^m v ∈ X1`; for every `v` in `x1_samples`, checks `M_b^m v ∈ X2`.
/// Samples must have nonzero entries and lie in their stated region.
pub fn pingpong_region_check(
    x1_samples: &[(BigInt, BigInt)],
    x2_samples: &[(BigInt, BigInt)],
    max_exponent: u32,
) -> Result<PingPongReport> {
    let mut report = PingPongReport::default();
    for (samples, region, letter, target) in [
        (x2_samples, Region::X2, Letter::A, Region::X1),
        (x1_samples, Region::X1, Letter::B, Region::X2),
    ] {
        let m = Mat2::of_letter(letter);
        for (x, y) in samples {
            if x.is_zero() || y.is_zero() {
                return Err(Error::invalid(format!("sample ({x}, {y}) has a zero entry")));
            }
            if Region::of(x, y) != Some(region) {
                return Err(Error::invalid(format!("sample ({x}, {y}) is not in {region:?}")));
            }
            let start = RatPair::integer(x.clone(), y.clone());
            let (mut forward, mut backward) = (start.clone(), start);
            for e in 1..=max_exponent as i32 {
                forward = forward.times(&m);
                backward = backward.times_inverse(&m);
                for (exponent, image) in [(e, &forward), (-e, &backward)] {
                    report.checks += 1;
                    if image.region() != Some(target) {
                        report.violations.push(PingPongViolation {
                            start: (x.clone(), y.clone()),
                            letter,
                            exponent,
                            image: (image.x.clone(), image.y.clone(), image.den.clone()),
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}
