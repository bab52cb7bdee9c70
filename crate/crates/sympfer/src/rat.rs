//! Exact rational scalars. Every coefficient in the crate lives here;
//! there is no floating point anywhere.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always reduced, denominator positive.
pub type Rat = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Half-integer from its doubled value.
pub fn rat_half(doubled: i64) -> Rat {
    Rat::new(BigInt::from(doubled), BigInt::from(2))
}

/// Generalized binomial coefficient binom(x, k) = x(x-1)...(x-k+1)/k!
/// for an arbitrary rational top argument.
pub fn binom_rat(x: &Rat, k: u64) -> Rat {
    let mut num = Rat::one();
    for j in 0..k {
        num *= x - rat_int(j as i64);
    }
    let mut fact = BigInt::one();
    for j in 2..=k {
        fact *= BigInt::from(j);
    }
    num / Rat::from_integer(fact)
}

/// Ordinary binomial over integer arguments; zero outside the Pascal range
/// only when the top is a non-negative integer smaller than k.
pub fn binom_int(n: i64, k: u64) -> Rat {
    binom_rat(&rat_int(n), k)
}

pub fn is_zero(r: &Rat) -> bool {
    r.is_zero()
}

/// Deterministic text form "num/den" (den omitted when 1).
pub fn rat_text(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse "num" or "num/den".
pub fn rat_parse(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(Rat::from_integer(n))
        }
    }
}

pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom_int(5, 2), rat_int(10));
        assert_eq!(binom_int(4, 0), rat_int(1));
        assert_eq!(binom_int(3, 5), rat_int(0));
        // generalized: binom(-1/2, 2) = (-1/2)(-3/2)/2 = 3/8
        assert_eq!(binom_rat(&rat(-1, 2), 2), rat(3, 8));
        // negative integer top never truncates
        assert_eq!(binom_int(-2, 2), rat_int(3));
    }

    #[test]
    fn text_round_trip() {
        for r in [rat(3, 4), rat_int(-7), rat(-1, 8)] {
            assert_eq!(rat_parse(&rat_text(&r)).unwrap(), r);
        }
    }
}
