//! Exact rational scalars, the coefficient ground field for everything else.
//!
//! Backed by `num_rational::BigRational`, which keeps every value in lowest
//! terms with a positive denominator. No floating point anywhere.

use num_bigint::BigInt;

pub use num_rational::BigRational as Rat;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n/d`, reduced to lowest terms. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};

    #[test]
    fn reduced_with_positive_denominator() {
        let r = ratio(4, -6);
        assert_eq!(r, ratio(-2, 3));
        assert!(r.denom().is_positive());
        assert_eq!(r.numer().gcd(r.denom()), BigInt::one());
    }

    #[test]
    fn zero_is_zero_over_one() {
        let z = ratio(0, 7);
        assert!(z.is_zero());
        assert_eq!(*z.denom(), BigInt::one());
    }

    #[test]
    fn arithmetic_stays_reduced() {
        let a = ratio(1, 6) + ratio(1, 3); // 1/2
        assert_eq!(a, ratio(1, 2));
        let b = ratio(2, 3) * ratio(9, 4); // 3/2
        assert_eq!(b, ratio(3, 2));
        assert_eq!(b.numer().gcd(b.denom()), BigInt::one());
    }
}
