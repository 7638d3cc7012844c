//! Scalar abstraction shared by the surd, polynomial and geometry code.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, Zero};

/// An ordered field element usable by the generic core.
///
/// Exact results need [`BigRational`]; `f64` and `f32` satisfy the bound too
/// and are handy for rendering or quick cross-checks, with the usual caveats.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + FromPrimitive {
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("small integer fits every scalar")
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    /// Sign as -1, 0 or +1.
    fn sign_i8(&self) -> i8 {
        if self.is_zero() {
            0
        } else if *self > Self::zero() {
            1
        } else {
            -1
        }
    }
}

impl<T> Scalar for T where T: Clone + Debug + PartialOrd + Num + Signed + FromPrimitive {}

/// Scalars that can take exact square roots and round to integers.
pub trait ExactScalar: Scalar {
    /// `Some(r)` with `r >= 0` and `r * r == self` when such an `r` exists in the type.
    fn exact_sqrt(&self) -> Option<Self>;

    /// Integer value, when the scalar is integral.
    fn to_integer(&self) -> Option<BigInt>;

    fn from_integer(v: BigInt) -> Self;
}

impl ExactScalar for BigRational {
    fn exact_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = isqrt_exact(self.numer())?;
        let d = isqrt_exact(self.denom())?;
        Some(BigRational::new(n, d))
    }

    fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.numer().clone())
    }

    fn from_integer(v: BigInt) -> Self {
        BigRational::from_integer(v)
    }
}

fn isqrt_exact(v: &BigInt) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

/// Formats a rational as `p/q` in lowest terms, always with an explicit denominator.
pub fn fraction_string(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` or a bare integer `p`; the result is normalized.
pub fn parse_fraction(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str_radix(n.trim(), 10).ok()?;
            let d = BigInt::from_str_radix(d.trim(), 10).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => BigInt::from_str_radix(s, 10)
            .ok()
            .map(BigRational::from_integer),
    }
}

/// Rational from an integer pair, normalized.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Whether `x` is an integer.
pub fn is_integral(x: &BigRational) -> bool {
    x.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_strings_are_lowest_terms() {
        assert_eq!(fraction_string(&ratio(6, -4)), "-3/2");
        assert_eq!(fraction_string(&ratio(8, 4)), "2/1");
        assert_eq!(parse_fraction("-6/4"), Some(ratio(-3, 2)));
        assert_eq!(parse_fraction("7"), Some(ratio(7, 1)));
        assert_eq!(parse_fraction("1/0"), None);
        assert_eq!(parse_fraction("x/2"), None);
    }

    #[test]
    fn exact_sqrt_of_rationals() {
        assert_eq!(ratio(9, 4).exact_sqrt(), Some(ratio(3, 2)));
        assert_eq!(ratio(2, 1).exact_sqrt(), None);
        assert_eq!(ratio(-4, 1).exact_sqrt(), None);
        assert_eq!(ratio(0, 1).exact_sqrt(), Some(ratio(0, 1)));
    }

    #[test]
    fn float_scalars_satisfy_the_bound() {
        fn three<T: Scalar>() -> T {
            T::two() + T::one()
        }
        assert_eq!(three::<f64>(), 3.0);
        assert_eq!(three::<f32>(), 3.0);
        assert_eq!(three::<BigRational>(), ratio(3, 1));
        assert_eq!((-2.5f64).sign_i8(), -1);
    }
}
