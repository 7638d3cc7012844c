use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::ToPrimitive;

use super::{ArithError, Scalar};
use crate::number_theory::squarefree_decompose;

/// Placeholder radicand carried by surds whose irrational part is zero.
const DEGENERATE_RADICAND: u64 = 2;

/// Exact value `rat + coef·√radicand` over a scalar field.
///
/// The radicand is square-free and greater than one. A surd with `coef == 0`
/// is a plain rational; its radicand is kept but ignored by comparisons and
/// arithmetic, so it combines freely with surds of any radicand.
#[derive(Clone, Debug)]
pub struct Surd<T> {
    rat: T,
    coef: T,
    radicand: u64,
}

fn is_squarefree_above_one(n: u64) -> bool {
    n > 1 && squarefree_decompose(n).square_root == 1
}

impl<T: Scalar> Surd<T> {
    pub fn new(rat: T, coef: T, radicand: u64) -> Result<Self, ArithError> {
        if !is_squarefree_above_one(radicand) {
            return Err(ArithError::BadRadicand(radicand));
        }
        Ok(Self {
            rat,
            coef,
            radicand,
        })
    }

    pub fn rational(rat: T) -> Self {
        Self {
            rat,
            coef: T::zero(),
            radicand: DEGENERATE_RADICAND,
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::rational(T::from_int(v))
    }

    /// `√n` in normal form: `m2·√m1` for `n = m1·m2²`, or the integer root
    /// when `n` is a perfect square.
    pub fn sqrt_of(n: u64) -> Self {
        if n == 0 {
            return Self::rational(T::zero());
        }
        let d = squarefree_decompose(n);
        let root = T::from_u64(d.square_root).expect("u64 fits scalar");
        if d.squarefree_part == 1 {
            Self::rational(root)
        } else {
            Self {
                rat: T::zero(),
                coef: root,
                radicand: d.squarefree_part,
            }
        }
    }

    pub fn rat(&self) -> &T {
        &self.rat
    }

    pub fn coef(&self) -> &T {
        &self.coef
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.coef.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.coef.is_zero()
    }

    fn radicand_scalar(&self) -> T {
        T::from_u64(self.radicand).expect("u64 fits scalar")
    }

    /// Exact sign of `rat + coef·√N`, decided by comparing `rat²` with `coef²·N`.
    pub fn sign(&self) -> i8 {
        let r = self.rat.sign_i8();
        let c = self.coef.sign_i8();
        if c == 0 {
            return r;
        }
        if r == 0 || r == c {
            return c;
        }
        let lhs = self.rat.clone() * self.rat.clone();
        let rhs = self.coef.clone() * self.coef.clone() * self.radicand_scalar();
        match lhs.partial_cmp(&rhs) {
            Some(Ordering::Greater) => r,
            Some(Ordering::Less) => c,
            _ => 0,
        }
    }

    pub fn conjugate(&self) -> Self {
        Self {
            rat: self.rat.clone(),
            coef: -self.coef.clone(),
            radicand: self.radicand,
        }
    }

    /// Field norm `rat² − coef²·N`.
    pub fn norm(&self) -> T {
        self.rat.clone() * self.rat.clone()
            - self.coef.clone() * self.coef.clone() * self.radicand_scalar()
    }

    pub fn scale(&self, k: &T) -> Self {
        Self {
            rat: self.rat.clone() * k.clone(),
            coef: self.coef.clone() * k.clone(),
            radicand: self.radicand,
        }
    }

    /// `None` when dividing by zero.
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let n = rhs.norm();
        let num = self.clone() * rhs.conjugate();
        Some(Self {
            rat: num.rat / n.clone(),
            coef: num.coef / n,
            radicand: num.radicand,
        })
    }

    fn joint_radicand(&self, rhs: &Self) -> u64 {
        match (self.coef.is_zero(), rhs.coef.is_zero()) {
            (true, true) => DEGENERATE_RADICAND,
            (true, false) => rhs.radicand,
            (false, true) => self.radicand,
            (false, false) => {
                assert_eq!(
                    self.radicand, rhs.radicand,
                    "surd arithmetic across different radicands"
                );
                self.radicand
            }
        }
    }
}

impl<T: Scalar + ToPrimitive> Surd<T> {
    /// Floating approximation, for display only.
    pub fn approx_f64(&self) -> f64 {
        let r = self.rat.to_f64().unwrap_or(f64::NAN);
        let c = self.coef.to_f64().unwrap_or(f64::NAN);
        r + c * (self.radicand as f64).sqrt()
    }
}

impl<T: Scalar> PartialEq for Surd<T> {
    fn eq(&self, other: &Self) -> bool {
        self.rat == other.rat
            && self.coef == other.coef
            && (self.coef.is_zero() || self.radicand == other.radicand)
    }
}

impl<T: Scalar> PartialOrd for Surd<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(match (self.clone() - other.clone()).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }
}

impl<T: Scalar> Add for Surd<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let radicand = self.joint_radicand(&rhs);
        Self {
            rat: self.rat + rhs.rat,
            coef: self.coef + rhs.coef,
            radicand,
        }
    }
}

impl<T: Scalar> Sub for Surd<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Scalar> Neg for Surd<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            rat: -self.rat,
            coef: -self.coef,
            radicand: self.radicand,
        }
    }
}

impl<T: Scalar> Mul for Surd<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let radicand = self.joint_radicand(&rhs);
        let n = T::from_u64(radicand).expect("u64 fits scalar");
        Self {
            rat: self.rat.clone() * rhs.rat.clone() + self.coef.clone() * rhs.coef.clone() * n,
            coef: self.rat * rhs.coef + self.coef * rhs.rat,
            radicand,
        }
    }
}

impl<T: Scalar> Div for Surd<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self.checked_div(&rhs).expect("surd division by zero")
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Surd<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coef.is_zero() {
            return write!(f, "{}", self.rat);
        }
        if !self.rat.is_zero() {
            write!(f, "{} ", self.rat)?;
            if self.coef.is_negative() {
                write!(f, "- ")?;
            } else {
                write!(f, "+ ")?;
            }
            write!(f, "{}·√{}", self.coef.abs(), self.radicand)
        } else {
            write!(f, "{}·√{}", self.coef, self.radicand)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::scalar::ratio;
    use crate::Rational;

    fn s(r: i64, c: i64, n: u64) -> Surd<Rational> {
        Surd::new(ratio(r, 1), ratio(c, 1), n).unwrap()
    }

    #[test]
    fn sign_examples() {
        assert_eq!(s(3, -1, 6).sign(), 1);
        assert_eq!(s(2, -1, 6).sign(), -1);
        assert_eq!(s(0, 0, 6).sign(), 0);
        assert_eq!(s(-3, 1, 6).sign(), -1);
        assert_eq!(s(-2, 1, 6).sign(), 1);
        assert_eq!(s(0, -1, 6).sign(), -1);
        assert_eq!(s(5, 0, 6).sign(), 1);
    }

    #[test]
    fn radicand_must_be_squarefree() {
        assert!(matches!(
            Surd::new(ratio(0, 1), ratio(1, 1), 12),
            Err(ArithError::BadRadicand(12))
        ));
        assert!(Surd::<Rational>::new(ratio(0, 1), ratio(1, 1), 1).is_err());
        assert!(Surd::<Rational>::new(ratio(0, 1), ratio(1, 1), 15).is_ok());
    }

    #[test]
    fn sqrt_of_normalizes() {
        let r = Surd::<Rational>::sqrt_of(28);
        assert_eq!(r, s(0, 2, 7));
        assert_eq!(Surd::<Rational>::sqrt_of(36), Surd::from_int(6));
        let r6 = Surd::<Rational>::sqrt_of(6);
        assert_eq!(r6.clone() * r6, Surd::from_int(6));
    }

    #[test]
    fn division_rationalizes() {
        // (2 − √2)/(√2 − 1) = √2
        let num = s(2, -1, 2);
        let den = s(-1, 1, 2);
        assert_eq!(num / den, s(0, 1, 2));
        assert!(s(1, 1, 3).checked_div(&Surd::from_int(0)).is_none());
    }

    #[test]
    fn ordering_is_exact() {
        assert!(Surd::<Rational>::sqrt_of(17) > Surd::from_int(4));
        assert!(Surd::<Rational>::sqrt_of(13) + Surd::from_int(2) > Surd::from_int(5));
        assert!(Surd::<Rational>::sqrt_of(13) + Surd::from_int(2) < Surd::from_int(6));
    }

    #[test]
    fn float_surd_agrees_on_easy_cases() {
        let x = Surd::<f64>::new(3.0, -1.0, 6).unwrap();
        assert_eq!(x.sign(), 1);
    }

    #[test]
    fn display() {
        assert_eq!(s(3, -1, 6).to_string(), "3 - 1·√6");
        assert_eq!(s(0, 2, 7).to_string(), "2·√7");
        assert_eq!(s(4, 0, 7).to_string(), "4");
    }
}
