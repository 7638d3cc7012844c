use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Scalar, Surd};

/// Largest total degree a [`BiForm`] may reach.
pub const MAX_DEGREE: u32 = 4;

/// Polynomial in the formal symbols `a` and `b` with scalar coefficients.
///
/// Stored sparsely as `(deg_a, deg_b) -> coefficient` with no zero entries,
/// so structural equality is coefficient-wise equality. Products whose total
/// degree would exceed [`MAX_DEGREE`] panic: nothing in this crate needs them.
#[derive(Clone, Debug, PartialEq)]
pub struct BiForm<T> {
    terms: BTreeMap<(u32, u32), T>,
}

impl<T: Scalar> Default for BiForm<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> BiForm<T> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(coef: T, deg_a: u32, deg_b: u32) -> Self {
        assert!(
            deg_a + deg_b <= MAX_DEGREE,
            "BiForm degree {} exceeds cap {MAX_DEGREE}",
            deg_a + deg_b
        );
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert((deg_a, deg_b), coef);
        }
        Self { terms }
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// The symbol `a`.
    pub fn a() -> Self {
        Self::monomial(T::one(), 1, 0)
    }

    /// The symbol `b`.
    pub fn b() -> Self {
        Self::monomial(T::one(), 0, 1)
    }

    /// `ca·a + cb·b`.
    pub fn linear(ca: T, cb: T) -> Self {
        Self::monomial(ca, 1, 0) + Self::monomial(cb, 0, 1)
    }

    /// `a² − N·b²`, the defect form for radicand `N`.
    pub fn defect(radicand: T) -> Self {
        Self::monomial(T::one(), 2, 0) - Self::monomial(radicand, 0, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, deg_a: u32, deg_b: u32) -> T {
        self.terms
            .get(&(deg_a, deg_b))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &T)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn degree_in_a(&self) -> u32 {
        self.terms.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    pub fn scale(&self, k: &T) -> Self {
        let mut out = Self::zero();
        for (&key, c) in &self.terms {
            out.accumulate(key, c.clone() * k.clone());
        }
        out
    }

    pub fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn accumulate(&mut self, key: (u32, u32), c: T) {
        assert!(
            key.0 + key.1 <= MAX_DEGREE,
            "BiForm degree {} exceeds cap {MAX_DEGREE}",
            key.0 + key.1
        );
        let sum = match self.terms.remove(&key) {
            Some(prev) => prev + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    /// Rewrites every `a²` as `N·b²` until the form is at most linear in `a`.
    pub fn reduce_modulo(&self, radicand: &T) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            let mut coef = c.clone();
            for _ in 0..i / 2 {
                coef = coef * radicand.clone();
            }
            out.accumulate((i % 2, j + 2 * (i / 2)), coef);
        }
        out
    }

    /// Reduction modulo `a² = (n(n+1)/2)·b²`.
    pub fn reduce_triangular(&self, n: u64) -> Self {
        let t = T::from_u64(n * (n + 1) / 2).expect("u64 fits scalar");
        self.reduce_modulo(&t)
    }

    pub fn eval(&self, a: &T, b: &T) -> T {
        self.terms.iter().fold(T::zero(), |acc, (&(i, j), c)| {
            acc + c.clone() * pow(a, i) * pow(b, j)
        })
    }

    /// Value at `a = √N`, `b = 1`. For a form homogeneous of degree `d` this is
    /// the coefficient of `b^d` after substituting `a = √N·b`.
    pub fn eval_at_root(&self, radicand: u64) -> Surd<T> {
        let root = Surd::<T>::sqrt_of(radicand);
        self.terms
            .iter()
            .fold(Surd::rational(T::zero()), |acc, (&(i, _), c)| {
                let mut term = Surd::rational(c.clone());
                for _ in 0..i {
                    term = term * root.clone();
                }
                acc + term
            })
    }
}

fn pow<T: Scalar>(x: &T, k: u32) -> T {
    (0..k).fold(T::one(), |acc, _| acc * x.clone())
}

impl<T: Scalar> Add for BiForm<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (key, c) in rhs.terms {
            self.accumulate(key, c);
        }
        self
    }
}

impl<T: Scalar> Neg for BiForm<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl<T: Scalar> Sub for BiForm<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Scalar> Mul for BiForm<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.accumulate((i1 + i2, j1 + j2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for BiForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest a-degree first
        for (idx, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let (sign, mag) = if c.is_negative() {
                ("-", c.abs())
            } else {
                ("+", c.clone())
            };
            if idx == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mut parts = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                parts.push(mag.to_string());
            }
            for (sym, d) in [("a", i), ("b", j)] {
                match d {
                    0 => {}
                    1 => parts.push(sym.to_string()),
                    _ => parts.push(format!("{sym}^{d}")),
                }
            }
            write!(f, "{}", parts.join("·"))?;
        }
        Ok(())
    }
}
