//! Builders for the square, hexagon and triangle figures.

use std::fmt;

use num_bigint::BigInt;

use super::polygon::{lattice_hexagon, lattice_triangle, orthogonal_square, HEX_DIRECTIONS};
use super::{GeometryError, LatticePoint, LatticePolygon};
use crate::descent::DescentFamily;
use crate::exact_arith::Scalar;
use crate::Rational;

/// Which figure an arrangement reproduces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FigureFamily {
    /// Two `b`-squares in opposite corners of an `a`-square.
    Tennenbaum,
    /// Six `b`-hexagons in the corners of an `a`-hexagon.
    Hex6,
    /// `T_n` `b`-triangles in `n` rows inside an `a`-triangle.
    Triangular(u64),
}

impl FigureFamily {
    pub fn descent_family(&self) -> DescentFamily {
        match *self {
            Self::Tennenbaum => DescentFamily::Sqrt2,
            Self::Hex6 => DescentFamily::Hex6,
            Self::Triangular(n) if n % 2 == 0 => DescentFamily::TriangularEven(n),
            Self::Triangular(n) => DescentFamily::TriangularOdd(n),
        }
    }

    pub fn from_descent(family: DescentFamily) -> Self {
        match family {
            DescentFamily::Sqrt2 => Self::Tennenbaum,
            DescentFamily::Hex6 => Self::Hex6,
            DescentFamily::TriangularEven(n) | DescentFamily::TriangularOdd(n) => {
                Self::Triangular(n)
            }
        }
    }

    pub fn radicand(&self) -> u64 {
        self.descent_family().radicand()
    }

    /// Number of small polygons.
    pub fn piece_count(&self) -> u64 {
        match *self {
            Self::Tennenbaum => 2,
            Self::Hex6 => 6,
            Self::Triangular(n) => n * (n + 1) / 2,
        }
    }

    /// Lattice area of the unit shape: square 1, hexagon 3, triangle 1/2.
    pub fn unit_area<T: Scalar>(&self) -> T {
        match self {
            Self::Tennenbaum => T::one(),
            Self::Hex6 => T::from_int(3),
            Self::Triangular(_) => T::one() / T::two(),
        }
    }
}

impl fmt::Display for FigureFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Tennenbaum => write!(f, "tennenbaum"),
            Self::Hex6 => write!(f, "hex6"),
            Self::Triangular(n) => write!(f, "triangular(n={n})"),
        }
    }
}

/// A big polygon of side `a` covered by small polygons of side `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Arrangement<T> {
    pub family: FigureFamily,
    pub a: T,
    pub b: T,
    pub big: LatticePolygon<T>,
    pub smalls: Vec<LatticePolygon<T>>,
}

impl<T: Scalar> Arrangement<T> {
    fn checked(
        family: FigureFamily,
        a: &T,
        b: &T,
        big: LatticePolygon<T>,
        smalls: Vec<LatticePolygon<T>>,
    ) -> Result<Self, GeometryError> {
        if let Some(i) = smalls.iter().position(|s| !big.contains(s)) {
            return Err(GeometryError::NotContained(i));
        }
        Ok(Self {
            family,
            a: a.clone(),
            b: b.clone(),
            big,
            smalls,
        })
    }

    pub fn build(family: FigureFamily, a: &T, b: &T) -> Result<Self, GeometryError> {
        match family {
            FigureFamily::Tennenbaum => build_tennenbaum(a, b),
            FigureFamily::Hex6 => build_hexagon6(a, b),
            FigureFamily::Triangular(n) => build_triangular(n, a, b),
        }
    }
}

impl Arrangement<Rational> {
    pub fn from_integers(
        family: FigureFamily,
        a: &BigInt,
        b: &BigInt,
    ) -> Result<Self, GeometryError> {
        Self::build(
            family,
            &Rational::from_integer(a.clone()),
            &Rational::from_integer(b.clone()),
        )
    }
}

fn require<T: Scalar>(lhs: &T, rhs: &T, constraint: &str) -> Result<(), GeometryError> {
    if lhs < rhs {
        Ok(())
    } else {
        Err(GeometryError::OutOfWindow(constraint.to_string()))
    }
}

fn require_positive_b<T: Scalar>(b: &T) -> Result<(), GeometryError> {
    require(&T::zero(), b, "0 < b")
}

/// Big square `[0, a]²` with `b`-squares at `[0, b]²` and `[a − b, a]²`.
pub fn build_tennenbaum<T: Scalar>(a: &T, b: &T) -> Result<Arrangement<T>, GeometryError> {
    require_positive_b(b)?;
    require(b, a, "b < a")?;
    require(a, &(b.clone() * T::two()), "a < 2b")?;
    let z = T::zero();
    let big = orthogonal_square(&z, &z, a);
    let off = a.clone() - b.clone();
    let smalls = vec![
        orthogonal_square(&z, &z, b),
        orthogonal_square(&off, &off, b),
    ];
    Arrangement::checked(FigureFamily::Tennenbaum, a, b, big, smalls)
}

/// Big hexagon of side `a` at the origin; small hexagon `i` centered at
/// `(a − b)·dᵢ`, so its outer corner is the big corner `a·dᵢ`.
pub fn build_hexagon6<T: Scalar>(a: &T, b: &T) -> Result<Arrangement<T>, GeometryError> {
    require_positive_b(b)?;
    require(&(b.clone() * T::two()), a, "2b < a")?;
    require(a, &(b.clone() * T::from_int(3)), "a < 3b")?;
    let origin = LatticePoint::new(T::zero(), T::zero());
    let big = lattice_hexagon(&origin, a);
    let off = a.clone() - b.clone();
    let smalls = HEX_DIRECTIONS
        .iter()
        .map(|&(du, dv)| {
            let center =
                LatticePoint::new(off.clone() * T::from_int(du), off.clone() * T::from_int(dv));
            lattice_hexagon(&center, b)
        })
        .collect();
    Arrangement::checked(FigureFamily::Hex6, a, b, big, smalls)
}

/// Slide distance `t = (nb − a)/(n − 1)` between consecutive rows.
pub fn triangular_overlap<T: Scalar>(n: u64, a: &T, b: &T) -> T {
    let n = T::from_u64(n).expect("u64 fits scalar");
    (n.clone() * b.clone() - a.clone()) / (n - T::one())
}

/// Blank side `s = b − 2t = (2a − (n+1)b)/(n − 1)`.
pub fn triangular_gap<T: Scalar>(n: u64, a: &T, b: &T) -> T {
    b.clone() - triangular_overlap(n, a, b) * T::two()
}

/// Big triangle `(0,0), (a,0), (0,a)`; small triangle `(i, j)` with
/// `1 ≤ j ≤ i ≤ n` has lower-left corner `((j−1)(b−t), (a−b) − (i−1)(b−t))`.
pub fn build_triangular<T: Scalar>(n: u64, a: &T, b: &T) -> Result<Arrangement<T>, GeometryError> {
    if n < 2 {
        return Err(GeometryError::BadIndex(n));
    }
    require_positive_b(b)?;
    let nn = T::from_u64(n).expect("u64 fits scalar");
    require(
        &(b.clone() * (nn.clone() + T::one())),
        &(a.clone() * T::two()),
        "(n+1)b < 2a",
    )?;
    require(a, &(b.clone() * nn), "a < nb")?;
    let t = triangular_overlap(n, a, b);
    let step = b.clone() - t;
    let top = a.clone() - b.clone();
    let origin = LatticePoint::new(T::zero(), T::zero());
    let big = lattice_triangle(origin, a);
    let mut smalls = Vec::with_capacity((n * (n + 1) / 2) as usize);
    for i in 1..=n {
        for j in 1..=i {
            let u = step.clone() * T::from_u64(j - 1).expect("u64 fits scalar");
            let v = top.clone() - step.clone() * T::from_u64(i - 1).expect("u64 fits scalar");
            smalls.push(lattice_triangle(LatticePoint::new(u, v), b));
        }
    }
    Arrangement::checked(FigureFamily::Triangular(n), a, b, big, smalls)
}
