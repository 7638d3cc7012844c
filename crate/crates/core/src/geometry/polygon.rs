use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::GeometryError;
use crate::exact_arith::Scalar;

/// Coordinate system of a polygon.
///
/// `Triangular` uses the basis `e₁ = (1, 0)`, `e₂ = (1/2, √3/2)`, so lattice
/// triangles and hexagons have rational coordinates. The map to Cartesian
/// coordinates is linear with positive determinant (`√3/2`), so convexity,
/// orientation and area ratios can all be decided in lattice coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Orthogonal,
    Triangular,
}

impl Basis {
    /// Squared Euclidean length of the lattice vector `(du, dv)`.
    pub fn squared_length<T: Scalar>(&self, du: &T, dv: &T) -> T {
        match self {
            Basis::Orthogonal => du.clone() * du.clone() + dv.clone() * dv.clone(),
            Basis::Triangular => {
                du.clone() * du.clone() + du.clone() * dv.clone() + dv.clone() * dv.clone()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticePoint<T> {
    pub u: T,
    pub v: T,
}

impl<T: Scalar> LatticePoint<T> {
    pub fn new(u: T, v: T) -> Self {
        Self { u, v }
    }

    pub fn add(&self, du: &T, dv: &T) -> Self {
        Self::new(self.u.clone() + du.clone(), self.v.clone() + dv.clone())
    }

    fn lex_cmp(&self, other: &Self) -> Ordering {
        self.u
            .partial_cmp(&other.u)
            .unwrap_or(Ordering::Equal)
            .then(self.v.partial_cmp(&other.v).unwrap_or(Ordering::Equal))
    }
}

/// `(b − a) × (c − a)`; positive when `a, b, c` turn left.
pub(crate) fn cross<T: Scalar>(a: &LatticePoint<T>, b: &LatticePoint<T>, c: &LatticePoint<T>) -> T {
    (b.u.clone() - a.u.clone()) * (c.v.clone() - a.v.clone())
        - (b.v.clone() - a.v.clone()) * (c.u.clone() - a.u.clone())
}

/// A strictly convex, counter-clockwise polygon.
///
/// Vertices are rotated so the lexicographically smallest `(u, v)` comes
/// first, which makes `==` independent of the starting vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticePolygon<T> {
    basis: Basis,
    vertices: Vec<LatticePoint<T>>,
}

impl<T: Scalar> LatticePolygon<T> {
    pub fn new(basis: Basis, vertices: Vec<LatticePoint<T>>) -> Result<Self, GeometryError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeometryError::InvalidPolygon(format!("{n} vertices")));
        }
        for i in 0..n {
            let (p, q) = (&vertices[i], &vertices[(i + 1) % n]);
            for (k, r) in vertices.iter().enumerate() {
                if k == i || k == (i + 1) % n {
                    continue;
                }
                if cross(p, q, r).sign_i8() <= 0 {
                    return Err(GeometryError::InvalidPolygon(format!(
                        "vertex {k} is not strictly left of edge {i}"
                    )));
                }
            }
        }
        Ok(Self::canonical(basis, vertices))
    }

    fn canonical(basis: Basis, mut vertices: Vec<LatticePoint<T>>) -> Self {
        let start = (0..vertices.len())
            .min_by(|&i, &j| vertices[i].lex_cmp(&vertices[j]))
            .unwrap_or(0);
        vertices.rotate_left(start);
        Self { basis, vertices }
    }

    /// Builds from raw points, dropping repeated and collinear vertices.
    /// Returns `None` when fewer than three corners remain.
    fn from_clipped(basis: Basis, pts: Vec<LatticePoint<T>>) -> Option<Self> {
        let mut pts = pts;
        pts.dedup();
        while pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        loop {
            let n = pts.len();
            if n < 3 {
                return None;
            }
            let drop = (0..n).find(|&i| {
                let prev = &pts[(i + n - 1) % n];
                let next = &pts[(i + 1) % n];
                cross(prev, &pts[i], next).is_zero() || pts[i] == *next
            });
            match drop {
                Some(i) => {
                    pts.remove(i);
                }
                None => break,
            }
        }
        let poly = Self::canonical(basis, pts);
        (poly.lattice_area().sign_i8() > 0).then_some(poly)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn vertices(&self) -> &[LatticePoint<T>] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Shoelace area in lattice units. Multiply by `√3/2` for the Cartesian
    /// area of a triangular-basis polygon.
    pub fn lattice_area(&self) -> T {
        let n = self.vertices.len();
        let twice = (0..n).fold(T::zero(), |acc, i| {
            let p = &self.vertices[i];
            let q = &self.vertices[(i + 1) % n];
            acc + p.u.clone() * q.v.clone() - q.u.clone() * p.v.clone()
        });
        twice / T::two()
    }

    /// Squared edge lengths, edge `i` running from vertex `i` to `i + 1`.
    pub fn squared_sides(&self) -> Vec<T> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let p = &self.vertices[i];
                let q = &self.vertices[(i + 1) % n];
                self.basis
                    .squared_length(&(q.u.clone() - p.u.clone()), &(q.v.clone() - p.v.clone()))
            })
            .collect()
    }

    pub fn squared_distance(&self, i: usize, j: usize) -> T {
        let p = &self.vertices[i];
        let q = &self.vertices[j];
        self.basis
            .squared_length(&(q.u.clone() - p.u.clone()), &(q.v.clone() - p.v.clone()))
    }

    /// `(min_u, min_v, max_u, max_v)`.
    pub fn bounds(&self) -> (T, T, T, T) {
        let first = &self.vertices[0];
        self.vertices.iter().skip(1).fold(
            (
                first.u.clone(),
                first.v.clone(),
                first.u.clone(),
                first.v.clone(),
            ),
            |(lu, lv, hu, hv), p| {
                (
                    min(lu, p.u.clone()),
                    min(lv, p.v.clone()),
                    max(hu, p.u.clone()),
                    max(hv, p.v.clone()),
                )
            },
        )
    }

    /// Point inside or on the boundary.
    pub fn contains_point(&self, p: &LatticePoint<T>) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| cross(&self.vertices[i], &self.vertices[(i + 1) % n], p).sign_i8() >= 0)
    }

    pub fn contains(&self, other: &Self) -> bool {
        other.vertices.iter().all(|p| self.contains_point(p))
    }

    pub fn translate(&self, du: &T, dv: &T) -> Self {
        Self {
            basis: self.basis,
            vertices: self.vertices.iter().map(|p| p.add(du, dv)).collect(),
        }
    }

    /// Clips `self` to the closed left half-plane of the directed line `p → q`.
    fn clip_left_of(&self, p: &LatticePoint<T>, q: &LatticePoint<T>) -> Vec<LatticePoint<T>> {
        let n = self.vertices.len();
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..n {
            let s = &self.vertices[i];
            let e = &self.vertices[(i + 1) % n];
            let ds = cross(p, q, s);
            let de = cross(p, q, e);
            let s_in = ds.sign_i8() >= 0;
            let e_in = de.sign_i8() >= 0;
            if s_in {
                out.push(s.clone());
            }
            if s_in != e_in && !ds.is_zero() && !de.is_zero() {
                let t = ds.clone() / (ds - de);
                out.push(LatticePoint::new(
                    s.u.clone() + (e.u.clone() - s.u.clone()) * t.clone(),
                    s.v.clone() + (e.v.clone() - s.v.clone()) * t,
                ));
            }
        }
        out
    }
}

fn min<T: PartialOrd>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}

fn max<T: PartialOrd>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

fn boxes_overlap<T: Scalar>(p: &(T, T, T, T), q: &(T, T, T, T)) -> bool {
    p.0 < q.2 && q.0 < p.2 && p.1 < q.3 && q.1 < p.3
}

/// Exact intersection of two convex polygons by successive half-plane clips.
///
/// Intersections of zero area (shared edges, touching corners) are `None`.
pub fn convex_intersection<T: Scalar>(
    p: &LatticePolygon<T>,
    q: &LatticePolygon<T>,
) -> Result<Option<LatticePolygon<T>>, GeometryError> {
    if p.basis != q.basis {
        return Err(GeometryError::BasisMismatch);
    }
    if !boxes_overlap(&p.bounds(), &q.bounds()) {
        return Ok(None);
    }
    let n = q.vertices.len();
    let mut current = p.clone();
    for i in 0..n {
        let clipped = current.clip_left_of(&q.vertices[i], &q.vertices[(i + 1) % n]);
        match LatticePolygon::from_clipped(p.basis, clipped) {
            Some(next) => current = next,
            None => return Ok(None),
        }
    }
    Ok(Some(current))
}

/// Upward equilateral triangle with lower-left corner `corner` and side `side`.
pub fn lattice_triangle<T: Scalar>(corner: LatticePoint<T>, side: &T) -> LatticePolygon<T> {
    let z = T::zero();
    let vertices = vec![
        corner.add(&z, &z),
        corner.add(side, &z),
        corner.add(&z, side),
    ];
    LatticePolygon::canonical(Basis::Triangular, vertices)
}

/// Unit directions to the six corners of a lattice hexagon, counter-clockwise.
pub const HEX_DIRECTIONS: [(i64, i64); 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

/// Regular hexagon of side `side` centered at `center`, in the triangular basis.
pub fn lattice_hexagon<T: Scalar>(center: &LatticePoint<T>, side: &T) -> LatticePolygon<T> {
    let vertices = HEX_DIRECTIONS
        .iter()
        .map(|&(du, dv)| {
            center.add(
                &(side.clone() * T::from_int(du)),
                &(side.clone() * T::from_int(dv)),
            )
        })
        .collect();
    LatticePolygon::canonical(Basis::Triangular, vertices)
}

/// Axis-aligned square `[u0, u0 + side] × [v0, v0 + side]`.
pub fn orthogonal_square<T: Scalar>(u0: &T, v0: &T, side: &T) -> LatticePolygon<T> {
    let z = T::zero();
    let c = LatticePoint::new(u0.clone(), v0.clone());
    let vertices = vec![
        c.add(&z, &z),
        c.add(side, &z),
        c.add(side, side),
        c.add(&z, side),
    ];
    LatticePolygon::canonical(Basis::Orthogonal, vertices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::ratio;
    use crate::Rational;

    fn r(v: i64) -> Rational {
        ratio(v, 1)
    }

    fn pt(u: i64, v: i64) -> LatticePoint<Rational> {
        LatticePoint::new(r(u), r(v))
    }

    #[test]
    fn calibration_areas() {
        let tri = lattice_triangle(pt(0, 0), &r(1));
        assert_eq!(tri.lattice_area(), ratio(1, 2));
        let hex = lattice_hexagon(&pt(0, 0), &r(1));
        assert_eq!(hex.lattice_area(), r(3));
        assert!(hex.squared_sides().iter().all(|s| *s == r(1)));
        assert!(tri.squared_sides().iter().all(|s| *s == r(1)));
    }

    #[test]
    fn rejects_non_convex_and_clockwise() {
        let cw = vec![pt(0, 0), pt(0, 1), pt(1, 0)];
        assert!(LatticePolygon::new(Basis::Orthogonal, cw).is_err());
        let collinear = vec![pt(0, 0), pt(1, 0), pt(2, 0), pt(0, 1)];
        assert!(LatticePolygon::new(Basis::Orthogonal, collinear).is_err());
        let dart = vec![pt(0, 0), pt(4, 0), pt(1, 1), pt(0, 4)];
        assert!(LatticePolygon::new(Basis::Orthogonal, dart).is_err());
        let ok = vec![pt(1, 0), pt(1, 1), pt(0, 0)];
        let p = LatticePolygon::new(Basis::Orthogonal, ok).unwrap();
        assert_eq!(p.vertices()[0], pt(0, 0));
    }

    #[test]
    fn square_intersection() {
        let p = orthogonal_square(&r(0), &r(0), &r(2));
        let q = orthogonal_square(&r(1), &r(1), &r(2));
        let i = convex_intersection(&p, &q).unwrap().unwrap();
        assert_eq!(i, orthogonal_square(&r(1), &r(1), &r(1)));
    }

    #[test]
    fn self_intersection_is_identity() {
        let hex = lattice_hexagon(&pt(2, -1), &r(3));
        assert_eq!(convex_intersection(&hex, &hex).unwrap().unwrap(), hex);
    }

    #[test]
    fn touching_is_empty() {
        let a = lattice_triangle(pt(0, 0), &r(2));
        let b = lattice_triangle(pt(2, 0), &r(2));
        assert_eq!(convex_intersection(&a, &b).unwrap(), None);
        // shared edge along u + v = 2
        let down =
            LatticePolygon::new(Basis::Triangular, vec![pt(2, 0), pt(2, 2), pt(0, 2)]).unwrap();
        assert_eq!(convex_intersection(&a, &down).unwrap(), None);
    }

    #[test]
    fn basis_mismatch() {
        let a = lattice_triangle(pt(0, 0), &r(2));
        let b = orthogonal_square(&r(0), &r(0), &r(1));
        assert_eq!(
            convex_intersection(&a, &b),
            Err(GeometryError::BasisMismatch)
        );
    }

    #[test]
    fn overlapping_triangles_meet_in_a_triangle() {
        let a = lattice_triangle(pt(0, 0), &r(4));
        let b = lattice_triangle(pt(3, 0), &r(4));
        let i = convex_intersection(&a, &b).unwrap().unwrap();
        assert_eq!(i, lattice_triangle(pt(3, 0), &r(1)));
    }

    #[test]
    fn float_clipping_matches_exact() {
        let p = lattice_hexagon(&LatticePoint::new(0.0f64, 0.0), &5.0);
        let q = lattice_hexagon(&LatticePoint::new(3.0f64, 0.0), &2.0);
        let i = convex_intersection(&p, &q).unwrap().unwrap();
        let pe = lattice_hexagon(&pt(0, 0), &r(5));
        let qe = lattice_hexagon(&pt(3, 0), &r(2));
        let ie = convex_intersection(&pe, &qe).unwrap().unwrap();
        let exact: f64 = num_traits::ToPrimitive::to_f64(&ie.lattice_area()).unwrap();
        assert!((i.lattice_area() - exact).abs() < 1e-12);
    }
}
