use super::polygon::convex_intersection;
use super::{Arrangement, GeometryError, LatticePolygon};
use crate::exact_arith::Scalar;

/// An intersection of the small polygons listed in `members`.
#[derive(Debug, Clone, PartialEq)]
pub struct Region<T> {
    pub members: Vec<usize>,
    pub polygon: LatticePolygon<T>,
}

/// A distinct overlap polygon together with its coverage depth.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapRegion<T> {
    pub depth: u32,
    pub polygon: LatticePolygon<T>,
}

/// Areas of an arrangement split by coverage depth, in lattice units.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageCensus<T> {
    pub big_area: T,
    pub total_small_area: T,
    pub union_area: T,
    pub blank_area: T,
    pub exactly2_area: T,
    pub exactly3_area: T,
    /// Every nonempty pairwise intersection, ordered by index pair.
    pub pairwise_regions: Vec<Region<T>>,
    /// Every nonempty triple intersection, ordered by index triple.
    pub triple_regions: Vec<Region<T>>,
    pub max_depth: u32,
}

impl<T: Scalar> CoverageCensus<T> {
    /// `total_small_area − union_area`: area counted more than once, with multiplicity.
    pub fn excess(&self) -> T {
        self.total_small_area.clone() - self.union_area.clone()
    }

    /// Distinct overlap polygons, each tagged 3 if it is a triple
    /// intersection and 2 otherwise, in first-seen order.
    pub fn overlap_regions(&self) -> Vec<OverlapRegion<T>> {
        let mut out: Vec<OverlapRegion<T>> = Vec::new();
        for r in &self.triple_regions {
            if !out.iter().any(|o| o.polygon == r.polygon) {
                out.push(OverlapRegion {
                    depth: 3,
                    polygon: r.polygon.clone(),
                });
            }
        }
        for r in &self.pairwise_regions {
            if !out.iter().any(|o| o.polygon == r.polygon) {
                out.push(OverlapRegion {
                    depth: 2,
                    polygon: r.polygon.clone(),
                });
            }
        }
        out
    }
}

/// Computes the coverage census of `arr`.
///
/// Union area comes from inclusion–exclusion truncated after triples. That is
/// exact only when no point is covered four times, so every 4-wise
/// intersection is computed and must be empty.
pub fn coverage_census<T: Scalar>(
    arr: &Arrangement<T>,
) -> Result<CoverageCensus<T>, GeometryError> {
    let smalls = &arr.smalls;
    let k = smalls.len();

    let mut pairwise_regions = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if let Some(polygon) = convex_intersection(&smalls[i], &smalls[j])? {
                pairwise_regions.push(Region {
                    members: vec![i, j],
                    polygon,
                });
            }
        }
    }

    let mut triple_regions = Vec::new();
    for pair in &pairwise_regions {
        let last = pair.members[1];
        for (m, small) in smalls.iter().enumerate().skip(last + 1) {
            if let Some(polygon) = convex_intersection(&pair.polygon, small)? {
                let mut members = pair.members.clone();
                members.push(m);
                triple_regions.push(Region { members, polygon });
            }
        }
    }

    for triple in &triple_regions {
        let last = triple.members[2];
        for (m, small) in smalls.iter().enumerate().skip(last + 1) {
            if convex_intersection(&triple.polygon, small)?.is_some() {
                let mut members = triple.members.clone();
                members.push(m);
                return Err(GeometryError::DepthExceeded(members));
            }
        }
    }

    let sum = |regions: &[Region<T>]| {
        regions
            .iter()
            .fold(T::zero(), |acc, r| acc + r.polygon.lattice_area())
    };
    let big_area = arr.big.lattice_area();
    let total_small_area = smalls
        .iter()
        .fold(T::zero(), |acc, s| acc + s.lattice_area());
    let pair_sum = sum(&pairwise_regions);
    let triple_sum = sum(&triple_regions);
    let union_area = total_small_area.clone() - pair_sum.clone() + triple_sum.clone();
    let blank_area = big_area.clone() - union_area.clone();
    let exactly2_area = pair_sum - triple_sum.clone() * T::from_int(3);
    let max_depth = if !triple_regions.is_empty() {
        3
    } else if !pairwise_regions.is_empty() {
        2
    } else if k > 0 {
        1
    } else {
        0
    };

    Ok(CoverageCensus {
        big_area,
        total_small_area,
        union_area,
        blank_area,
        exactly2_area,
        exactly3_area: triple_sum,
        pairwise_regions,
        triple_regions,
        max_depth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::ratio;
    use crate::geometry::polygon::{lattice_triangle, orthogonal_square};
    use crate::geometry::{
        build_hexagon6, build_tennenbaum, build_triangular, FigureFamily, LatticePoint,
    };
    use crate::Rational;

    fn r(v: i64) -> Rational {
        ratio(v, 1)
    }

    #[test]
    fn tennenbaum_7_5() {
        let c = coverage_census(&build_tennenbaum(&r(7), &r(5)).unwrap()).unwrap();
        assert_eq!(c.big_area, r(49));
        assert_eq!(c.total_small_area, r(50));
        assert_eq!(c.union_area, r(41));
        assert_eq!(c.exactly2_area, r(9));
        assert_eq!(c.exactly3_area, r(0));
        assert_eq!(c.blank_area, r(8));
        assert_eq!(c.max_depth, 2);
    }

    #[test]
    fn hexagon_5_2() {
        let c = coverage_census(&build_hexagon6(&r(5), &r(2)).unwrap()).unwrap();
        assert_eq!(c.big_area, r(75));
        assert_eq!(c.total_small_area, r(72));
        assert_eq!(c.pairwise_regions.len(), 6);
        assert_eq!(c.exactly2_area, r(6));
        assert_eq!(c.union_area, r(66));
        assert_eq!(c.blank_area, r(9));
        assert_eq!(c.exactly3_area, r(0));
        assert!(c.pairwise_regions.iter().all(|p| p.polygon.len() == 4));
    }

    #[test]
    fn triangular_2_7_4() {
        let c = coverage_census(&build_triangular(2, &r(7), &r(4)).unwrap()).unwrap();
        assert_eq!(c.total_small_area, r(24));
        assert_eq!(c.big_area, ratio(49, 2));
        assert_eq!(c.exactly2_area, ratio(3, 2));
        assert_eq!(c.exactly3_area, r(0));
        assert_eq!(c.blank_area, r(2));
    }

    #[test]
    fn triangular_5_counts() {
        let c = coverage_census(&build_triangular(5, &r(27), &r(7)).unwrap()).unwrap();
        let regions = c.overlap_regions();
        assert_eq!(regions.iter().filter(|o| o.depth == 2).count(), 12);
        assert_eq!(regions.iter().filter(|o| o.depth == 3).count(), 6);
        assert_eq!(c.max_depth, 3);
    }

    #[test]
    fn quadruple_cover_is_rejected() {
        let sq = orthogonal_square(&r(0), &r(0), &r(2));
        let arr = Arrangement {
            family: FigureFamily::Tennenbaum,
            a: r(4),
            b: r(2),
            big: orthogonal_square(&r(0), &r(0), &r(4)),
            smalls: vec![sq.clone(), sq.clone(), sq.clone(), sq],
        };
        assert_eq!(
            coverage_census(&arr),
            Err(GeometryError::DepthExceeded(vec![0, 1, 2, 3]))
        );
    }

    #[test]
    fn disjoint_pieces_have_no_overlap() {
        let arr = Arrangement {
            family: FigureFamily::Triangular(2),
            a: r(4),
            b: r(1),
            big: lattice_triangle(LatticePoint::new(r(0), r(0)), &r(4)),
            smalls: vec![
                lattice_triangle(LatticePoint::new(r(0), r(0)), &r(1)),
                lattice_triangle(LatticePoint::new(r(2), r(0)), &r(1)),
            ],
        };
        let c = coverage_census(&arr).unwrap();
        assert_eq!(c.max_depth, 1);
        assert_eq!(c.union_area, r(1));
        assert_eq!(c.blank_area, r(7));
    }
}
