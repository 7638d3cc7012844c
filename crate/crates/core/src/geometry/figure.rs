//! Checks a measured census against the closed forms of each figure, and
//! reads the next descent pair off the measured side lengths.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::census::OverlapRegion;
use super::{FigureFamily, GeometryError};
use crate::exact_arith::{fraction_string, ExactScalar};
use crate::{ExactArrangement, ExactCensus, ExactPolygon, Rational};

/// One named identity with both sides rendered as exact strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl IdentityCheck {
    pub fn exact(name: impl Into<String>, lhs: &Rational, rhs: &Rational) -> Self {
        Self {
            name: name.into(),
            lhs: fraction_string(lhs),
            rhs: fraction_string(rhs),
            pass: lhs == rhs,
        }
    }

    pub fn count(name: impl Into<String>, lhs: usize, rhs: usize) -> Self {
        Self {
            name: name.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass: lhs == rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FigureReport {
    pub checks: Vec<IdentityCheck>,
}

impl FigureReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

fn int(v: u64) -> Rational {
    Rational::from_integer(v.into())
}

fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

fn sum_area<'a>(regions: impl Iterator<Item = &'a OverlapRegion<Rational>>) -> Rational {
    regions.fold(Rational::zero(), |acc, r| acc + r.polygon.lattice_area())
}

fn all_sides(poly: &ExactPolygon, sq: &Rational) -> bool {
    poly.squared_sides().iter().all(|s| s == sq)
}

/// `(2b − a, a − b)` for squares, `(3b − a, a − 2b)` for hexagons and
/// `(t, s)` for triangles: the predicted overlap and blank sides.
pub fn predicted_sides(family: FigureFamily, a: &Rational, b: &Rational) -> (Rational, Rational) {
    match family {
        FigureFamily::Tennenbaum => (b * int(2) - a, a - b),
        FigureFamily::Hex6 => (b * int(3) - a, a - b * int(2)),
        FigureFamily::Triangular(n) => (
            super::triangular_overlap(n, a, b),
            super::triangular_gap(n, a, b),
        ),
    }
}

/// Checks structure, areas and the area balance of a measured census.
///
/// Returns the full report on success and [`GeometryError::Mismatch`] with the
/// same report when any identity fails.
pub fn verify_figure(
    arr: &ExactArrangement,
    census: &ExactCensus,
) -> Result<FigureReport, GeometryError> {
    let (a, b) = (&arr.a, &arr.b);
    let family = arr.family;
    let (t, s) = predicted_sides(family, a, b);
    let t2 = &t * &t;
    let s2 = &s * &s;
    let regions = census.overlap_regions();
    let doubles: Vec<_> = regions.iter().filter(|r| r.depth == 2).collect();
    let triples: Vec<_> = regions.iter().filter(|r| r.depth == 3).collect();
    let mut checks = Vec::new();

    let (want_doubles, want_triples) = match family {
        FigureFamily::Tennenbaum => (1, 0),
        FigureFamily::Hex6 => (6, 0),
        FigureFamily::Triangular(n) => (3 * (n - 1), (n - 2) * (n - 1) / 2),
    };
    checks.push(IdentityCheck::count(
        "doubly covered regions",
        doubles.len(),
        want_doubles as usize,
    ));
    checks.push(IdentityCheck::count(
        "triply covered regions",
        triples.len(),
        want_triples as usize,
    ));
    checks.push(IdentityCheck::count(
        "max depth <= 3",
        census.max_depth.min(3) as usize,
        census.max_depth as usize,
    ));

    // shape of every overlap region
    let shaped = regions
        .iter()
        .filter(|r| match family {
            FigureFamily::Tennenbaum => r.polygon.len() == 4 && all_sides(&r.polygon, &t2),
            FigureFamily::Hex6 => {
                r.polygon.len() == 4
                    && all_sides(&r.polygon, &t2)
                    && (r.polygon.squared_distance(0, 2) == t2
                        || r.polygon.squared_distance(1, 3) == t2)
            }
            FigureFamily::Triangular(_) => r.polygon.len() == 3 && all_sides(&r.polygon, &t2),
        })
        .count();
    let shape_name = match family {
        FigureFamily::Tennenbaum => "overlap squares of side 2b-a",
        FigureFamily::Hex6 => "overlap rhombi of two triangles of side 3b-a",
        FigureFamily::Triangular(_) => "overlap triangles of side t",
    };
    checks.push(IdentityCheck::count(shape_name, shaped, regions.len()));

    // the depth classification partitions the overlap area
    let d2 = sum_area(doubles.iter().copied());
    let d3 = sum_area(triples.iter().copied());
    checks.push(IdentityCheck::exact(
        "exactly-2 area = sum of depth-2 regions",
        &census.exactly2_area,
        &d2,
    ));
    checks.push(IdentityCheck::exact(
        "exactly-3 area = sum of depth-3 regions",
        &census.exactly3_area,
        &d3,
    ));
    let region_excess = &d2 + &d3 * int(2);
    checks.push(IdentityCheck::exact(
        "excess = exactly-2 + 2 exactly-3",
        &census.excess(),
        &region_excess,
    ));

    let (excess_form, blank_form) = match family {
        FigureFamily::Tennenbaum => (t2.clone(), &s2 * int(2)),
        FigureFamily::Hex6 => (&t2 * int(12) * half(), &s2 * int(18) * half()),
        FigureFamily::Triangular(n) => (
            &t2 * int((n - 1) * (n + 1)) * half(),
            &s2 * int((n - 1) * n / 2) * half(),
        ),
    };
    checks.push(IdentityCheck::exact(
        "excess closed form",
        &census.excess(),
        &excess_form,
    ));
    checks.push(IdentityCheck::exact(
        "blank closed form",
        &census.blank_area,
        &blank_form,
    ));
    checks.push(IdentityCheck::count(
        "blank area >= 0",
        usize::from(!census.blank_area.is_negative()),
        1,
    ));

    let balance = census.excess() - census.blank_area.clone();
    let surplus = census.total_small_area.clone() - census.big_area.clone();
    checks.push(IdentityCheck::exact(
        "excess - blank = sum(small) - big",
        &balance,
        &surplus,
    ));
    let defect = a * a - b * b * int(family.radicand());
    let unit: Rational = family.unit_area();
    checks.push(IdentityCheck::exact(
        "sum(small) - big = -unit_area * (a^2 - N b^2)",
        &surplus,
        &(-unit * defect),
    ));

    let report = FigureReport { checks };
    if report.passed() {
        Ok(report)
    } else {
        Err(GeometryError::Mismatch(report))
    }
}

fn measured_root(x: &Rational, what: &str) -> Result<Rational, GeometryError> {
    x.exact_sqrt()
        .ok_or_else(|| GeometryError::MeasurementFailed(format!("{what} is not a rational square")))
}

fn to_integer(x: Rational, what: &str) -> Result<BigInt, GeometryError> {
    ExactScalar::to_integer(&x)
        .ok_or_else(|| GeometryError::MeasurementFailed(format!("{what} = {x} is not an integer")))
}

/// Side lengths `(overlap, blank)` measured from the census alone.
pub fn measured_sides(
    family: FigureFamily,
    census: &ExactCensus,
) -> Result<(Rational, Rational), GeometryError> {
    let region = census
        .overlap_regions()
        .into_iter()
        .find(|r| r.depth == 2)
        .ok_or_else(|| GeometryError::MeasurementFailed("no overlap region".into()))?;
    let overlap = measured_root(&region.polygon.squared_sides()[0], "overlap side")?;
    let blank_sq = match family {
        FigureFamily::Tennenbaum => census.blank_area.clone() / int(2),
        FigureFamily::Hex6 => census.blank_area.clone() / int(9),
        FigureFamily::Triangular(n) => census.blank_area.clone() * int(4) / int(n * (n - 1)),
    };
    let blank = measured_root(&blank_sq, "blank side")?;
    Ok((overlap, blank))
}

/// The next descent pair, computed from measured sides only.
pub fn census_to_descent(
    arr: &ExactArrangement,
    census: &ExactCensus,
) -> Result<(BigInt, BigInt), GeometryError> {
    let (t, s) = measured_sides(arr.family, census)?;
    let (a_next, b_next) = match arr.family {
        FigureFamily::Tennenbaum => (t, s),
        FigureFamily::Hex6 => (s * int(3), t),
        FigureFamily::Triangular(n) if n % 2 == 0 => (s * int(n / 2 * (n - 1)), t * int(n - 1)),
        FigureFamily::Triangular(n) => (t * int(n.div_ceil(2) * (n - 1)), s * int(n - 1) * half()),
    };
    Ok((to_integer(a_next, "a'")?, to_integer(b_next, "b'")?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::ratio;
    use crate::geometry::{coverage_census, Arrangement};

    fn run(family: FigureFamily, a: i64, b: i64) -> (ExactArrangement, ExactCensus) {
        let arr = Arrangement::from_integers(family, &a.into(), &b.into()).unwrap();
        let census = coverage_census(&arr).unwrap();
        (arr, census)
    }

    fn pair(p: (BigInt, BigInt)) -> (BigInt, BigInt) {
        p
    }

    #[test]
    fn figures_verify() {
        for (f, a, b) in [
            (FigureFamily::Tennenbaum, 7, 5),
            (FigureFamily::Hex6, 5, 2),
            (FigureFamily::Hex6, 22, 9),
            (FigureFamily::Triangular(2), 7, 4),
            (FigureFamily::Triangular(5), 27, 7),
        ] {
            let (arr, census) = run(f, a, b);
            let report = verify_figure(&arr, &census).unwrap();
            assert!(report.passed(), "{f} ({a},{b})");
        }
    }

    #[test]
    fn balance_examples() {
        let (_, c) = run(FigureFamily::Hex6, 5, 2);
        assert_eq!(c.excess() - c.blank_area.clone(), ratio(-3, 1));
        let (_, c) = run(FigureFamily::Triangular(2), 7, 4);
        assert_eq!(c.excess() - c.blank_area.clone(), ratio(-1, 2));
    }

    #[test]
    fn descent_from_figures() {
        let (arr, c) = run(FigureFamily::Tennenbaum, 7, 5);
        assert_eq!(
            pair(census_to_descent(&arr, &c).unwrap()),
            (3.into(), 2.into())
        );
        let (arr, c) = run(FigureFamily::Hex6, 22, 9);
        assert_eq!(census_to_descent(&arr, &c).unwrap(), (12.into(), 5.into()));
        let (arr, c) = run(FigureFamily::Triangular(3), 5, 2);
        assert_eq!(census_to_descent(&arr, &c).unwrap(), (2.into(), 1.into()));
    }

    #[test]
    fn tampered_census_reports_every_failure() {
        let (arr, mut c) = run(FigureFamily::Triangular(5), 27, 7);
        c.blank_area += ratio(1, 1);
        match verify_figure(&arr, &c) {
            Err(GeometryError::Mismatch(report)) => {
                let names: Vec<_> = report.failures().map(|f| f.name.as_str()).collect();
                assert!(names.contains(&"blank closed form"));
                assert!(names.contains(&"excess - blank = sum(small) - big"));
                assert!(!report.passed());
            }
            other => panic!("expected mismatch, got {other:?}"),
        }
    }
}
