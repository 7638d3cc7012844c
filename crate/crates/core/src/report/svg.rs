//! Deterministic SVG 1.1 rendering of an arrangement, colored by coverage depth.
//!
//! This is the only place where coordinates become floating point.

use std::fmt::Write as _;
use std::path::Path;

use num_traits::ToPrimitive;

use super::ReportError;
use crate::exact_arith::Scalar;
use crate::geometry::{Arrangement, Basis, CoverageCensus, LatticePolygon};

const SQRT3_OVER_2: f64 = 0.8660254;

/// Fill colors for depths 0 through 3.
pub const DEPTH_COLORS: [&str; 4] = ["white", "lightblue", "orange", "red"];

#[derive(Debug, Clone, PartialEq)]
pub struct SvgPolygon {
    pub depth: u32,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SvgScene {
    /// `(min_x, min_y, width, height)` in SVG user units.
    pub view_box: (f64, f64, f64, f64),
    /// Painted in order: big polygon, small polygons, then overlaps.
    pub polygons: Vec<SvgPolygon>,
    pub stroke_width: f64,
}

fn to_screen<T: Scalar + ToPrimitive>(basis: Basis, u: &T, v: &T) -> (f64, f64) {
    let u = u.to_f64().unwrap_or(f64::NAN);
    let v = v.to_f64().unwrap_or(f64::NAN);
    let (x, y) = match basis {
        Basis::Orthogonal => (u, v),
        Basis::Triangular => (u + v / 2.0, v * SQRT3_OVER_2),
    };
    // SVG's y axis points down
    (x, -y)
}

fn screen_polygon<T: Scalar + ToPrimitive>(depth: u32, poly: &LatticePolygon<T>) -> SvgPolygon {
    SvgPolygon {
        depth,
        points: poly
            .vertices()
            .iter()
            .map(|p| to_screen(poly.basis(), &p.u, &p.v))
            .collect(),
    }
}

impl SvgScene {
    pub fn build<T: Scalar + ToPrimitive>(
        arr: &Arrangement<T>,
        census: &CoverageCensus<T>,
    ) -> Self {
        let mut polygons = vec![screen_polygon(0, &arr.big)];
        polygons.extend(arr.smalls.iter().map(|s| screen_polygon(1, s)));
        let mut overlaps = census.overlap_regions();
        // deeper regions on top
        overlaps.sort_by_key(|o| o.depth);
        polygons.extend(overlaps.iter().map(|o| screen_polygon(o.depth, &o.polygon)));

        let big = &polygons[0].points;
        let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for &(x, y) in big {
            lo_x = lo_x.min(x);
            lo_y = lo_y.min(y);
            hi_x = hi_x.max(x);
            hi_y = hi_y.max(y);
        }
        let span = (hi_x - lo_x).max(hi_y - lo_y);
        let margin = span * 0.05;
        Self {
            view_box: (
                lo_x - margin,
                lo_y - margin,
                hi_x - lo_x + 2.0 * margin,
                hi_y - lo_y + 2.0 * margin,
            ),
            polygons,
            stroke_width: span / 400.0,
        }
    }

    pub fn count_depth(&self, depth: u32) -> usize {
        self.polygons.iter().filter(|p| p.depth == depth).count()
    }

    pub fn render(&self) -> String {
        let (x, y, w, h) = self.view_box;
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\" width=\"600\" height=\"{}\">",
            num(x),
            num(y),
            num(w),
            num(h),
            num(600.0 * h / w)
        );
        let _ = writeln!(
            out,
            "<g stroke=\"black\" stroke-width=\"{}\" stroke-linejoin=\"round\">",
            num(self.stroke_width)
        );
        for poly in &self.polygons {
            let pts: Vec<String> = poly
                .points
                .iter()
                .map(|&(px, py)| format!("{},{}", num(px), num(py)))
                .collect();
            let color = DEPTH_COLORS[poly.depth.min(3) as usize];
            let _ = writeln!(
                out,
                "<polygon class=\"depth-{}\" fill=\"{}\" points=\"{}\"/>",
                poly.depth,
                color,
                pts.join(" ")
            );
        }
        out.push_str("</g>\n</svg>\n");
        out
    }
}

/// Six-decimal fixed formatting with negative zero folded to zero.
fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".to_string()
    } else {
        s
    }
}

pub fn emit_svg(scene: &SvgScene, path: &Path) -> Result<(), ReportError> {
    std::fs::write(path, scene.render()).map_err(|e| ReportError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
