//! Verification runs and their machine-readable reports.
//!
//! Every exact quantity is serialized as a string: rationals as `p/q` in
//! lowest terms, integers in decimal. Floats only appear in SVG output.

mod svg;

pub use svg::{emit_svg, SvgPolygon, SvgScene, DEPTH_COLORS};

use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::descent::{
    descent_chain, descent_step, multiplier_certificate, range_check, symbolic_ratio_check,
    verify_eq1, DescentError, DescentFamily, DescentStep,
};
use crate::exact_arith::{fraction_string, parse_fraction};
use crate::geometry::{
    census_to_descent, coverage_census, verify_figure, FigureFamily, GeometryError, IdentityCheck,
};
use crate::number_theory::{convergents, NumberTheoryError};
use crate::{ExactArrangement, ExactCensus, Rational};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Descent(#[from] DescentError),
    #[error(transparent)]
    NumberTheory(#[from] NumberTheoryError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("convergent index must be at least 1")]
    ConvergentIndex,
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("malformed report: {0}")]
    Json(#[from] serde_json::Error),
}

/// Exact rational serialized as `"p/q"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fraction(pub Rational);

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fraction_string(&self.0))
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_fraction(&s)
            .map(Fraction)
            .ok_or_else(|| serde::de::Error::custom(format!("not a fraction: {s:?}")))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fraction_string(&self.0))
    }
}

/// Arbitrary-precision integer serialized in decimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse::<BigInt>()
            .map(Int)
            .map_err(|_| serde::de::Error::custom(format!("not an integer: {s:?}")))
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn int_pair(p: &(BigInt, BigInt)) -> [Int; 2] {
    [Int(p.0.clone()), Int(p.1.clone())]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowCheck {
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescentSummary {
    pub input_pair: [Int; 2],
    pub output_pair: [Int; 2],
    pub defect_in: Int,
    pub defect_out: Int,
    pub multiplier: Fraction,
}

impl From<&DescentStep> for DescentSummary {
    fn from(s: &DescentStep) -> Self {
        Self {
            input_pair: int_pair(&s.input),
            output_pair: int_pair(&s.output),
            defect_in: Int(s.defect_in.clone()),
            defect_out: Int(s.defect_out.clone()),
            multiplier: Fraction(s.multiplier.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub big_area: Fraction,
    pub total_small_area: Fraction,
    pub union_area: Fraction,
    pub blank_area: Fraction,
    pub exactly2_area: Fraction,
    pub exactly3_area: Fraction,
    pub excess: Fraction,
    pub pairwise_regions: usize,
    pub triple_regions: usize,
    pub doubly_regions: usize,
    pub triply_regions: usize,
    pub max_depth: u32,
}

impl From<&ExactCensus> for CensusSummary {
    fn from(c: &ExactCensus) -> Self {
        let regions = c.overlap_regions();
        Self {
            big_area: Fraction(c.big_area.clone()),
            total_small_area: Fraction(c.total_small_area.clone()),
            union_area: Fraction(c.union_area.clone()),
            blank_area: Fraction(c.blank_area.clone()),
            exactly2_area: Fraction(c.exactly2_area.clone()),
            exactly3_area: Fraction(c.exactly3_area.clone()),
            excess: Fraction(c.excess()),
            pairwise_regions: c.pairwise_regions.len(),
            triple_regions: c.triple_regions.len(),
            doubly_regions: regions.iter().filter(|r| r.depth == 2).count(),
            triply_regions: regions.iter().filter(|r| r.depth == 3).count(),
            max_depth: c.max_depth,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RangeWitness {
    pub name: String,
    /// The quantity that must be positive, as `p + q·√N`.
    pub value: String,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RangeSummary {
    pub works: bool,
    pub witnesses: Vec<RangeWitness>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub kind: String,
    pub family: String,
    pub n: Option<u64>,
    #[serde(rename = "N")]
    pub radicand: u64,
    pub convergent: Option<usize>,
    pub input_pair: [Int; 2],
    pub window_check: WindowCheck,
    pub descent: Option<DescentSummary>,
    pub census: Option<CensusSummary>,
    pub range: Option<RangeSummary>,
    pub chain: Vec<DescentSummary>,
    pub identity_checks: Vec<IdentityCheck>,
    pub stop_reason: Option<String>,
}

impl VerificationReport {
    fn new(
        kind: &str,
        family: DescentFamily,
        a: &BigInt,
        b: &BigInt,
        convergent: Option<usize>,
    ) -> Self {
        Self {
            kind: kind.to_string(),
            family: family.name().to_string(),
            n: family.index(),
            radicand: family.radicand(),
            convergent,
            input_pair: [Int(a.clone()), Int(b.clone())],
            window_check: WindowCheck {
                holds: true,
                detail: String::new(),
            },
            descent: None,
            census: None,
            range: None,
            chain: Vec::new(),
            identity_checks: Vec::new(),
            stop_reason: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.identity_checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.identity_checks.iter().filter(|c| !c.pass)
    }

    fn check(
        &mut self,
        name: impl Into<String>,
        lhs: impl ToString,
        rhs: impl ToString,
        pass: bool,
    ) {
        self.identity_checks.push(IdentityCheck {
            name: name.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass,
        });
    }

    /// Builds and measures the figure, recording the window check and every
    /// figure identity. Returns the arrangement and census when it could be built.
    fn add_figure(
        &mut self,
        family: DescentFamily,
        a: &BigInt,
        b: &BigInt,
    ) -> Result<Option<(ExactArrangement, ExactCensus)>, ReportError> {
        let arr = match ExactArrangement::from_integers(FigureFamily::from_descent(family), a, b) {
            Ok(arr) => arr,
            Err(GeometryError::OutOfWindow(c)) => {
                self.window_check = WindowCheck {
                    holds: false,
                    detail: c.clone(),
                };
                self.check("construction window", c, "holds", false);
                return Ok(None);
            }
            Err(e) => return Err(e.into()),
        };
        self.window_check.detail = window_text(arr.family).to_string();
        self.check(
            "construction window",
            window_text(arr.family),
            "holds",
            true,
        );
        let census = match coverage_census(&arr) {
            Ok(c) => c,
            Err(GeometryError::DepthExceeded(members)) => {
                self.check("no 4-fold coverage", format!("{members:?}"), "none", false);
                return Ok(None);
            }
            Err(e) => return Err(e.into()),
        };
        let figure = match verify_figure(&arr, &census) {
            Ok(r) => r,
            Err(GeometryError::Mismatch(r)) => r,
            Err(e) => return Err(e.into()),
        };
        for c in figure.checks {
            self.identity_checks.push(IdentityCheck {
                name: format!("figure: {}", c.name),
                ..c
            });
        }
        self.census = Some(CensusSummary::from(&census));
        Ok(Some((arr, census)))
    }
}

/// Human-readable window inequality for each figure.
pub fn window_text(family: FigureFamily) -> &'static str {
    match family {
        FigureFamily::Tennenbaum => "b < a < 2b",
        FigureFamily::Hex6 => "2b < a < 3b",
        FigureFamily::Triangular(_) => "(n+1)b < 2a and a < nb",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub version: u32,
    pub runs: Vec<VerificationReport>,
}

impl ReportFile {
    pub fn new(runs: Vec<VerificationReport>) -> Self {
        Self {
            version: SCHEMA_VERSION,
            runs,
        }
    }

    pub fn passed(&self) -> bool {
        self.runs.iter().all(VerificationReport::passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, ReportError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn write(&self, path: &Path) -> Result<(), ReportError> {
        std::fs::write(path, self.to_json()).map_err(|e| ReportError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    }
}

/// Where the input pair comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairSource {
    Explicit(BigInt, BigInt),
    /// The k-th convergent of √N, counting from 1.
    Convergent(usize),
}

/// Resolves a pair source to `(a, b, convergent index)`.
pub fn resolve_pair(
    family: DescentFamily,
    source: &PairSource,
) -> Result<(BigInt, BigInt, Option<usize>), ReportError> {
    match source {
        PairSource::Explicit(a, b) => Ok((a.clone(), b.clone(), None)),
        PairSource::Convergent(0) => Err(ReportError::ConvergentIndex),
        PairSource::Convergent(k) => {
            let cs = convergents(family.radicand(), *k)?;
            let c = &cs[k - 1];
            Ok((c.p.clone(), c.q.clone(), Some(*k)))
        }
    }
}

fn range_summary(family: DescentFamily) -> Result<RangeSummary, ReportError> {
    let r = range_check(family)?;
    Ok(RangeSummary {
        works: r.works,
        witnesses: r
            .witnesses
            .iter()
            .map(|w| RangeWitness {
                name: w.name.to_string(),
                value: w.value.to_string(),
                sign: w.sign,
            })
            .collect(),
    })
}

/// Full verification of one input pair: algebra, symbolic identities and the
/// measured figure, cross-checked against each other.
pub fn verify_run(
    family: DescentFamily,
    source: &PairSource,
) -> Result<VerificationReport, ReportError> {
    family.validate()?;
    let (a, b, k) = resolve_pair(family, source)?;
    let mut rep = VerificationReport::new("verify", family, &a, &b, k);

    let step = descent_step(family, &a, &b)?;
    let scaled = &step.multiplier * Rational::from_integer(step.defect_in.clone());
    rep.check(
        "defect rescaled: E' = m E",
        &step.defect_out,
        fraction_string(&scaled),
        step.defect_relation_holds(),
    );

    let cert = multiplier_certificate(family);
    rep.check(
        "a'^2 - N b'^2 = m (a^2 - N b^2) symbolically",
        &cert.image,
        format!(
            "{} (a^2 - {} b^2)",
            fraction_string(&cert.multiplier),
            family.radicand()
        ),
        cert.holds,
    );

    let ratio = symbolic_ratio_check(family)?;
    rep.check(
        "a'/b' = √N on a = √N b",
        &ratio.ratio,
        &ratio.root,
        ratio.holds,
    );

    if let Some(n) = family.index() {
        let rows = verify_eq1(n)?;
        rep.check(
            "(n+1)(nb-a)^2 - (n/2)(2a-(n+1)b)^2 = (1-n)(a^2 - T_n b^2)",
            &rows.difference,
            format!(
                "{} (a^2 - {} b^2)",
                fraction_string(&rows.cofactor),
                family.radicand()
            ),
            rows.holds,
        );
    }

    if let Some((arr, census)) = rep.add_figure(family, &a, &b)? {
        match census_to_descent(&arr, &census) {
            Ok(measured) => {
                let pass = measured == step.output;
                rep.check(
                    "figure pair = algebraic pair",
                    format!("({}, {})", measured.0, measured.1),
                    format!("({}, {})", step.output.0, step.output.1),
                    pass,
                );
            }
            Err(e) => rep.check("figure pair = algebraic pair", e, "measurable", false),
        }
    }

    rep.descent = Some(DescentSummary::from(&step));
    rep.range = Some(range_summary(family)?);
    Ok(rep)
}

/// Census and figure identities only.
pub fn census_run(
    family: DescentFamily,
    source: &PairSource,
) -> Result<VerificationReport, ReportError> {
    family.validate()?;
    let (a, b, k) = resolve_pair(family, source)?;
    let mut rep = VerificationReport::new("census", family, &a, &b, k);
    rep.add_figure(family, &a, &b)?;
    Ok(rep)
}

/// Iterated descent with the defect relation checked at every step.
pub fn chain_run(
    family: DescentFamily,
    source: &PairSource,
    max_steps: usize,
) -> Result<VerificationReport, ReportError> {
    family.validate()?;
    let (a, b, k) = resolve_pair(family, source)?;
    let mut rep = VerificationReport::new("chain", family, &a, &b, k);
    let chain = descent_chain(family, &a, &b, max_steps)?;
    for (i, s) in chain.steps.iter().chain(chain.rejected.iter()).enumerate() {
        let scaled = &s.multiplier * Rational::from_integer(s.defect_in.clone());
        rep.check(
            format!("step {}: E' = m E", i + 1),
            &s.defect_out,
            fraction_string(&scaled),
            s.defect_relation_holds(),
        );
    }
    rep.chain = chain.steps.iter().map(DescentSummary::from).collect();
    rep.descent = chain.rejected.as_ref().map(DescentSummary::from);
    rep.stop_reason = Some(chain.stop.as_str().to_string());
    Ok(rep)
}

/// Runs a batch of verifications, ordered by `(family, n, convergent)`.
pub fn verify_batch(jobs: &[(DescentFamily, PairSource)]) -> Result<ReportFile, ReportError> {
    let mut runs = jobs
        .iter()
        .map(|(f, src)| verify_run(*f, src).map(|r| (*f, r)))
        .collect::<Result<Vec<_>, _>>()?;
    runs.sort_by(|(fa, ra), (fb, rb)| {
        (fa, ra.convergent, &ra.input_pair[1].0, &ra.input_pair[0].0).cmp(&(
            fb,
            rb.convergent,
            &rb.input_pair[1].0,
            &rb.input_pair[0].0,
        ))
    });
    Ok(ReportFile::new(runs.into_iter().map(|(_, r)| r).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hex6_third_convergent_passes() {
        let rep = verify_run(DescentFamily::Hex6, &PairSource::Convergent(3)).unwrap();
        assert_eq!(rep.input_pair, [Int(22.into()), Int(9.into())]);
        assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        let d = rep.descent.unwrap();
        assert_eq!(d.output_pair, [Int(12.into()), Int(5.into())]);
    }

    #[test]
    fn out_of_window_fails_a_check() {
        let rep = verify_run(
            DescentFamily::Hex6,
            &PairSource::Explicit(7.into(), 2.into()),
        )
        .unwrap();
        assert!(!rep.passed());
        assert!(!rep.window_check.holds);
        assert_eq!(rep.window_check.detail, "a < 3b");
    }

    #[test]
    fn fractions_serialize_as_strings() {
        let f = Fraction(Rational::new(6.into(), 4.into()));
        assert_eq!(serde_json::to_string(&f).unwrap(), "\"3/2\"");
        let back: Fraction = serde_json::from_str("\"-6/4\"").unwrap();
        assert_eq!(back.0, Rational::new((-3).into(), 2.into()));
        assert!(serde_json::from_str::<Fraction>("1.5").is_err());
    }

    #[test]
    fn report_round_trips() {
        let rep = verify_run(DescentFamily::TriangularOdd(5), &PairSource::Convergent(3)).unwrap();
        let file = ReportFile::new(vec![rep]);
        let json = file.to_json();
        assert!(json.contains("\"version\": 1"));
        assert_eq!(ReportFile::from_json(&json).unwrap(), file);
    }

    #[test]
    fn chain_records_stop_reason() {
        let rep = chain_run(
            DescentFamily::Sqrt2,
            &PairSource::Explicit(17.into(), 12.into()),
            10,
        )
        .unwrap();
        assert_eq!(rep.chain.len(), 3);
        assert_eq!(rep.stop_reason.as_deref(), Some("non-positive"));
        assert!(rep.passed());
    }

    #[test]
    fn convergent_zero_is_rejected() {
        assert!(matches!(
            resolve_pair(DescentFamily::Sqrt2, &PairSource::Convergent(0)),
            Err(ReportError::ConvergentIndex)
        ));
    }
}
