//! Descent maps and their exact analysis.
//!
//! Each family sends a pair `(a, b)` to a pair `(a', b')` of integer linear
//! forms. On a true solution of `a² = N·b²` the image is again a solution;
//! on integer inputs we track the defect `E = a² − N·b²`, which every family
//! rescales by a fixed multiplier.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::exact_arith::{BiForm, Surd};
use crate::number_theory::triangular;
use crate::{ExactBiForm, ExactSurd, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DescentError {
    #[error("n = {n} has the wrong parity for the {expected} triangular family")]
    BadParity { n: u64, expected: &'static str },
    #[error("triangular index n = {0} must be at least 2")]
    BadIndex(u64),
    #[error("descent input ({a}, {b}) must be positive")]
    NonPositiveInput { a: BigInt, b: BigInt },
    #[error("b' vanishes identically on a = √N·b")]
    DegenerateDenominator,
}

/// One of the four descent-map families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DescentFamily {
    /// `(a, b) ↦ (2b − a, a − b)` for √2.
    Sqrt2,
    /// `(a, b) ↦ (3a − 6b, 3b − a)` for √6.
    Hex6,
    /// `(a, b) ↦ ((n/2)(2a − (n+1)b), nb − a)` for √T_n, n even.
    TriangularEven(u64),
    /// `(a, b) ↦ (((n+1)/2)(nb − a), a − ((n+1)/2)b)` for √T_n, n odd.
    TriangularOdd(u64),
}

/// `a_coef·a + b_coef·b` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    pub a_coef: BigInt,
    pub b_coef: BigInt,
}

impl LinearForm {
    fn new(a_coef: impl Into<BigInt>, b_coef: impl Into<BigInt>) -> Self {
        Self {
            a_coef: a_coef.into(),
            b_coef: b_coef.into(),
        }
    }

    pub fn apply(&self, a: &BigInt, b: &BigInt) -> BigInt {
        &self.a_coef * a + &self.b_coef * b
    }

    pub fn to_biform(&self) -> ExactBiForm {
        BiForm::linear(
            Rational::from_integer(self.a_coef.clone()),
            Rational::from_integer(self.b_coef.clone()),
        )
    }

    /// Coefficient of `b` after substituting `a = √N·b`.
    pub fn at_root(&self, radicand: u64) -> ExactSurd {
        self.to_biform().eval_at_root(radicand)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_biform())
    }
}

impl DescentFamily {
    pub fn triangular(n: u64) -> Result<Self, DescentError> {
        if n.is_multiple_of(2) {
            Self::triangular_even(n)
        } else {
            Self::triangular_odd(n)
        }
    }

    pub fn triangular_even(n: u64) -> Result<Self, DescentError> {
        let f = Self::TriangularEven(n);
        f.validate()?;
        Ok(f)
    }

    pub fn triangular_odd(n: u64) -> Result<Self, DescentError> {
        let f = Self::TriangularOdd(n);
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<(), DescentError> {
        match *self {
            Self::Sqrt2 | Self::Hex6 => Ok(()),
            Self::TriangularEven(n) | Self::TriangularOdd(n) if n < 2 => {
                Err(DescentError::BadIndex(n))
            }
            Self::TriangularEven(n) if n % 2 != 0 => Err(DescentError::BadParity {
                n,
                expected: "even",
            }),
            Self::TriangularOdd(n) if n % 2 != 1 => {
                Err(DescentError::BadParity { n, expected: "odd" })
            }
            _ => Ok(()),
        }
    }

    /// Triangular index, if any.
    pub fn index(&self) -> Option<u64> {
        match *self {
            Self::TriangularEven(n) | Self::TriangularOdd(n) => Some(n),
            _ => None,
        }
    }

    pub fn radicand(&self) -> u64 {
        match *self {
            Self::Sqrt2 => 2,
            Self::Hex6 => 6,
            Self::TriangularEven(n) | Self::TriangularOdd(n) => triangular(n),
        }
    }

    /// Short machine name: `sqrt2`, `hex6`, `triangular-even`, `triangular-odd`.
    pub fn name(&self) -> &'static str {
        match self {
            Self::Sqrt2 => "sqrt2",
            Self::Hex6 => "hex6",
            Self::TriangularEven(_) => "triangular-even",
            Self::TriangularOdd(_) => "triangular-odd",
        }
    }

    /// The forms producing `(a', b')`.
    pub fn forms(&self) -> (LinearForm, LinearForm) {
        match *self {
            Self::Sqrt2 => (LinearForm::new(-1, 2), LinearForm::new(1, -1)),
            Self::Hex6 => (LinearForm::new(3, -6), LinearForm::new(-1, 3)),
            Self::TriangularEven(n) => {
                let n = BigInt::from(n);
                let half = &n / 2u32;
                let b_coef: BigInt = -(&half * (&n + 1u32));
                (LinearForm::new(n.clone(), b_coef), LinearForm::new(-1, n))
            }
            Self::TriangularOdd(n) => {
                let n = BigInt::from(n);
                let half: BigInt = (&n + 1u32) / 2u32;
                (
                    LinearForm::new(-half.clone(), &half * &n),
                    LinearForm::new(1, -half),
                )
            }
        }
    }
}

impl fmt::Display for DescentFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index() {
            Some(n) => write!(f, "{}(n={n})", self.name()),
            None => write!(f, "{}", self.name()),
        }
    }
}

/// `a² − N·b²`.
pub fn defect(a: &BigInt, b: &BigInt, radicand: u64) -> BigInt {
    a * a - BigInt::from(radicand) * b * b
}

/// One application of a descent map to an integer pair.
#[derive(Debug, Clone, PartialEq)]
pub struct DescentStep {
    pub family: DescentFamily,
    pub input: (BigInt, BigInt),
    pub output: (BigInt, BigInt),
    pub defect_in: BigInt,
    pub defect_out: BigInt,
    pub multiplier: Rational,
}

impl DescentStep {
    /// `E' = m·E` holds for this step.
    pub fn defect_relation_holds(&self) -> bool {
        Rational::from_integer(self.defect_out.clone())
            == &self.multiplier * Rational::from_integer(self.defect_in.clone())
    }

    pub fn output_positive(&self) -> bool {
        self.output.0.is_positive() && self.output.1.is_positive()
    }

    /// Both coordinates strictly decreased.
    pub fn strictly_smaller(&self) -> bool {
        self.output.0 < self.input.0 && self.output.1 < self.input.1
    }
}

/// Applies `family` to `(a, b)`. The output is reported even when it is not
/// a positive, smaller pair.
pub fn descent_step(
    family: DescentFamily,
    a: &BigInt,
    b: &BigInt,
) -> Result<DescentStep, DescentError> {
    family.validate()?;
    if !a.is_positive() || !b.is_positive() {
        return Err(DescentError::NonPositiveInput {
            a: a.clone(),
            b: b.clone(),
        });
    }
    let (fa, fb) = family.forms();
    let out = (fa.apply(a, b), fb.apply(a, b));
    let n = family.radicand();
    Ok(DescentStep {
        family,
        defect_in: defect(a, b, n),
        defect_out: defect(&out.0, &out.1, n),
        input: (a.clone(), b.clone()),
        output: out,
        multiplier: defect_multiplier(family),
    })
}

/// Symbolic proof that `a'² − N·b'² = m·(a² − N·b²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplierCertificate {
    pub multiplier: Rational,
    /// `a'² − N·b'²` expanded in `a` and `b`.
    pub image: ExactBiForm,
    pub holds: bool,
}

pub fn multiplier_certificate(family: DescentFamily) -> MultiplierCertificate {
    let (fa, fb) = family.forms();
    let n = Rational::from_integer(family.radicand().into());
    let image = fa.to_biform().square() - fb.to_biform().square().scale(&n);
    let multiplier = image.coeff(2, 0);
    let holds = image == BiForm::defect(n).scale(&multiplier);
    MultiplierCertificate {
        multiplier,
        image,
        holds,
    }
}

/// The fixed factor by which `family` rescales the defect.
pub fn defect_multiplier(family: DescentFamily) -> Rational {
    let cert = multiplier_certificate(family);
    assert!(cert.holds, "{family} does not rescale the defect uniformly");
    cert.multiplier
}

/// Expansion of `(n+1)(nb − a)² − (n/2)(2a − (n+1)b)²`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eq1Certificate {
    pub n: u64,
    pub lhs: ExactBiForm,
    pub rhs: ExactBiForm,
    pub difference: ExactBiForm,
    /// `c` with `difference = c·(a² − T_n·b²)`.
    pub cofactor: Rational,
    /// The difference reduced modulo `a² = T_n·b²`; zero when the identity holds.
    pub reduced: ExactBiForm,
    pub holds: bool,
}

/// Checks that the area balance of the triangle figure is a multiple of the
/// defect, so it holds exactly on `a² = T_n·b²`.
pub fn verify_eq1(n: u64) -> Result<Eq1Certificate, DescentError> {
    if n < 2 {
        return Err(DescentError::BadIndex(n));
    }
    let int = |v: u64| Rational::from_integer(v.into());
    let neg = |v: u64| -int(v);
    let lhs = BiForm::linear(neg(1), int(n)).square().scale(&int(n + 1));
    let rhs = BiForm::linear(int(2), neg(n + 1))
        .square()
        .scale(&Rational::new(n.into(), 2.into()));
    let difference = lhs.clone() - rhs.clone();
    let cofactor = difference.coeff(2, 0);
    let target = BiForm::defect(int(triangular(n))).scale(&cofactor);
    let reduced = difference.reduce_triangular(n);
    let holds = difference == target && reduced.is_zero() && cofactor == int(1) - int(n);
    Ok(Eq1Certificate {
        n,
        lhs,
        rhs,
        difference,
        cofactor,
        reduced,
        holds,
    })
}

/// The images `a'` and `b'` as multiples of `b` under `a = √N·b`.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioCheck {
    pub a_image: ExactSurd,
    pub b_image: ExactSurd,
    pub ratio: ExactSurd,
    pub root: ExactSurd,
    pub holds: bool,
}

/// Substitutes `a = √N·b` and checks `a'/b' = √N` exactly.
pub fn symbolic_ratio_check(family: DescentFamily) -> Result<RatioCheck, DescentError> {
    family.validate()?;
    let n = family.radicand();
    let (fa, fb) = family.forms();
    let a_image = fa.at_root(n);
    let b_image = fb.at_root(n);
    let ratio = a_image
        .checked_div(&b_image)
        .ok_or(DescentError::DegenerateDenominator)?;
    let root = Surd::sqrt_of(n);
    let holds = ratio == root && a_image == root.clone() * b_image.clone();
    Ok(RatioCheck {
        a_image,
        b_image,
        ratio,
        root,
        holds,
    })
}

/// A named strict inequality `value > 0`, decided exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct SurdInequality {
    pub name: &'static str,
    pub value: ExactSurd,
    pub sign: i8,
}

impl SurdInequality {
    fn new(name: &'static str, value: ExactSurd) -> Self {
        let sign = value.sign();
        Self { name, value, sign }
    }

    pub fn holds(&self) -> bool {
        self.sign > 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RangeCheck {
    pub family: DescentFamily,
    pub works: bool,
    pub witnesses: Vec<SurdInequality>,
}

/// Decides whether `0 < a' < a` and `0 < b' < b` on the line `a = √N·b`.
pub fn range_check(family: DescentFamily) -> Result<RangeCheck, DescentError> {
    family.validate()?;
    let n = family.radicand();
    let (fa, fb) = family.forms();
    let a_image = fa.at_root(n);
    let b_image = fb.at_root(n);
    let one = ExactSurd::from_int(1);
    let root = ExactSurd::sqrt_of(n);
    let witnesses = vec![
        SurdInequality::new("b' > 0", b_image.clone()),
        SurdInequality::new("b' < b", one - b_image),
        SurdInequality::new("a' > 0", a_image.clone()),
        SurdInequality::new("a' < a", root - a_image),
    ];
    let works = witnesses.iter().all(SurdInequality::holds);
    Ok(RangeCheck {
        family,
        works,
        witnesses,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// The step budget ran out while the pair was still shrinking.
    MaxSteps,
    /// The next pair has a coordinate ≤ 0.
    NonPositive,
    /// The next `b'` is not smaller than `b`.
    NoDescent,
}

impl StopReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::MaxSteps => "max-steps",
            Self::NonPositive => "non-positive",
            Self::NoDescent => "no-descent",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DescentChain {
    /// Accepted steps: positive outputs with `b' < b`.
    pub steps: Vec<DescentStep>,
    /// The step that ended the chain, when it was not the budget.
    pub rejected: Option<DescentStep>,
    pub stop: StopReason,
}

impl DescentChain {
    pub fn final_pair(&self) -> Option<&(BigInt, BigInt)> {
        self.steps.last().map(|s| &s.output)
    }
}

pub fn descent_chain(
    family: DescentFamily,
    a: &BigInt,
    b: &BigInt,
    max_steps: usize,
) -> Result<DescentChain, DescentError> {
    let mut steps = Vec::new();
    let (mut a, mut b) = (a.clone(), b.clone());
    // validates family and positivity even when max_steps == 0
    let mut next = descent_step(family, &a, &b)?;
    loop {
        if steps.len() == max_steps {
            return Ok(DescentChain {
                steps,
                rejected: None,
                stop: StopReason::MaxSteps,
            });
        }
        let stop = if !next.output_positive() {
            Some(StopReason::NonPositive)
        } else if next.output.1 >= b {
            Some(StopReason::NoDescent)
        } else {
            None
        };
        if let Some(stop) = stop {
            return Ok(DescentChain {
                steps,
                rejected: Some(next),
                stop,
            });
        }
        a = next.output.0.clone();
        b = next.output.1.clone();
        steps.push(next);
        next = descent_step(family, &a, &b)?;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::ratio;
    use num_traits::ToPrimitive;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn pair(s: &DescentStep) -> (i64, i64) {
        (s.output.0.to_i64().unwrap(), s.output.1.to_i64().unwrap())
    }

    #[test]
    fn step_examples() {
        let s = descent_step(DescentFamily::Sqrt2, &big(7), &big(5)).unwrap();
        assert_eq!(pair(&s), (3, 2));
        assert_eq!(
            (s.defect_in.clone(), s.defect_out.clone()),
            (big(-1), big(1))
        );

        let s = descent_step(DescentFamily::Hex6, &big(5), &big(2)).unwrap();
        assert_eq!(pair(&s), (3, 1));
        assert_eq!(
            (s.defect_in.clone(), s.defect_out.clone()),
            (big(1), big(3))
        );

        let s = descent_step(DescentFamily::TriangularOdd(3), &big(5), &big(2)).unwrap();
        assert_eq!(pair(&s), (2, 1));
        assert_eq!(
            (s.defect_in.clone(), s.defect_out.clone()),
            (big(1), big(-2))
        );

        let s = descent_step(DescentFamily::TriangularEven(4), &big(19), &big(6)).unwrap();
        assert_eq!(pair(&s), (16, 5));
        assert_eq!(
            (s.defect_in.clone(), s.defect_out.clone()),
            (big(1), big(6))
        );
        assert!(s.defect_relation_holds());
    }

    #[test]
    fn step_errors() {
        assert_eq!(
            descent_step(DescentFamily::TriangularEven(3), &big(5), &big(2)),
            Err(DescentError::BadParity {
                n: 3,
                expected: "even"
            })
        );
        assert_eq!(
            descent_step(DescentFamily::TriangularOdd(1), &big(5), &big(2)),
            Err(DescentError::BadIndex(1))
        );
        assert!(matches!(
            descent_step(DescentFamily::Sqrt2, &big(0), &big(2)),
            Err(DescentError::NonPositiveInput { .. })
        ));
        assert_eq!(DescentFamily::triangular(0), Err(DescentError::BadIndex(0)));
        assert_eq!(
            DescentFamily::triangular(6),
            Ok(DescentFamily::TriangularEven(6))
        );
        assert_eq!(
            DescentFamily::triangular(7),
            Ok(DescentFamily::TriangularOdd(7))
        );
    }

    #[test]
    fn multiplier_examples() {
        assert_eq!(defect_multiplier(DescentFamily::Sqrt2), ratio(-1, 1));
        assert_eq!(defect_multiplier(DescentFamily::Hex6), ratio(3, 1));
        assert_eq!(
            defect_multiplier(DescentFamily::TriangularOdd(5)),
            ratio(-6, 1)
        );
        assert_eq!(
            defect_multiplier(DescentFamily::TriangularEven(2)),
            ratio(1, 1)
        );
    }

    #[test]
    fn unit_multipliers_are_rare() {
        for n in 2..=20 {
            let f = DescentFamily::triangular(n).unwrap();
            let m = defect_multiplier(f);
            assert_eq!(m.abs() == ratio(1, 1), n == 2, "n = {n}");
        }
        assert_eq!(defect_multiplier(DescentFamily::Sqrt2).abs(), ratio(1, 1));
        assert_ne!(defect_multiplier(DescentFamily::Hex6).abs(), ratio(1, 1));
    }

    #[test]
    fn row_identity_examples() {
        let c = verify_eq1(2).unwrap();
        assert!(c.holds);
        assert_eq!(c.cofactor, ratio(-1, 1));
        let c = verify_eq1(5).unwrap();
        assert!(c.holds);
        assert_eq!(c.cofactor, ratio(-4, 1));
        assert_eq!(
            c.difference,
            BiForm::defect(ratio(15, 1)).scale(&ratio(-4, 1))
        );
        assert!(verify_eq1(8).unwrap().holds);
        assert_eq!(verify_eq1(1), Err(DescentError::BadIndex(1)));
    }

    #[test]
    fn ratio_check_examples() {
        let c = symbolic_ratio_check(DescentFamily::Sqrt2).unwrap();
        assert!(c.holds);
        assert_eq!(
            c.a_image,
            ExactSurd::new(ratio(2, 1), ratio(-1, 1), 2).unwrap()
        );
        assert_eq!(
            c.b_image,
            ExactSurd::new(ratio(-1, 1), ratio(1, 1), 2).unwrap()
        );
        let c = symbolic_ratio_check(DescentFamily::Hex6).unwrap();
        assert!(c.holds);
        assert_eq!(
            c.b_image,
            ExactSurd::new(ratio(3, 1), ratio(-1, 1), 6).unwrap()
        );
        assert!(
            symbolic_ratio_check(DescentFamily::TriangularEven(4))
                .unwrap()
                .holds
        );
        // T_8 = 36: the maps still preserve the ratio 6
        let c = symbolic_ratio_check(DescentFamily::TriangularEven(8)).unwrap();
        assert!(c.holds);
        assert_eq!(c.ratio, ExactSurd::from_int(6));
    }

    #[test]
    fn range_examples() {
        assert!(range_check(DescentFamily::TriangularEven(4)).unwrap().works);
        let r = range_check(DescentFamily::TriangularEven(6)).unwrap();
        assert!(!r.works);
        let failed: Vec<_> = r
            .witnesses
            .iter()
            .filter(|w| !w.holds())
            .map(|w| w.name)
            .collect();
        assert!(failed.contains(&"b' < b"));
        assert!(!range_check(DescentFamily::TriangularOdd(7)).unwrap().works);
        assert!(range_check(DescentFamily::Sqrt2).unwrap().works);
        assert!(range_check(DescentFamily::Hex6).unwrap().works);
    }

    #[test]
    fn chain_examples() {
        let c = descent_chain(DescentFamily::Sqrt2, &big(17), &big(12), 10).unwrap();
        let pairs: Vec<_> = c.steps.iter().map(pair).collect();
        assert_eq!(pairs, vec![(7, 5), (3, 2), (1, 1)]);
        assert_eq!(c.stop, StopReason::NonPositive);
        assert_eq!(pair(c.rejected.as_ref().unwrap()), (1, 0));

        let c = descent_chain(DescentFamily::Hex6, &big(22), &big(9), 10).unwrap();
        assert_eq!(pair(&c.steps[0]), (12, 5));
        for s in &c.steps {
            assert!(s.output.1 < s.input.1);
        }

        let c = descent_chain(DescentFamily::TriangularEven(6), &big(55), &big(12), 10).unwrap();
        assert!(c.steps.is_empty());
        assert_eq!(c.stop, StopReason::NoDescent);

        let c = descent_chain(DescentFamily::Sqrt2, &big(17), &big(12), 1).unwrap();
        assert_eq!(c.steps.len(), 1);
        assert_eq!(c.stop, StopReason::MaxSteps);
    }
}
