//! The three construction families and their stability verdicts, Chern
//! classes, vanishing thresholds and degeneracy curves.
//!
//! * rank 2: `0 → 2·O(-ν) → E → O_S(-aL-bC)(ν+c1) → 0`, `k = 2ν + c1`
//! * rank 3 from a divisor: `0 → 3·O(-ν) → E → O_S(-aL-bC)(2ν+c1) → 0`, `k = 3ν + c1`
//! * rank 3 from a hyperplane power: same with `O_S(-l)` as the quotient

use std::fmt;

use serde::Serialize;

use crate::arith::{check_param, exact_div, Rational};
use crate::cohomology::h0_master;
use crate::error::{Error, Result};
use crate::lattice::{degree, pair, twist_chern, ChernData, DivisorClass, SurfaceClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum BundleSpec {
    Rank2 { nu: i64, c1: i64, a: i64, b: i64 },
    Rank3Line { nu: i64, c1: i64, a: i64, b: i64 },
    Rank3Hyperplane { nu: i64, c1: i64, l: i64 },
}

impl BundleSpec {
    /// Rank-2 spec on a degree-`k` surface; `ν` and `c1` are recovered from
    /// `k = 2ν + c1`.
    pub fn rank2_on(k: i64, a: i64, b: i64) -> Result<Self> {
        let nu = (k + 1).div_euclid(2);
        let spec = BundleSpec::Rank2 { nu, c1: k - 2 * nu, a, b };
        spec.validate()?;
        Ok(spec)
    }

    pub fn rank3_line_on(k: i64, a: i64, b: i64) -> Result<Self> {
        let nu = (k + 2).div_euclid(3);
        let spec = BundleSpec::Rank3Line { nu, c1: k - 3 * nu, a, b };
        spec.validate()?;
        Ok(spec)
    }

    pub fn rank3_hyperplane_on(k: i64, l: i64) -> Result<Self> {
        let nu = (k + 2).div_euclid(3);
        let spec = BundleSpec::Rank3Hyperplane { nu, c1: k - 3 * nu, l };
        spec.validate()?;
        Ok(spec)
    }

    pub fn rank(&self) -> u32 {
        match self {
            BundleSpec::Rank2 { .. } => 2,
            _ => 3,
        }
    }

    pub fn nu(&self) -> i64 {
        match *self {
            BundleSpec::Rank2 { nu, .. }
            | BundleSpec::Rank3Line { nu, .. }
            | BundleSpec::Rank3Hyperplane { nu, .. } => nu,
        }
    }

    pub fn c1(&self) -> i64 {
        match *self {
            BundleSpec::Rank2 { c1, .. }
            | BundleSpec::Rank3Line { c1, .. }
            | BundleSpec::Rank3Hyperplane { c1, .. } => c1,
        }
    }

    /// Degree of the surface carrying the quotient sheaf.
    pub fn k(&self) -> i64 {
        match *self {
            BundleSpec::Rank2 { nu, c1, .. } => 2 * nu + c1,
            BundleSpec::Rank3Line { nu, c1, .. } | BundleSpec::Rank3Hyperplane { nu, c1, .. } => {
                3 * nu + c1
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        let nu = check_param("nu", self.nu())?;
        let c1 = self.c1();
        if nu < 1 {
            return Err(Error::Precondition(format!("nu must be >= 1, got {nu}")));
        }
        let c1_ok = match self {
            BundleSpec::Rank2 { .. } => (-1..=0).contains(&c1),
            _ => (-2..=0).contains(&c1),
        };
        if !c1_ok {
            return Err(Error::Precondition(format!("c1 = {c1} not allowed for rank {}", self.rank())));
        }
        match *self {
            BundleSpec::Rank2 { a, b, .. } | BundleSpec::Rank3Line { a, b, .. } => {
                check_param("a", a)?;
                check_param("b", b)?;
            }
            BundleSpec::Rank3Hyperplane { l, .. } => {
                check_param("l", l)?;
                if l < 1 {
                    return Err(Error::Precondition(format!("l must be >= 1, got {l}")));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for BundleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BundleSpec::Rank2 { nu, c1, a, b } => {
                write!(f, "rank 2 (nu={nu}, c1={c1}, a={a}, b={b})")
            }
            BundleSpec::Rank3Line { nu, c1, a, b } => {
                write!(f, "rank 3 line (nu={nu}, c1={c1}, a={a}, b={b})")
            }
            BundleSpec::Rank3Hyperplane { nu, c1, l } => {
                write!(f, "rank 3 hyperplane (nu={nu}, c1={c1}, l={l})")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    Stable,
    SemistableOnly,
    NotLocallyFreeGeneric,
    NotStable,
    Unknown,
    Invalid,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Reason {
    pub code: &'static str,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub reason: Reason,
}

impl Verdict {
    fn new(status: Status, code: &'static str, text: impl Into<String>) -> Self {
        Self { status, reason: Reason { code, text: text.into() } }
    }

    pub fn is_stable(&self) -> bool {
        self.status == Status::Stable
    }
}

fn surface(k: i64) -> Result<SurfaceClass> {
    SurfaceClass::new(k)
}

/// `O_S(aL + bC)` globally generated with `D² = 0`, the condition for the
/// generic rank-2 extension to be locally free.
fn rank2_locally_free(a: i64, b: i64, k: i64) -> bool {
    rank2_generated(a, b, k) && a * a * (2 - k) + 2 * a * b * (k - 1) == 0
}

fn rank2_generated(a: i64, b: i64, k: i64) -> bool {
    a >= 0 && b >= 0 && b * (k - 1) - a * (k - 2) >= 0
}

fn rank2_fields(spec: &BundleSpec) -> Result<(i64, i64, i64, i64)> {
    spec.validate()?;
    match *spec {
        BundleSpec::Rank2 { nu, c1, a, b } => Ok((nu, c1, a, b)),
        _ => Err(Error::Precondition(format!("expected a rank 2 spec, got {spec}"))),
    }
}

pub fn classify_rank2(spec: &BundleSpec) -> Result<Verdict> {
    let (nu, c1, a, b) = rank2_fields(spec)?;
    let k = spec.k();
    if k == 1 {
        return Ok(Verdict::new(Status::Invalid, "k1_excluded", "k=1 cannot occur for rank 2"));
    }
    if k == 2 && ((a == 0 && b >= 2) || (b == 0 && a >= 2)) {
        return Ok(Verdict::new(Status::Stable, "case1_quadric", "k=2, one of a,b is 0 and the other >= 2"));
    }
    if k >= 3 && a == 0 && b > nu + c1 {
        return Ok(Verdict::new(Status::Stable, "case2", format!("k>=3, a=0, b > nu+c1 = {}", nu + c1)));
    }
    if !rank2_generated(a, b, k) {
        return Ok(Verdict::new(
            Status::NotLocallyFreeGeneric,
            "not_generated",
            "O_S(aL+bC) is not globally generated",
        ));
    }
    if !rank2_locally_free(a, b, k) {
        return Ok(Verdict::new(
            Status::NotStable,
            "square_nonzero",
            "D^2 != 0, so two sections cannot generate O_S(D)",
        ));
    }
    if c1 == 0 && rank2_semistable(spec)? {
        return Ok(Verdict::new(
            Status::SemistableOnly,
            "semistable_boundary",
            "h0(L) != 0 but h0(L(-1)) = 0",
        ));
    }
    Ok(Verdict::new(Status::NotStable, "sections_of_l", "h0(L) != 0; no other values are stable"))
}

/// Semistability of the generic extension for `c1 = 0`: locally free and
/// `h⁰(S; L(-1)) = 0` with `L = O_S(-aL-bC)(ν-1)`.
pub fn rank2_semistable(spec: &BundleSpec) -> Result<bool> {
    let (nu, c1, a, b) = rank2_fields(spec)?;
    if c1 != 0 {
        return Err(Error::Precondition("semistability is only defined here for c1 = 0".into()));
    }
    let k = spec.k();
    if !rank2_locally_free(a, b, k) {
        return Ok(false);
    }
    let twist = DivisorClass::twisted(-a, -b, nu - 1);
    Ok(h0_master(twist.x_l, twist.x_c, &surface(k)?)? == 0)
}

/// `b` with the quadric's `a ↔ b` symmetry folded in.
fn rank2_b(spec: &BundleSpec) -> Result<i64> {
    let verdict = classify_rank2(spec)?;
    if !verdict.is_stable() {
        return Err(Error::NotAdmissible(format!("{spec} is {}", verdict.status)));
    }
    let (_, _, a, b) = rank2_fields(spec)?;
    Ok(if b == 0 { a } else { b })
}

/// `c2 = b(k-1) - (k² - c1²)/4`, `c3 = 0`.
pub fn rank2_chern(spec: &BundleSpec) -> Result<ChernData> {
    let b = rank2_b(spec)?;
    let (k, c1) = (spec.k(), spec.c1());
    let c2 = b * (k - 1) - exact_div(k * k - c1 * c1, 4, "rank 2 c2")?;
    Ok(ChernData::new(2, c1, c2, 0))
}

/// `c2 = (ν+c1)² - ω₀·c1(L)` computed in the lattice with
/// `c1(L) = -bC + (ν+c1)H`.
pub fn rank2_c2_grr(spec: &BundleSpec) -> Result<i64> {
    let b = rank2_b(spec)?;
    let (nu, c1) = (spec.nu(), spec.c1());
    let s = surface(spec.k())?;
    let c1_l = DivisorClass::twisted(0, -b, nu + c1);
    Ok((nu + c1) * (nu + c1) - degree(c1_l, &s)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Rank2Thresholds {
    /// `H³(E(l)) = 0` for `l ≥` this.
    pub h3_vanishes_from: i64,
    /// `H²(E(l)) = 0` for `l >` this.
    pub h2_vanishes_above: i64,
    /// `H¹(E(l)) = 0` for `l >` this.
    pub h1_vanishes_above: i64,
    /// `E(l)` globally generated iff `l ≥` this.
    pub globally_generated_from: i64,
    /// `E|_L ≅ O(m) ⊕ O(-m + c1)`.
    pub jump_size: i64,
}

pub fn rank2_thresholds(spec: &BundleSpec) -> Result<Rank2Thresholds> {
    let b = rank2_b(spec)?;
    let (nu, c1, k) = (spec.nu(), spec.c1(), spec.k());
    let top = b * (k - 1) - nu - c1;
    Ok(Rank2Thresholds {
        h3_vanishes_from: -c1 - 4,
        h2_vanishes_above: nu - 4,
        h1_vanishes_above: top - 2,
        globally_generated_from: top,
        jump_size: b * (k - 1) - nu,
    })
}

/// `((ν+c1)H - c1(L))² = 0` evaluated in the lattice.
pub fn check_rank2_c3(spec: &BundleSpec) -> Result<bool> {
    let (nu, c1, a, b) = rank2_fields(spec)?;
    let verdict = classify_rank2(spec)?;
    if !verdict.is_stable() {
        return Err(Error::NotAdmissible(format!("{spec} is {}", verdict.status)));
    }
    let s = surface(spec.k())?;
    let h = (nu + c1) * DivisorClass::HYPERPLANE;
    let c1_l = h - DivisorClass::new(a, b);
    let diff = h - c1_l;
    Ok(pair(diff, diff, &s)? == 0)
}

fn rank3_line_fields(spec: &BundleSpec) -> Result<(i64, i64, i64, i64)> {
    spec.validate()?;
    match *spec {
        BundleSpec::Rank3Line { nu, c1, a, b } => Ok((nu, c1, a, b)),
        _ => Err(Error::Precondition(format!("expected a rank 3 line-divisor spec, got {spec}"))),
    }
}

/// Upper end of the unresolved range for `a` in case 4, as `2a ≤ bound`.
fn case4_twice_a_bound(nu: i64, c1: i64) -> i64 {
    if c1 == 0 {
        nu
    } else {
        nu - 1
    }
}

pub fn classify_rank3(spec: &BundleSpec) -> Result<Verdict> {
    if let BundleSpec::Rank3Hyperplane { .. } = spec {
        return Ok(rank3_hyperplane(spec)?.0);
    }
    let (nu, c1, a, b) = rank3_line_fields(spec)?;
    let k = spec.k();
    if k == 1 {
        if a > 0 {
            let redirected = BundleSpec::Rank3Hyperplane { nu, c1, l: a };
            let mut v = rank3_hyperplane(&redirected)?.0;
            v.reason = Reason { code: "case1_hyperplane", text: format!("k=1: hyperplane family with l = {a}") };
            return Ok(v);
        }
        return Ok(Verdict::new(Status::NotStable, "case1_needs_a_positive", "k=1 requires a > 0"));
    }
    let gg = a >= 0 && b * (k - 1) - a * (k - 2) >= 0;
    if k == 2 {
        if a >= 0 && b >= 0 && a.max(b) >= 2 {
            return Ok(Verdict::new(Status::Stable, "case2_quadric", "k=2, a,b >= 0, max(a,b) >= 2"));
        }
        if !(a >= 0 && b >= 0) {
            return Ok(Verdict::new(Status::NotLocallyFreeGeneric, "not_generated", "O_S(aL+bC) is not globally generated"));
        }
        return Ok(Verdict::new(Status::NotStable, "sections_of_l", "h0(L) != 0 for max(a,b) < 2"));
    }
    let m = 2 * nu + c1;
    if a > b && a > 0 && b * (k - 1) >= (k - 2) * a {
        if k == 3 && a == 2 && b == 1 {
            return Ok(Verdict::new(Status::NotStable, "k3_a2_b1_exclusion", "k=3,a=2,b=1 exclusion"));
        }
        return Ok(Verdict::new(Status::Stable, "case3", "k>=3, a > b >= (k-2)a/(k-1) > 0"));
    }
    let bound = case4_twice_a_bound(nu, c1);
    if b >= a && b > m {
        if 2 * a > bound {
            return Ok(Verdict::new(Status::Stable, "case4", format!("k>=3, b >= a, 2a > {bound}, b > 2nu+c1 = {m}")));
        }
        if a >= 0 {
            let (code, text) = if 2 * a == bound {
                ("unknown_boundary", format!("2a = {bound} sits on the case 4 boundary; stability not known"))
            } else {
                ("unknown", format!("2a <= {bound}, b > 2nu+c1 = {m}; locally free, stability not known"))
            };
            return Ok(Verdict::new(Status::Unknown, code, text));
        }
    }
    if !gg {
        return Ok(Verdict::new(Status::NotLocallyFreeGeneric, "not_generated", "O_S(aL+bC) is not globally generated"));
    }
    let l_class = DivisorClass::twisted(-a, -b, m);
    if h0_master(l_class.x_l, l_class.x_c, &surface(k)?)? > 0 {
        return Ok(Verdict::new(Status::NotStable, "sections_of_l", "h0(L) != 0"));
    }
    Ok(Verdict::new(Status::NotStable, "no_other_values", "outside cases 3 and 4"))
}

fn require_rank3_line_admissible(spec: &BundleSpec) -> Result<(i64, i64, i64, i64)> {
    let fields = rank3_line_fields(spec)?;
    if spec.k() < 2 {
        return Err(Error::NotAdmissible(format!("{spec}: use the hyperplane family for k = 1")));
    }
    let verdict = classify_rank3(spec)?;
    if !matches!(verdict.status, Status::Stable | Status::Unknown) {
        return Err(Error::NotAdmissible(format!("{spec} is {}", verdict.status)));
    }
    Ok(fields)
}

/// Closed forms for `c2`, `c3` of the divisor family.
pub fn rank3_chern(spec: &BundleSpec) -> Result<ChernData> {
    let (_, c1, a, b) = require_rank3_line_admissible(spec)?;
    let k = spec.k();
    let c2 = a + b * (k - 1) - exact_div(k * k - c1 * c1, 3, "rank 3 c2")?;
    let c3 = 2 * a * b * (k - 1) - a * a * (k - 2)
        - exact_div((a + (k - 1) * b) * (k - c1), 3, "rank 3 c3 middle term")?
        + exact_div((k - c1) * (k - c1) * (2 * k + c1), 27, "rank 3 c3 constant")?;
    Ok(ChernData::new(3, c1, c2, c3))
}

/// `c2`, `c3` from the defining sequence, given `ω₀·c1(L)` and `c1(L)²`.
fn rank3_chern_from_l(nu: i64, c1: i64, deg_l: i64, square_l: i64) -> ChernData {
    let m = 2 * nu + c1;
    let c2 = 3 * nu * nu + 3 * nu * c1 + c1 * c1 - deg_l;
    let c3 = m * m * m - (3 * nu + 2 * c1) * deg_l + square_l;
    ChernData::new(3, c1, c2, c3)
}

/// Chern data of the divisor family computed in the lattice from
/// `c1(L) = -(aL + bC) + (2ν + c1)H`.
pub fn rank3_chern_grr(spec: &BundleSpec) -> Result<ChernData> {
    let (nu, c1, a, b) = require_rank3_line_admissible(spec)?;
    let s = surface(spec.k())?;
    let c1_l = DivisorClass::twisted(-a, -b, 2 * nu + c1);
    Ok(rank3_chern_from_l(nu, c1, degree(c1_l, &s)?, pair(c1_l, c1_l, &s)?))
}

/// The hyperplane-power family is always stable; `c1(L) = -lH` on a
/// degree-`k` surface.
pub fn rank3_hyperplane(spec: &BundleSpec) -> Result<(Verdict, ChernData)> {
    spec.validate()?;
    let BundleSpec::Rank3Hyperplane { nu, c1, l } = *spec else {
        return Err(Error::Precondition(format!("expected a hyperplane-family spec, got {spec}")));
    };
    let k = spec.k();
    let chern = rank3_chern_from_l(nu, c1, -l * k, l * l * k);
    let closed_c2 = exact_div(k * k + c1 * k + c1 * c1, 3, "hyperplane c2")? + l * k;
    if closed_c2 != chern.c2 {
        return Err(Error::ArithmeticFault(format!("hyperplane c2: {closed_c2} vs {}", chern.c2)));
    }
    let verdict = Verdict::new(Status::Stable, "hyperplane_power", "quotient O_S(-l) with l >= 1 is always stable");
    Ok((verdict, chern))
}

/// Chern data for any admissible rank-3 spec.
pub fn rank3_chern_any(spec: &BundleSpec) -> Result<ChernData> {
    match spec {
        BundleSpec::Rank3Hyperplane { .. } => Ok(rank3_hyperplane(spec)?.1),
        BundleSpec::Rank3Line { nu, c1, a, .. } if spec.k() == 1 => {
            if *a < 1 {
                return Err(Error::NotAdmissible(format!("{spec} is NotStable")));
            }
            Ok(rank3_hyperplane(&BundleSpec::Rank3Hyperplane { nu: *nu, c1: *c1, l: *a })?.1)
        }
        _ => rank3_chern(spec),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", content = "value", rename_all = "snake_case")]
pub enum H1Rule {
    /// `H¹(E(l)) = 0` for `l >` value.
    Above(i64),
    /// `H¹(E(l)) = 0` at `l =` value.
    At(i64),
    /// The clause gives no usable quantifier.
    Ambiguous,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct H1Clause {
    pub condition: &'static str,
    pub applies: bool,
    pub rule: H1Rule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rank3Thresholds {
    /// `H³(E(l)) = 0` for `l ≥` this.
    pub h3_vanishes_from: i64,
    /// The `h²` statement covers `l >` this ...
    pub h2_range_above: i64,
    /// ... where `H²(E(l)) = 0` iff `l >` this.
    pub h2_vanishes_above: i64,
    pub h1_clauses: Vec<H1Clause>,
    /// `E(l)` globally generated iff `l ≥` this.
    pub globally_generated_from: i64,
}

pub fn rank3_thresholds(spec: &BundleSpec) -> Result<Rank3Thresholds> {
    let (nu, c1, a, b) = rank3_line_fields(spec)?;
    let k = spec.k();
    if k < 3 {
        return Err(Error::OutOfRegime(format!("thresholds are stated for k >= 3, got k = {k}")));
    }
    let verdict = classify_rank3(spec)?;
    if !verdict.is_stable() {
        return Err(Error::NotAdmissible(format!("{spec} is {}", verdict.status)));
    }
    let h1_clauses = vec![
        H1Clause { condition: "b=a", applies: b == a, rule: H1Rule::Ambiguous },
        H1Clause {
            condition: "b>a",
            applies: b > a,
            rule: H1Rule::Above(b + nu - 4 + (k - 2) * (b - a - 1)),
        },
        H1Clause { condition: "b=a+1", applies: b == a + 1, rule: H1Rule::At(b + nu - 4) },
        H1Clause { condition: "a>b", applies: a > b, rule: H1Rule::Above(a + nu - 4) },
        H1Clause { condition: "a=b+1", applies: a == b + 1, rule: H1Rule::At(a + nu - 4) },
    ];
    let globally_generated_from = if a >= b {
        (a - k + nu).max(nu)
    } else {
        b * (k - 1) - a * (k - 2) - k + nu
    };
    Ok(Rank3Thresholds {
        h3_vanishes_from: if c1 == 0 { -4 } else { -3 },
        h2_range_above: nu - 4,
        h2_vanishes_above: a.min(b) + nu - 4,
        h1_clauses,
        globally_generated_from,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegeneracyCurve {
    /// `c2(E(ν))`, the degree of `Y ⊂ P³`.
    pub degree: i64,
    /// `Y² = c3(E(ν))` on `S`.
    pub self_intersection: i64,
    /// `1 + (c3(E(ν)) + c2(E(ν))(k-4))/2`; not validated.
    #[serde(serialize_with = "crate::arith::serialize_rational")]
    pub genus: Rational,
}

/// Numerical data of the curve where the three sections of `E(ν)` drop rank.
pub fn degeneracy_curve(spec: &BundleSpec) -> Result<DegeneracyCurve> {
    if spec.rank() != 3 {
        return Err(Error::UnsupportedRank(spec.rank()));
    }
    let twisted = twist_chern(&rank3_chern_any(spec)?, spec.nu())?;
    let genus = Rational::from_integer(1)
        + Rational::new(twisted.c3 + twisted.c2 * (spec.k() - 4), 2);
    Ok(DegeneracyCurve { degree: twisted.c2, self_intersection: twisted.c3, genus })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r2(nu: i64, c1: i64, a: i64, b: i64) -> BundleSpec {
        BundleSpec::Rank2 { nu, c1, a, b }
    }

    fn r3(nu: i64, c1: i64, a: i64, b: i64) -> BundleSpec {
        BundleSpec::Rank3Line { nu, c1, a, b }
    }

    fn status(v: Result<Verdict>) -> Status {
        v.unwrap().status
    }

    #[test]
    fn rank2_classification_examples() {
        assert_eq!(status(classify_rank2(&r2(1, 0, 0, 2))), Status::Stable);
        assert_eq!(status(classify_rank2(&r2(1, 0, 2, 0))), Status::Stable);
        assert_eq!(status(classify_rank2(&r2(2, -1, 0, 1))), Status::NotStable);
        assert_eq!(status(classify_rank2(&r2(2, -1, 1, 3))), Status::NotStable);
        assert_eq!(status(classify_rank2(&r2(2, -1, -1, 3))), Status::NotLocallyFreeGeneric);
        assert_eq!(status(classify_rank2(&r2(1, -1, 0, 5))), Status::Invalid);
        assert!(classify_rank2(&r2(0, 0, 0, 2)).is_err());
        assert!(classify_rank2(&r2(1, -2, 0, 2)).is_err());
        assert!(classify_rank2(&r3(1, 0, 0, 2)).is_err());
    }

    #[test]
    fn rank2_semistable_boundary() {
        // k=2, b=1: L = O_Q(1, 0) has sections, L(-1) = O_Q(0, -1) does not.
        assert_eq!(status(classify_rank2(&r2(1, 0, 0, 1))), Status::SemistableOnly);
        assert_eq!(status(classify_rank2(&r2(1, 0, 0, 0))), Status::NotStable);
        assert!(rank2_semistable(&r2(2, -1, 0, 3)).is_err());
    }

    #[test]
    fn rank2_chern_examples() {
        assert_eq!(rank2_chern(&r2(1, 0, 0, 2)).unwrap().c2, 1);
        assert_eq!(rank2_chern(&r2(2, -1, 0, 3)).unwrap().c2, 4);
        assert_eq!(rank2_chern(&r2(1, 0, 0, 3)).unwrap().c2, 2);
        assert_eq!(rank2_chern(&r2(1, 0, 3, 0)).unwrap().c2, 2);
        assert_eq!(rank2_c2_grr(&r2(2, -1, 0, 3)), Ok(4));
        assert!(matches!(rank2_chern(&r2(2, -1, 0, 1)), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn rank2_threshold_examples() {
        let t = rank2_thresholds(&r2(1, 0, 0, 2)).unwrap();
        assert_eq!((t.jump_size, t.globally_generated_from), (1, 1));
        let t = rank2_thresholds(&r2(2, -1, 0, 2)).unwrap();
        assert_eq!((t.jump_size, t.h1_vanishes_above), (2, 1));
        let t = rank2_thresholds(&r2(1, 0, 0, 3)).unwrap();
        assert_eq!((t.jump_size, t.globally_generated_from), (2, 2));
        assert_eq!((t.h3_vanishes_from, t.h2_vanishes_above), (-4, -3));
    }

    #[test]
    fn rank2_c3_check() {
        assert_eq!(check_rank2_c3(&r2(1, 0, 0, 2)), Ok(true));
        assert_eq!(check_rank2_c3(&r2(2, -1, 0, 4)), Ok(true));
        assert_eq!(check_rank2_c3(&r2(3, -1, 0, 7)), Ok(true));
        assert_eq!(check_rank2_c3(&r2(1, 0, 5, 0)), Ok(true));
    }

    #[test]
    fn rank3_classification_examples() {
        assert_eq!(status(classify_rank3(&r3(1, -1, 2, 0))), Status::Stable);
        assert_eq!(status(classify_rank3(&r3(2, -2, 4, 3))), Status::Stable);
        let v = classify_rank3(&r3(1, 0, 2, 1)).unwrap();
        assert_eq!(v.status, Status::NotStable);
        assert_eq!(v.reason.code, "k3_a2_b1_exclusion");
        assert_eq!(v.reason.text, "k=3,a=2,b=1 exclusion");
        assert_eq!(status(classify_rank3(&r3(4, 0, 1, 10))), Status::Unknown);
        assert_eq!(status(classify_rank3(&r3(1, 0, 2, 4))), Status::Stable);
        assert_eq!(status(classify_rank3(&r3(1, -1, 1, 1))), Status::NotStable);
        assert_eq!(status(classify_rank3(&r3(1, 0, -1, 4))), Status::NotLocallyFreeGeneric);
    }

    #[test]
    fn rank3_case4_boundary() {
        // ν = 4, c1 = 0: a = 2 is exactly ν/2
        let v = classify_rank3(&r3(4, 0, 2, 10)).unwrap();
        assert_eq!((v.status, v.reason.code), (Status::Unknown, "unknown_boundary"));
        assert_eq!(status(classify_rank3(&r3(4, 0, 3, 10))), Status::Stable);
        // ν = 3, c1 = -1: (ν-1)/2 = 1
        assert_eq!(status(classify_rank3(&r3(3, -1, 1, 6))), Status::Unknown);
        assert_eq!(status(classify_rank3(&r3(3, -1, 2, 6))), Status::Stable);
    }

    #[test]
    fn rank3_k1_redirects() {
        let v = classify_rank3(&r3(1, -2, 1, 0)).unwrap();
        assert_eq!((v.status, v.reason.code), (Status::Stable, "case1_hyperplane"));
        assert_eq!(status(classify_rank3(&r3(1, -2, 0, 3))), Status::NotStable);
        let c = rank3_chern_any(&r3(1, -2, 1, 0)).unwrap();
        assert_eq!(c, ChernData::new(3, -2, 2, 0));
    }

    #[test]
    fn rank3_chern_examples() {
        assert_eq!(rank3_chern(&r3(1, -1, 2, 2)), Ok(ChernData::new(3, -1, 3, 5)));
        assert_eq!(rank3_chern(&r3(2, -2, 4, 3)).unwrap().c2, 9);
        assert_eq!(rank3_chern_grr(&r3(2, -2, 4, 3)), rank3_chern(&r3(2, -2, 4, 3)));
        assert!(rank3_chern(&r3(1, 0, 2, 1)).is_err());
        assert!(rank3_chern(&r3(4, 0, 1, 10)).is_ok());
    }

    #[test]
    fn hyperplane_family() {
        let spec = BundleSpec::Rank3Hyperplane { nu: 1, c1: -2, l: 1 };
        let (v, c) = rank3_hyperplane(&spec).unwrap();
        assert!(v.is_stable());
        assert_eq!(c, ChernData::new(3, -2, 2, 0));
        let tangent = ChernData::new(3, 4, 6, 4);
        assert_eq!(twist_chern(&tangent, -2), Ok(c));
        // c2 = a + 1, c3 = a² - a on the plane
        for l in 1..10 {
            let (_, c) = rank3_hyperplane(&BundleSpec::Rank3Hyperplane { nu: 1, c1: -2, l }).unwrap();
            assert_eq!((c.c2, c.c3), (l + 1, l * l - l));
        }
        assert!(rank3_hyperplane(&BundleSpec::Rank3Hyperplane { nu: 1, c1: 0, l: 0 }).is_err());
    }

    #[test]
    fn rank3_threshold_examples() {
        let t = rank3_thresholds(&r3(2, -2, 4, 3)).unwrap();
        assert_eq!(t.globally_generated_from, 2);
        assert_eq!(t.h2_vanishes_above, 1);
        assert_eq!(t.h3_vanishes_from, -3);
        let t = rank3_thresholds(&r3(1, 0, 2, 4)).unwrap();
        assert_eq!(t.globally_generated_from, 4);
        assert_eq!(t.h3_vanishes_from, -4);
        let t = rank3_thresholds(&r3(1, 0, 4, 4)).unwrap();
        let first = &t.h1_clauses[0];
        assert!(first.applies && first.rule == H1Rule::Ambiguous);
        assert!(rank3_thresholds(&r3(1, -1, 2, 2)).is_err());
    }

    #[test]
    fn degeneracy_examples() {
        let y = degeneracy_curve(&r3(1, -1, 2, 2)).unwrap();
        assert_eq!((y.degree, y.self_intersection, y.genus), (4, 8, Rational::from_integer(1)));
        let y = degeneracy_curve(&BundleSpec::Rank3Hyperplane { nu: 1, c1: -2, l: 1 }).unwrap();
        assert_eq!(y.self_intersection, 1);
        let y = degeneracy_curve(&r3(1, -1, 2, 0)).unwrap();
        assert_eq!(y.genus, Rational::from_integer(-1));
        assert!(degeneracy_curve(&r2(1, 0, 0, 2)).is_err());
    }

    #[test]
    fn degree_constructors() {
        assert_eq!(BundleSpec::rank2_on(5, 0, 4), Ok(r2(3, -1, 0, 4)));
        assert_eq!(BundleSpec::rank2_on(2, 0, 2), Ok(r2(1, 0, 0, 2)));
        assert_eq!(BundleSpec::rank3_line_on(4, 4, 3), Ok(r3(2, -2, 4, 3)));
        assert_eq!(BundleSpec::rank3_line_on(12, 1, 10), Ok(r3(4, 0, 1, 10)));
        assert_eq!(
            BundleSpec::rank3_hyperplane_on(1, 1),
            Ok(BundleSpec::Rank3Hyperplane { nu: 1, c1: -2, l: 1 })
        );
        assert!(BundleSpec::rank2_on(0, 0, 2).is_err());
        assert_eq!(r3(1, 0, 2, 1).k(), 3);
    }
}
