//! Parameter counts `dim Y`, expected dimensions and bounds on
//! `h¹(End E)`, `h²(End E)` and `dim_E M`.

use serde::{Serialize, Serializer};

use crate::arith::{count_binom, exact_div, ExactRational, Rational};
use crate::bundle::{classify_rank2, classify_rank3, rank2_chern, rank3_chern, rank3_hyperplane, BundleSpec, Status};
use crate::cohomology::h0_master;
use crate::error::{Error, Result};
use crate::lattice::SurfaceClass;

/// Closed integer interval; a collapsed interval serializes as a plain
/// integer, otherwise as `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub fn exact(v: i64) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::ArithmeticFault(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn value(&self) -> Option<i64> {
        self.is_exact().then_some(self.lo)
    }

    pub fn contains(&self, v: i64) -> bool {
        self.lo <= v && v <= self.hi
    }
}

impl Serialize for IntRange {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_exact() {
            s.serialize_i64(self.lo)
        } else {
            [self.lo, self.hi].serialize(s)
        }
    }
}

impl std::fmt::Display for IntRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuliReport {
    pub dim_y: i64,
    pub ed: i64,
    pub h1_end: IntRange,
    pub h2_end: IntRange,
    pub dim_m: IntRange,
    /// `None` when smoothness at `E` is not decided.
    pub smooth_at_e: Option<bool>,
    pub codim_bound: Option<i64>,
    /// Set when `dim(im δ) = 0` was assumed for the upper end of `h1_end`.
    pub delta_assumption: bool,
    pub dim_y_equals_dim_m: Option<bool>,
    /// `b = k-4` sits on the edge of the rank-2 estimate's range.
    pub boundary: bool,
    /// The simplified closed form printed next to the rank-2 estimate.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub printed_upper: Option<ExactRational>,
}

impl ModuliReport {
    fn exact(dim_y: i64, ed: i64, h1: i64, h2: i64) -> Result<Self> {
        if h1 - h2 != ed {
            return Err(Error::ArithmeticFault(format!("h1 - h2 = {} but ed = {ed}", h1 - h2)));
        }
        Ok(Self {
            dim_y,
            ed,
            h1_end: IntRange::exact(h1),
            h2_end: IntRange::exact(h2),
            dim_m: IntRange::exact(h1),
            smooth_at_e: Some(true),
            codim_bound: Some(h1 - dim_y),
            delta_assumption: false,
            dim_y_equals_dim_m: Some(dim_y == h1),
            boundary: false,
            printed_upper: None,
        })
    }

    fn check(self) -> Result<Self> {
        if self.dim_y > self.dim_m.hi {
            return Err(Error::ArithmeticFault(format!(
                "dim Y = {} exceeds dim M <= {}",
                self.dim_y, self.dim_m.hi
            )));
        }
        Ok(self)
    }
}

fn cubic_count(k: i64) -> i64 {
    count_binom(k + 3, 3)
}

fn rank2_stable_b(k: i64, b: i64) -> Result<BundleSpec> {
    let spec = BundleSpec::rank2_on(k, 0, b)?;
    let verdict = classify_rank2(&spec)?;
    if !verdict.is_stable() {
        return Err(Error::NotAdmissible(format!("{spec} is {}", verdict.status)));
    }
    Ok(spec)
}

/// Dimension of the family of rank-2 bundles built from `bC`.
pub fn rank2_dim_y(k: i64, b: i64) -> Result<i64> {
    rank2_stable_b(k, b)?;
    Ok(match (k, b) {
        (3, 3) => 21,
        (3, 2) => 11,
        (2, 2) => 5,
        (2, _) => 2 * b + 7,
        _ if b > k => cubic_count(k) + 2 * b - k,
        _ => cubic_count(k) + 2 * b - k - 2 * count_binom(k - b + 3, 3),
    })
}

/// `8 c2 + 2 c1 - 3`.
pub fn rank2_ed(c1: i64, c2: i64) -> i64 {
    8 * c2 + 2 * c1 - 3
}

/// `12 c2 - 4 c1² - 8`.
pub fn rank3_ed(c1: i64, c2: i64) -> i64 {
    12 * c2 - 4 * c1 * c1 - 8
}

/// Exact moduli dimension for rank 2 on the quadric and the cubic, where
/// `h²(End E) = 0`.
pub fn rank2_exact_dim(k: i64, b: i64) -> Result<ModuliReport> {
    if !(2..=3).contains(&k) {
        return Err(Error::OutOfRegime(format!("exact rank 2 dimension needs k in {{2, 3}}, got {k}")));
    }
    let spec = rank2_stable_b(k, b)?;
    let chern = rank2_chern(&spec)?;
    let ed = rank2_ed(chern.c1, chern.c2);
    let direct = 8 * b * (k - 1) - 2 * k * k - 3;
    let dim_m = if k == 2 { 8 * b - 11 } else { 16 * b - 21 };
    if ed != direct || ed != dim_m {
        return Err(Error::ArithmeticFault(format!(
            "rank 2 k={k} b={b}: ed {ed}, 8b(k-1)-2k^2-3 = {direct}, dim M {dim_m}"
        )));
    }
    ModuliReport::exact(rank2_dim_y(k, b)?, ed, dim_m, 0)?.check()
}

/// Bounds on `dim_E M` for rank 2 with `k ≥ 4`, `b ≥ k-4`.
pub fn rank2_dim_bounds(k: i64, b: i64) -> Result<ModuliReport> {
    if k < 4 || b < k - 4 {
        return Err(Error::OutOfRegime(format!("estimate needs k >= 4 and b >= k-4, got k={k}, b={b}")));
    }
    let spec = rank2_stable_b(k, b)?;
    let chern = rank2_chern(&spec)?;
    let lo = 8 * (k - 1) * b - 2 * k * k - 3;
    if lo != rank2_ed(chern.c1, chern.c2) {
        return Err(Error::ArithmeticFault(format!("rank 2 ed mismatch at k={k}, b={b}")));
    }
    let h2_max = (k * k - 5 * k + 6) * b - count_binom(k - 1, 3);
    let hi = lo + h2_max;
    let dim_y = rank2_dim_y(k, b)?;
    let printed = Rational::from_integer((k * k + 3 * k - 2) * b)
        - Rational::new(k * k * k + 5 * k * k + 11 * k + 12, 6);
    ModuliReport {
        dim_y,
        ed: lo,
        h1_end: IntRange::new(lo, hi)?,
        h2_end: IntRange::new(0, h2_max)?,
        dim_m: IntRange::new(lo.max(dim_y), hi)?,
        smooth_at_e: if h2_max == 0 { Some(true) } else { None },
        codim_bound: Some(hi - dim_y),
        delta_assumption: false,
        dim_y_equals_dim_m: None,
        boundary: b == k - 4,
        printed_upper: Some(ExactRational(printed)),
    }
    .check()
}

/// `h⁰(P³, E(ν))`, `h⁰(E(l))`, `h⁰(E(k+l))` for the hyperplane family.
fn hyperplane_sections(k: i64, nu: i64, l: i64) -> (i64, i64, i64) {
    let at_nu = if l > nu { 3 } else { 3 + count_binom(nu - l + 3, 3) };
    let at_l = if l >= nu { 1 + 3 * count_binom(l - nu + 3, 3) } else { 1 };
    let at_kl = 3 * count_binom(l + k - nu + 3, 3) + cubic_count(k) - 1;
    (at_nu, at_l, at_kl)
}

/// Report for the hyperplane-power family, where `Y` is open in `M`.
pub fn rank3_hyperplane_report(k: i64, nu: i64, c1: i64, l: i64) -> Result<ModuliReport> {
    let spec = BundleSpec::Rank3Hyperplane { nu, c1, l };
    let (_, chern) = rank3_hyperplane(&spec)?;
    if spec.k() != k {
        return Err(Error::Precondition(format!("k = {k} but 3nu + c1 = {}", spec.k())));
    }
    let base = 3 * count_binom(l + k - nu + 3, 3) + cubic_count(k);
    let gap = (l - nu).abs();
    let h1 = base - if l != nu { 10 + 3 * count_binom(gap + 3, 3) } else { 16 };
    let h2 = base - 4 * k * (k + c1 + 3 * l) - if l != nu { 2 + 3 * count_binom(gap + 3, 3) } else { 8 };
    let (at_nu, at_l, at_kl) = hyperplane_sections(k, nu, l);
    let via_sections = at_kl - 3 * at_nu - at_l + 1;
    if via_sections != h1 {
        return Err(Error::ArithmeticFault(format!(
            "hyperplane h1: closed form {h1}, section count {via_sections}"
        )));
    }
    ModuliReport::exact(h1, rank3_ed(chern.c1, chern.c2), h1, h2)?.check()
}

fn rank3_admissible(k: i64, a: i64, b: i64) -> Result<BundleSpec> {
    if k < 2 {
        return Err(Error::NotAdmissible(format!("k = {k}: use the hyperplane family")));
    }
    let spec = BundleSpec::rank3_line_on(k, a, b)?;
    let verdict = classify_rank3(&spec)?;
    if !matches!(verdict.status, Status::Stable | Status::Unknown) {
        return Err(Error::NotAdmissible(format!("{spec} is {}", verdict.status)));
    }
    Ok(spec)
}

/// Quadratic main term shared by the first two regimes of `dim Y`.
fn rank3_main_term(k: i64, a: i64, b: i64) -> Result<i64> {
    let twice = 6 * (k - 1) * a * b - 3 * (k - 2) * a * a - 3 * (k - 4) * (a + (k - 1) * b);
    Ok(exact_div(twice, 2, "rank 3 dim Y")? + 3 * count_binom(k - 1, 3) + cubic_count(k) - (k - 3).max(0) - 7)
}

fn rank3_dim_y_regimes(k: i64, a: i64, b: i64) -> Result<Vec<i64>> {
    let mut values = Vec::with_capacity(2);
    let b_correction = |quadric: i64| if b > k { 0 } else if k >= 3 { -3 * count_binom(k - b + 3, 3) } else { quadric };
    if b >= a && a >= k - 3 {
        values.push(rank3_main_term(k, a, b)? + b_correction(3 * a - 9));
    }
    if a > b {
        let correction = match (k, a) {
            (2, 2) => 3 * b - 9,
            _ if a == k => -6,
            _ if a == k - 1 => -21,
            _ => 0,
        };
        values.push(rank3_main_term(k, a, b)? + correction);
    }
    if b >= a && a <= k - 2 {
        values.push(count_binom(a + 2, 2) * (3 * b - 2 * a + 3) + cubic_count(k) - (k - 3).max(0) - 10 + b_correction(-9));
    }
    Ok(values)
}

/// Dimension of the family of rank-3 bundles built from `aL + bC` on a
/// degree-`k` surface.
pub fn rank3_line_dim_y(k: i64, a: i64, b: i64) -> Result<i64> {
    rank3_admissible(k, a, b)?;
    let values = rank3_dim_y_regimes(k, a, b)?;
    let first = *values
        .first()
        .ok_or_else(|| Error::ArithmeticFault(format!("no dim Y regime at k={k}, a={a}, b={b}")))?;
    if !cfg!(feature = "first-match") && values.iter().any(|&v| v != first) {
        return Err(Error::ArithmeticFault(format!("dim Y regimes disagree at k={k}, a={a}, b={b}: {values:?}")));
    }
    Ok(first)
}

/// `dim{S} + dim{τ} - dim{σ}` evaluated with engine `h⁰` values.
pub fn rank3_line_dim_y_count(k: i64, a: i64, b: i64) -> Result<i64> {
    let s = SurfaceClass::new(k)?;
    Ok(cubic_count(k) - (k - 3).max(0) - 10 + 3 * h0_master(a, b, &s)? - 3 * h0_master(k - a, k - b, &s)?)
}

fn k_large_hypothesis(k: i64, a: i64, b: i64) -> bool {
    if a > b {
        (b >= k && b * (k - 1) - a * (k - 2) > 2) || (a == k + 1 && b == k)
    } else {
        a > k || (a == k && b == k + 1)
    }
}

/// `h¹(End E)` when `H¹(E(ν)) = 0`, up to the unknown `dim(im δ) ≤ max(k-3, 0)`.
pub fn rank3_line_h1_k_large(k: i64, a: i64, b: i64) -> Result<ModuliReport> {
    let spec = rank3_admissible(k, a, b)?;
    if classify_rank3(&spec)?.status != Status::Stable {
        return Err(Error::NotAdmissible(format!("{spec}: stability unresolved")));
    }
    if !k_large_hypothesis(k, a, b) {
        return Err(Error::OutOfRegime(format!("k={k}, a={a}, b={b} outside the H1(E(nu)) = 0 range")));
    }
    let chern = rank3_chern(&spec)?;
    let ed = rank3_ed(chern.c1, chern.c2);
    let v = cubic_count(k) - 10 + 3 * h0_master(a, b, &SurfaceClass::new(k)?)?;
    let delta_max = (k - 3).max(0);
    let dim_y = rank3_line_dim_y(k, a, b)?;
    let h1_end = IntRange::new(v - delta_max, v)?;
    let dim_m = IntRange::new(dim_y.max(ed), v)?;
    ModuliReport {
        dim_y,
        ed,
        h1_end,
        h2_end: IntRange::new(h1_end.lo - ed, h1_end.hi - ed)?,
        dim_m,
        smooth_at_e: if dim_m.lo == h1_end.hi || h1_end.hi == ed { Some(true) } else { None },
        codim_bound: Some(delta_max),
        delta_assumption: true,
        dim_y_equals_dim_m: if dim_m.is_exact() { Some(dim_y == dim_m.lo) } else { None },
        boundary: false,
        printed_upper: None,
    }
    .check()
}

/// Rank 3 on the quadric (`ν = 1`, `c1 = -1`).
pub fn rank3_line_report_k2(a: i64, b: i64) -> Result<ModuliReport> {
    let spec = rank3_admissible(2, a, b)?;
    let (lo, hi) = (a.min(b), a.max(b));
    let full = 3 * (a + 1) * (b + 1);
    let small = 12 * a + 12 * b - 24;
    let dim_y = if hi >= 3 { full } else { small };
    let h1 = if lo >= 3 { full } else { small };
    let h2 = if lo >= 3 { 3 * (a - 3) * (b - 3) } else { 0 };
    let chern = rank3_chern(&spec)?;
    let mut report = ModuliReport::exact(dim_y, rank3_ed(chern.c1, chern.c2), h1, h2)?;
    report.dim_y_equals_dim_m = Some(!(hi >= 4 && lo <= 2));
    if report.dim_y_equals_dim_m != Some(dim_y == h1) {
        return Err(Error::ArithmeticFault(format!("quadric dim Y = dim M flag disagrees at a={a}, b={b}")));
    }
    report.check()
}

/// Rank 3 on the cubic (`ν = 1`, `c1 = 0`).
pub fn rank3_line_report_k3(a: i64, b: i64) -> Result<ModuliReport> {
    let spec = rank3_admissible(3, a, b)?;
    if classify_rank3(&spec)?.status != Status::Stable {
        return Err(Error::NotAdmissible(format!("{spec}: stability unresolved")));
    }
    let large = 6 * a * b + 3 * b - 3 * count_binom(a, 2) + 13;
    let dim_y = match (a, b) {
        _ if a.max(b) >= 4 => large,
        _ if a >= b => 12 * a + 24 * b - 44,
        (2, 3) => 52,
        (1, 3) => 37,
        _ => return Err(Error::ArithmeticFault(format!("no cubic dim Y branch for a={a}, b={b}"))),
    };
    let first_branch = b >= a || 2 * b >= 4 + a;
    let (h1, h2) = if a.min(b) <= 3 {
        (12 * a + 24 * b - 44, 0)
    } else if first_branch {
        let twice = 4 * a * b - a * a - 7 * a - 14 * b + 38;
        (large, 3 * exact_div(twice, 2, "cubic h2")?)
    } else {
        (12 * a + 6 * b * b - 18 * b + 31, 3 * (2 * b * b - 14 * b + 25))
    };
    let chern = rank3_chern(&spec)?;
    let ed = rank3_ed(chern.c1, chern.c2);
    if h1 - h2 != ed {
        return Err(Error::ArithmeticFault(format!("cubic h1 - h2 = {} but ed = {ed}", h1 - h2)));
    }
    let smooth = h2 == 0 || dim_y == h1;
    let dim_m = if smooth { IntRange::exact(h1) } else { IntRange::new(dim_y.max(ed), h1)? };
    ModuliReport {
        dim_y,
        ed,
        h1_end: IntRange::exact(h1),
        h2_end: IntRange::exact(h2),
        dim_m,
        smooth_at_e: if smooth { Some(true) } else { None },
        codim_bound: Some(h1 - dim_y),
        delta_assumption: false,
        dim_y_equals_dim_m: if smooth { Some(dim_y == h1) } else { None },
        boundary: false,
        printed_upper: None,
    }
    .check()
}
