//! Intersection numbers on a degree-`k` surface `S ⊂ P³` containing a line,
//! and Chern-class arithmetic on `P³`.
//!
//! On `S` the hyperplane class splits as `H = L + C` where `L` is the line and
//! `C` the residual plane curve of degree `k - 1`. The intersection form on
//! `span{L, C}` is
//!
//! ```text
//!   L·L = 2 - k     L·C = k - 1     C·C = 0
//! ```
//!
//! and the canonical class is `K_S = (k - 4) H`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::arith::{check_param, count_binom, exact_div, Rational};
use crate::error::{Error, Result};

/// A smooth surface of degree `k` in `P³` containing a line.
///
/// `k = 1` (a plane) is representable because the hyperplane-power family
/// lives on it, but it carries no `L`/`C` lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SurfaceClass {
    k: i64,
}

impl SurfaceClass {
    pub fn new(k: i64) -> Result<Self> {
        check_param("k", k)?;
        if k < 1 {
            return Err(Error::Precondition(format!("surface degree must be >= 1, got {k}")));
        }
        Ok(Self { k })
    }

    pub fn degree(&self) -> i64 {
        self.k
    }

    pub fn has_lattice(&self) -> bool {
        self.k >= 2
    }

    pub(crate) fn require_lattice(&self) -> Result<()> {
        if self.has_lattice() {
            Ok(())
        } else {
            Err(Error::LatticeUndefined { k: self.k })
        }
    }
}

/// The class `x_L·L + x_C·C` in `span{L, C} ⊂ Pic(S)`.
///
/// Hyperplane twists are folded in through `H = L + C`, so the stored pair is
/// already the canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct DivisorClass {
    pub x_l: i64,
    pub x_c: i64,
}

impl DivisorClass {
    pub const ZERO: DivisorClass = DivisorClass { x_l: 0, x_c: 0 };
    pub const LINE: DivisorClass = DivisorClass { x_l: 1, x_c: 0 };
    pub const CURVE: DivisorClass = DivisorClass { x_l: 0, x_c: 1 };
    pub const HYPERPLANE: DivisorClass = DivisorClass { x_l: 1, x_c: 1 };

    pub const fn new(x_l: i64, x_c: i64) -> Self {
        Self { x_l, x_c }
    }

    /// `aL + bC + jH`, stored as `(a + j, b + j)`.
    pub const fn twisted(a: i64, b: i64, j: i64) -> Self {
        Self { x_l: a + j, x_c: b + j }
    }

    /// Canonical form of a class that is already canonical; kept so callers
    /// can normalise uniformly.
    pub const fn canonical(self) -> Self {
        self
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x_l + rhs.x_l, self.x_c + rhs.x_c)
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x_l - rhs.x_l, self.x_c - rhs.x_c)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> Self {
        Self::new(-self.x_l, -self.x_c)
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: DivisorClass) -> DivisorClass {
        DivisorClass::new(self * rhs.x_l, self * rhs.x_c)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}L{:+}C", self.x_l, self.x_c)
    }
}

/// Chern classes of a sheaf on `P³`, as integers against `1, ω₀, ω₀², ω₀³`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ChernData {
    pub rank: u32,
    pub c1: i64,
    pub c2: i64,
    pub c3: i64,
}

impl ChernData {
    pub const fn new(rank: u32, c1: i64, c2: i64, c3: i64) -> Self {
        Self { rank, c1, c2, c3 }
    }

    /// Chern data of the line bundle `O(j)`.
    pub const fn line_bundle(j: i64) -> Self {
        Self::new(1, j, 0, 0)
    }
}

impl fmt::Display for ChernData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {} (c1={}, c2={}, c3={})", self.rank, self.c1, self.c2, self.c3)
    }
}

pub fn pair(d1: DivisorClass, d2: DivisorClass, s: &SurfaceClass) -> Result<i64> {
    s.require_lattice()?;
    let k = s.degree();
    Ok(d1.x_l * d2.x_l * (2 - k) + (d1.x_l * d2.x_c + d1.x_c * d2.x_l) * (k - 1))
}

/// `D·H`, the degree of `D` as a curve class in `P³`.
pub fn degree(d: DivisorClass, s: &SurfaceClass) -> Result<i64> {
    s.require_lattice()?;
    Ok(d.x_l + d.x_c * (s.degree() - 1))
}

/// `K_S = (k - 4) H`.
pub fn canonical_class(s: &SurfaceClass) -> Result<DivisorClass> {
    s.require_lattice()?;
    Ok(DivisorClass::twisted(0, 0, s.degree() - 4))
}

/// Arithmetic genus `1 + (D² + K·D)/2`. Not validated: classes that are not
/// honest curves may give negative or non-integral values.
pub fn genus(d: DivisorClass, s: &SurfaceClass) -> Result<Rational> {
    let kd = pair(canonical_class(s)?, d, s)?;
    let dd = pair(d, d, s)?;
    Ok(Rational::from_integer(1) + Rational::new(dd + kd, 2))
}

/// `χ(O_S) = 1 + C(k-1, 3)`.
pub fn chi_structure(s: &SurfaceClass) -> Result<i64> {
    s.require_lattice()?;
    Ok(1 + count_binom(s.degree() - 1, 3))
}

/// Surface Riemann–Roch: `χ(O_S(D)) = χ(O_S) + D·(D - K)/2`.
pub fn chi_divisor(d: DivisorClass, s: &SurfaceClass) -> Result<i64> {
    let k_s = canonical_class(s)?;
    let half = exact_div(pair(d, d - k_s, s)?, 2, "D·(D-K)/2")?;
    Ok(chi_structure(s)? + half)
}

/// Hirzebruch–Riemann–Roch on `P³`:
///
/// ```text
///   χ(E) = r + 11/6 c1 + (c1² - 2 c2) + (c1³ - 3 c1 c2 + 3 c3)/6
/// ```
pub fn riemann_roch_p3(c: &ChernData) -> Rational {
    let r = Rational::from_integer(i64::from(c.rank));
    let (c1, c2, c3) = (c.c1, c.c2, c.c3);
    r + Rational::new(11 * c1, 6)
        + Rational::from_integer(c1 * c1 - 2 * c2)
        + Rational::new(c1 * c1 * c1 - 3 * c1 * c2 + 3 * c3, 6)
}

/// Chern data of `E(t) = E ⊗ O(t)` for rank 2 and rank 3.
pub fn twist_chern(c: &ChernData, t: i64) -> Result<ChernData> {
    match c.rank {
        2 => Ok(ChernData::new(2, c.c1 + 2 * t, c.c2 + c.c1 * t + t * t, 0)),
        3 => Ok(ChernData::new(
            3,
            c.c1 + 3 * t,
            c.c2 + 2 * c.c1 * t + 3 * t * t,
            c.c3 + c.c2 * t + c.c1 * t * t + t * t * t,
        )),
        r => Err(Error::UnsupportedRank(r)),
    }
}

/// Chern data of `End(E) = E ⊗ E*`: rank `r²`, `c1 = c3 = 0`,
/// `c2 = 2r·c2 - (r-1)·c1²`.
pub fn end_chern(c: &ChernData) -> ChernData {
    let r = i64::from(c.rank);
    ChernData::new(c.rank * c.rank, 0, 2 * r * c.c2 - (r - 1) * c.c1 * c.c1, 0)
}

/// `h¹(End E) - h²(End E)` for a stable bundle, from `χ(End E)` with
/// `h⁰(End E) = 1` and `h³(End E) = 0`.
pub fn expected_dimension_rr(c: &ChernData) -> Result<i64> {
    let chi = riemann_roch_p3(&end_chern(c));
    if !chi.is_integer() {
        return Err(Error::ArithmeticFault(format!("χ(End E) = {chi} for {c}")));
    }
    Ok(1 - chi.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(k: i64) -> SurfaceClass {
        SurfaceClass::new(k).unwrap()
    }

    const L: DivisorClass = DivisorClass::LINE;
    const C: DivisorClass = DivisorClass::CURVE;
    const H: DivisorClass = DivisorClass::HYPERPLANE;

    #[test]
    fn pair_examples() {
        assert_eq!(pair(L, L, &s(4)), Ok(-2));
        assert_eq!(pair(C, C, &s(7)), Ok(0));
        assert_eq!(pair(H, H, &s(5)), Ok(5));
        assert_eq!(pair(L, C, &s(3)), Ok(2));
    }

    #[test]
    fn lattice_rejects_planes() {
        let plane = s(1);
        assert_eq!(pair(L, C, &plane), Err(Error::LatticeUndefined { k: 1 }));
        assert!(degree(L, &plane).is_err());
        assert!(canonical_class(&plane).is_err());
        assert!(genus(L, &plane).is_err());
        assert!(chi_divisor(L, &plane).is_err());
        assert!(SurfaceClass::new(0).is_err());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree(L, &s(6)), Ok(1));
        assert_eq!(degree(C, &s(6)), Ok(5));
        assert_eq!(degree(2 * L + 3 * C, &s(4)), Ok(11));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_class(&s(4)), Ok(DivisorClass::new(0, 0)));
        assert_eq!(canonical_class(&s(2)), Ok(DivisorClass::new(-2, -2)));
        assert_eq!(canonical_class(&s(7)), Ok(DivisorClass::new(3, 3)));
    }

    #[test]
    fn twisted_classes_fold_into_canonical_form() {
        let d = DivisorClass::twisted(2, -1, 3);
        assert_eq!(d, DivisorClass::new(5, 2));
        assert_eq!(d.canonical(), d.canonical().canonical());
        assert_eq!(DivisorClass::twisted(0, 0, 1), H);
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus(L, &s(9)), Ok(Rational::from_integer(0)));
        assert_eq!(genus(C, &s(4)), Ok(Rational::from_integer(1)));
        assert_eq!(genus(C, &s(5)), Ok(Rational::from_integer(3)));
        // 2L on the quadric: two disjoint lines.
        assert_eq!(genus(2 * L, &s(2)), Ok(Rational::from_integer(-1)));
    }

    #[test]
    fn chi_structure_examples() {
        assert_eq!(chi_structure(&s(2)), Ok(1));
        assert_eq!(chi_structure(&s(4)), Ok(2));
        // 1 + h^2(O_S) = 1 + h^0(O_S(1)) on the quintic
        assert_eq!(chi_structure(&s(5)), Ok(1 + 4));
    }

    #[test]
    fn chi_divisor_examples() {
        // closed form 1 + C(k-1,3) - (k-4)(k-1)b/2 at k = 5, b = 2
        let (k, b) = (5, 2);
        let closed = 1 + count_binom(k - 1, 3) - (k - 4) * (k - 1) * b / 2;
        assert_eq!(closed, 1);
        assert_eq!(chi_divisor(2 * C, &s(5)), Ok(closed));
        assert_eq!(chi_divisor(H, &s(2)), Ok(4));
        assert_eq!(chi_divisor(DivisorClass::ZERO, &s(7)), Ok(21));
    }

    #[test]
    fn riemann_roch_line_bundles() {
        assert_eq!(riemann_roch_p3(&ChernData::line_bundle(0)), Rational::from_integer(1));
        assert_eq!(riemann_roch_p3(&ChernData::line_bundle(1)), Rational::from_integer(4));
        assert_eq!(riemann_roch_p3(&ChernData::line_bundle(-4)), Rational::from_integer(-1));
    }

    #[test]
    fn riemann_roch_null_correlation_twist() {
        // N(1) for the null-correlation bundle N has exactly 5 sections and no
        // higher cohomology.
        let n = ChernData::new(2, 0, 1, 0);
        let n1 = twist_chern(&n, 1).unwrap();
        assert_eq!(riemann_roch_p3(&n1), Rational::from_integer(5));
    }

    /// Coefficients of a truncated power series in `h` (degree ≤ 3).
    fn series_mul(a: [i64; 4], b: [i64; 4]) -> [i64; 4] {
        let mut out = [0; 4];
        for i in 0..4 {
            for j in 0..4 - i {
                out[i + j] += a[i] * b[j];
            }
        }
        out
    }

    #[test]
    fn tangent_bundle_twist_from_euler_sequence() {
        // c(TP³) = (1+h)^4; T(-2) = 4·O(-1) - O(-2) in K-theory, so
        // c(T(-2)) = (1-h)^4 / (1-2h).
        let tangent = [1, 4, 6, 4];
        assert_eq!(tangent, [1, count_binom(4, 1), count_binom(4, 2), count_binom(4, 3)]);
        let oracle = series_mul([1, -4, 6, -4], [1, 2, 4, 8]);
        let t = ChernData::new(3, tangent[1], tangent[2], tangent[3]);
        let twisted = twist_chern(&t, -2).unwrap();
        assert_eq!([1, twisted.c1, twisted.c2, twisted.c3], oracle);
        assert_eq!(twisted, ChernData::new(3, -2, 2, 0));
    }

    #[test]
    fn twist_examples() {
        let c = ChernData::new(3, -1, 7, 3);
        assert_eq!(twist_chern(&c, 0), Ok(c));
        assert_eq!(
            twist_chern(&ChernData::new(2, 0, 1, 0), 1),
            Ok(ChernData::new(2, 2, 2, 0))
        );
        assert_eq!(
            twist_chern(&ChernData::new(4, 0, 0, 0), 1),
            Err(Error::UnsupportedRank(4))
        );
    }

    #[test]
    fn expected_dimension_matches_known_moduli() {
        // null-correlation bundles: 5; Hartshorne c2 = 2: 13; c1 = -1, c2 = 2: 11
        assert_eq!(expected_dimension_rr(&ChernData::new(2, 0, 1, 0)), Ok(5));
        assert_eq!(expected_dimension_rr(&ChernData::new(2, 0, 2, 0)), Ok(13));
        assert_eq!(expected_dimension_rr(&ChernData::new(2, -1, 2, 0)), Ok(11));
        // T(-2) is rigid
        assert_eq!(expected_dimension_rr(&ChernData::new(3, -2, 2, 0)), Ok(0));
    }
}
