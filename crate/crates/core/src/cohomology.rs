//! Cohomology of the line bundles `O_S(aL + bC)(j)`.
//!
//! `h⁰` comes from a piecewise closed form in three regimes, `h²` from Serre
//! duality against `K_S = (k-4)H`, and `h¹` from surface Riemann–Roch.

use serde::Serialize;

use crate::arith::{check_param, count_binom, exact_div, Rational};
use crate::error::{Error, Result};
use crate::lattice::{canonical_class, chi_divisor, DivisorClass, SurfaceClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CohomologyDims {
    pub h0: i64,
    pub h1: i64,
    pub h2: i64,
    pub chi: i64,
}

/// The three closed forms for `h⁰(O_S(aL + bC))` with `a, b ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// Riemann–Roch-shaped quadratic, valid once `O_S(aL + bC)` has no `h¹`.
    Quadratic,
    /// `a ≥ b`: peel off copies of `L` until the class is nef.
    Staircase,
    /// `b ≥ a`, `a ≤ k-2`: push forward along the pencil `|C|`.
    DirectImage,
}

/// `h⁰(O_S(j)) = C(j+3, 3) - C(j-k+3, 3)`. Valid for `k ≥ 1`.
pub fn h0_surface_twist(j: i64, s: &SurfaceClass) -> i64 {
    count_binom(j + 3, 3) - count_binom(j - s.degree() + 3, 3)
}

/// `h⁰(O_C(j)) = C(j+2, 2) - C(j-k+3, 2)` for the plane curve `C` of degree `k-1`.
pub fn h0_curve_twist(j: i64, s: &SurfaceClass) -> Result<i64> {
    s.require_lattice()?;
    Ok(count_binom(j + 2, 2) - count_binom(j - s.degree() + 3, 2))
}

fn quadratic(a: i64, b: i64, k: i64) -> Result<i64> {
    let twice = 2 * (k - 1) * a * b - (k - 2) * a * a - (k - 4) * (a + (k - 1) * b);
    Ok(exact_div(twice, 2, "quadratic h0 regime")? + count_binom(k - 1, 3) + 1)
}

fn staircase(a: i64, b: i64, k: i64) -> i64 {
    let j0 = if k == 2 { a - b } else { (a - b).min(b / (k - 2)) };
    count_binom(b + 3, 3) - count_binom(b - k + 3, 3) + (b + 1) * j0
        - (k - 2) * count_binom(j0 + 1, 2)
}

/// `Σ_{i=0}^{a} (i+1)(b-i+1)`, the section count of the pushed-forward
/// bundle.
fn direct_image_sum(a: i64, b: i64) -> i64 {
    (0..=a).map(|i| (i + 1) * (b - i + 1)).sum()
}

/// `C(a+2, 2)·(b - 2a/3 + 1)`, the closed form of [`direct_image_sum`].
pub fn direct_image_closed(a: i64, b: i64) -> Rational {
    Rational::from_integer(count_binom(a + 2, 2)) * (Rational::new(3 * b - 2 * a + 3, 3))
}

fn applicable(a: i64, b: i64, k: i64) -> Vec<Regime> {
    let mut out = Vec::with_capacity(3);
    let nef = b * (k - 1) - a * (k - 2) >= 0;
    if (b >= a && a >= k - 3) || (a >= b && b >= k - 3 && nef) {
        out.push(Regime::Quadratic);
    }
    if a >= b {
        out.push(Regime::Staircase);
    }
    if b >= a && a <= k - 2 {
        out.push(Regime::DirectImage);
    }
    out
}

fn evaluate(regime: Regime, a: i64, b: i64, k: i64) -> Result<i64> {
    match regime {
        Regime::Quadratic => quadratic(a, b, k),
        Regime::Staircase => Ok(staircase(a, b, k)),
        Regime::DirectImage => {
            let sum = direct_image_sum(a, b);
            if !cfg!(feature = "first-match") && direct_image_closed(a, b) != Rational::from_integer(sum) {
                return Err(Error::ArithmeticFault(format!(
                    "direct-image sum {sum} differs from closed form at a={a}, b={b}"
                )));
            }
            Ok(sum)
        }
    }
}

/// Every regime that covers `(a, b)` together with its value. Empty when
/// `a < 0` or `b < 0`.
pub fn h0_regimes(a: i64, b: i64, s: &SurfaceClass) -> Result<Vec<(Regime, i64)>> {
    s.require_lattice()?;
    check_param("a", a)?;
    check_param("b", b)?;
    if a < 0 || b < 0 {
        return Ok(Vec::new());
    }
    applicable(a, b, s.degree())
        .into_iter()
        .map(|r| Ok((r, evaluate(r, a, b, s.degree())?)))
        .collect()
}

/// `h⁰(S; O_S(aL + bC))`.
///
/// Overlapping regimes are all evaluated and must agree, unless the
/// `first-match` feature is enabled.
pub fn h0_master(a: i64, b: i64, s: &SurfaceClass) -> Result<i64> {
    s.require_lattice()?;
    check_param("a", a)?;
    check_param("b", b)?;
    if a < 0 || b < 0 {
        return Ok(0);
    }
    let k = s.degree();
    let regimes = applicable(a, b, k);
    let first = *regimes
        .first()
        .ok_or_else(|| Error::ArithmeticFault(format!("no h0 regime covers a={a}, b={b}, k={k}")))?;
    let value = evaluate(first, a, b, k)?;
    if cfg!(feature = "first-match") {
        return Ok(value);
    }
    for &other in &regimes[1..] {
        let v = evaluate(other, a, b, k)?;
        if v != value {
            return Err(Error::ArithmeticFault(format!(
                "h0 regimes disagree at a={a}, b={b}, k={k}: {first:?}={value}, {other:?}={v}"
            )));
        }
    }
    Ok(value)
}

/// All of `h⁰, h¹, h², χ` for `O_S(D)`.
pub fn cohomology(d: DivisorClass, s: &SurfaceClass) -> Result<CohomologyDims> {
    let dual = canonical_class(s)? - d;
    let h0 = h0_master(d.x_l, d.x_c, s)?;
    let h2 = h0_master(dual.x_l, dual.x_c, s)?;
    let chi = chi_divisor(d, s)?;
    let h1 = h0 + h2 - chi;
    if h1 < 0 {
        return Err(Error::ArithmeticFault(format!(
            "negative h1 for {d} on degree {}: h0={h0}, h2={h2}, chi={chi}",
            s.degree()
        )));
    }
    Ok(CohomologyDims { h0, h1, h2, chi })
}

fn non_negative(pairs: &[(&str, i64)], s: &SurfaceClass) -> Result<()> {
    s.require_lattice()?;
    for &(name, v) in pairs {
        check_param(name, v)?;
        if v < 0 {
            return Err(Error::Precondition(format!("{name} must be >= 0, got {v}")));
        }
    }
    Ok(())
}

/// `H⁰(O_S(-aL)(j)) = 0` iff `a > j`.
pub fn vanish_h0_neg_al(a: i64, j: i64, s: &SurfaceClass) -> Result<bool> {
    non_negative(&[("a", a), ("j", j)], s)?;
    Ok(a > j)
}

/// `H⁰(O_S(-bC)(j)) = 0` iff `b > j`.
pub fn vanish_h0_neg_bc(b: i64, j: i64, s: &SurfaceClass) -> Result<bool> {
    non_negative(&[("b", b), ("j", j)], s)?;
    Ok(b > j)
}

/// `H¹(O_S(-aL)(-j)) = 0` iff `j > (a-1)(k-2)`, or `j = 0, a = 1`, or `a = 0`.
pub fn vanish_h1_neg_al(a: i64, j: i64, s: &SurfaceClass) -> Result<bool> {
    non_negative(&[("a", a), ("j", j)], s)?;
    Ok(j > (a - 1) * (s.degree() - 2) || (j == 0 && a == 1) || a == 0)
}

/// `H¹(O_S(-bC)(-j)) = 0` iff `j > 0`, or `j = 0` and `b ≤ 1`.
pub fn vanish_h1_neg_bc(b: i64, j: i64, s: &SurfaceClass) -> Result<bool> {
    non_negative(&[("b", b), ("j", j)], s)?;
    Ok(j > 0 || b <= 1)
}

/// `h⁰(O_S(bC)(j))` for `j > k-4`, where it is
/// `h⁰(O_S(j)) + b·h⁰(O_C(j))`.
pub fn h0_bc_twist(b: i64, j: i64, s: &SurfaceClass) -> Result<i64> {
    non_negative(&[("b", b)], s)?;
    check_param("j", j)?;
    let k = s.degree();
    if j <= k - 4 {
        return Err(Error::OutOfRegime(format!("need j > k-4 = {}, got j = {j}", k - 4)));
    }
    Ok(h0_surface_twist(j, s) + b * h0_curve_twist(j, s)?)
}

/// Splitting type `[(degree, multiplicity)]` of the direct image of
/// `O_S(aL + bC)` to `P¹`: `⊕_{i=0}^{a} O(b-i)^{i+1}`.
pub fn direct_image_degrees(a: i64, b: i64, s: &SurfaceClass) -> Result<Vec<(i64, i64)>> {
    s.require_lattice()?;
    check_param("a", a)?;
    check_param("b", b)?;
    if !(b >= a && a >= 0 && a <= s.degree() - 2) {
        return Err(Error::OutOfRegime(format!(
            "direct image needs b >= a >= 0 and a <= k-2, got a={a}, b={b}, k={}",
            s.degree()
        )));
    }
    Ok((0..=a).map(|i| (b - i, i + 1)).collect())
}

/// `h⁰(P¹, ⊕ O(d)^m)`.
pub fn sections_on_p1(splitting: &[(i64, i64)]) -> i64 {
    splitting.iter().map(|&(d, m)| m * (d + 1).max(0)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(k: i64) -> SurfaceClass {
        SurfaceClass::new(k).unwrap()
    }

    #[test]
    fn surface_and_curve_twists() {
        assert_eq!(h0_surface_twist(2, &s(5)), 10);
        assert_eq!(h0_surface_twist(-1, &s(3)), 0);
        assert_eq!(h0_surface_twist(3, &s(3)), 19);
        assert_eq!(h0_curve_twist(1, &s(4)), Ok(3));
        assert_eq!(h0_curve_twist(0, &s(5)), Ok(1));
        assert_eq!(h0_curve_twist(-2, &s(3)), Ok(0));
        assert!(h0_curve_twist(0, &s(1)).is_err());
    }

    #[test]
    fn master_examples() {
        assert_eq!(h0_master(0, 7, &s(5)), Ok(8));
        assert_eq!(h0_master(2, 3, &s(4)), Ok(16));
        assert_eq!(h0_master(5, 4, &s(4)), Ok(37));
        assert_eq!(h0_master(-1, 5, &s(6)), Ok(0));
        assert_eq!(h0_master(3, 4, &s(2)), Ok(20));
    }

    #[test]
    fn small_b_takes_the_staircase() {
        // O_S itself on the quintic: the quadratic form would give chi = 5.
        assert_eq!(h0_master(0, 0, &s(5)), Ok(1));
        let regimes = h0_regimes(0, 0, &s(5)).unwrap();
        assert!(regimes.iter().all(|(r, _)| *r != Regime::Quadratic));
    }

    #[test]
    fn overlap_is_reported() {
        // a = b = k-2 is covered by all three regimes
        let r = h0_regimes(3, 3, &s(5)).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|&(_, v)| v == h0_surface_twist(3, &s(5))));
        assert!(h0_regimes(-1, 0, &s(5)).unwrap().is_empty());
    }

    #[test]
    fn cohomology_examples() {
        let d = CohomologyDims { h0: 3, h1: 2, h2: 0, chi: 1 };
        assert_eq!(cohomology(2 * DivisorClass::CURVE, &s(5)), Ok(d));
        let d = CohomologyDims { h0: 1, h1: 0, h2: 20, chi: 21 };
        assert_eq!(cohomology(DivisorClass::ZERO, &s(7)), Ok(d));
        let d = CohomologyDims { h0: 4, h1: 0, h2: 0, chi: 4 };
        assert_eq!(cohomology(DivisorClass::HYPERPLANE, &s(2)), Ok(d));
    }

    #[test]
    fn h1_of_bc_matches_closed_form() {
        // h¹(O_S(bC)) = (k-4)(k-1)b/2 - C(k-1, 3) + b once b > k-4
        for k in 4..10 {
            for b in (k - 3)..20 {
                let closed = (k - 4) * (k - 1) * b / 2 - count_binom(k - 1, 3) + b;
                let h = cohomology(b * DivisorClass::CURVE, &s(k)).unwrap();
                assert_eq!(h.h1, closed, "k={k} b={b}");
                assert_eq!((h.h0, h.h2), (b + 1, 0));
            }
        }
    }

    #[test]
    fn vanishing_examples() {
        assert_eq!(vanish_h0_neg_al(3, 2, &s(5)), Ok(true));
        assert_eq!(vanish_h0_neg_al(2, 2, &s(5)), Ok(false));
        assert_eq!(vanish_h0_neg_al(0, 0, &s(3)), Ok(false));
        assert_eq!(vanish_h0_neg_bc(4, 3, &s(6)), Ok(true));
        assert_eq!(vanish_h0_neg_bc(1, 1, &s(6)), Ok(false));
        assert_eq!(vanish_h0_neg_bc(0, 5, &s(2)), Ok(false));
        assert_eq!(vanish_h1_neg_al(2, 3, &s(4)), Ok(true));
        assert_eq!(vanish_h1_neg_al(2, 2, &s(4)), Ok(false));
        assert_eq!(vanish_h1_neg_al(0, 0, &s(9)), Ok(true));
        assert_eq!(vanish_h1_neg_bc(5, 1, &s(4)), Ok(true));
        assert_eq!(vanish_h1_neg_bc(2, 0, &s(4)), Ok(false));
        assert_eq!(vanish_h1_neg_bc(1, 0, &s(7)), Ok(true));
        assert!(matches!(vanish_h0_neg_al(-1, 0, &s(4)), Err(Error::Precondition(_))));
        assert!(matches!(vanish_h1_neg_bc(0, -2, &s(4)), Err(Error::Precondition(_))));
    }

    #[test]
    fn bc_twist_examples() {
        assert_eq!(h0_bc_twist(0, 2, &s(5)), Ok(10));
        assert_eq!(h0_bc_twist(2, 1, &s(4)), Ok(10));
        assert_eq!(h0_bc_twist(1, 0, &s(3)), Ok(2));
        assert!(matches!(h0_bc_twist(1, 1, &s(5)), Err(Error::OutOfRegime(_))));
        let via_engine = cohomology(DivisorClass::twisted(0, 2, 1), &s(4)).unwrap().h0;
        assert_eq!(via_engine, 10);
    }

    #[test]
    fn direct_image_examples() {
        assert_eq!(direct_image_degrees(0, 4, &s(3)), Ok(vec![(4, 1)]));
        let split = direct_image_degrees(1, 3, &s(4)).unwrap();
        assert_eq!(split, vec![(3, 1), (2, 2)]);
        assert_eq!(sections_on_p1(&split), 10);
        assert_eq!(direct_image_closed(1, 3), Rational::from_integer(10));
        let split = direct_image_degrees(2, 2, &s(5)).unwrap();
        assert_eq!(split, vec![(2, 1), (1, 2), (0, 3)]);
        assert_eq!(sections_on_p1(&split), h0_surface_twist(2, &s(5)));
        assert!(direct_image_degrees(4, 4, &s(5)).is_err());
        assert!(direct_image_degrees(3, 2, &s(5)).is_err());
    }
}
