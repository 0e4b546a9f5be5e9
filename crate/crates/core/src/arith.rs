//! Integer and rational helpers shared by every formula module.
//!
//! All public entry points bound their integer parameters by [`PARAM_LIMIT`],
//! which keeps every cubic intermediate well inside `i64`.

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// Largest absolute value accepted for any integer parameter.
pub const PARAM_LIMIT: i64 = 100_000;

pub(crate) fn check_param(name: &str, value: i64) -> Result<i64> {
    if value.abs() > PARAM_LIMIT {
        return Err(Error::Precondition(format!(
            "|{name}| = {} exceeds the supported bound {PARAM_LIMIT}",
            value.unsigned_abs()
        )));
    }
    Ok(value)
}

/// Monomial-counting binomial: `C(n, r)` for `n >= r >= 0`, zero otherwise.
///
/// This is the convention behind every `h^0` formula, e.g. `C(j - k + 3, 3)`
/// vanishes as soon as `j < k`.
pub fn count_binom(n: i64, r: i64) -> i64 {
    if r < 0 || n < r {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: i128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    i64::try_from(acc).expect("binomial exceeds i64")
}

/// Polynomial binomial `n (n-1) ... (n-r+1) / r!`, defined for every integer
/// `n` (negative `n` gives the signed analytic continuation).
pub fn poly_binom(n: i64, r: i64) -> Rational {
    if r < 0 {
        return Rational::from_integer(0);
    }
    let mut acc = Rational::from_integer(1);
    for i in 0..r {
        acc *= Rational::new(n - i, i + 1);
    }
    acc
}

/// Exact division; a non-zero remainder is reported as an arithmetic fault
/// tagged with `what`.
pub(crate) fn exact_div(num: i64, den: i64, what: &str) -> Result<i64> {
    if den == 0 || num % den != 0 {
        return Err(Error::ArithmeticFault(format!(
            "{what}: {num}/{den} is not an integer"
        )));
    }
    Ok(num / den)
}

/// Serializes a rational as a JSON integer when integral and as the string
/// `"p/q"` otherwise.
pub fn serialize_rational<S: Serializer>(value: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    if value.is_integer() {
        s.serialize_i64(value.to_integer())
    } else {
        s.serialize_str(&value.to_string())
    }
}

/// Wrapper giving a rational the same JSON shape as [`serialize_rational`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactRational(pub Rational);

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_rational(&self.0, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_binom_clamps() {
        assert_eq!(count_binom(6, 3), 20);
        assert_eq!(count_binom(2, 3), 0);
        assert_eq!(count_binom(-1, 3), 0);
        assert_eq!(count_binom(-5, 2), 0);
        assert_eq!(count_binom(0, 0), 1);
        assert_eq!(count_binom(4, -1), 0);
    }

    #[test]
    fn poly_binom_continues_to_negative_arguments() {
        assert_eq!(poly_binom(6, 3), Rational::from_integer(20));
        assert_eq!(poly_binom(2, 3), Rational::from_integer(0));
        // (-1)(-2)(-3)/6
        assert_eq!(poly_binom(-1, 3), Rational::from_integer(-1));
        assert_eq!(poly_binom(-2, 2), Rational::from_integer(3));
    }

    #[test]
    fn binomials_agree_on_the_counting_range() {
        for n in 0..40 {
            for r in 0..=n {
                assert_eq!(Rational::from_integer(count_binom(n, r)), poly_binom(n, r));
            }
        }
    }

    #[test]
    fn exact_div_faults_on_remainder() {
        assert_eq!(exact_div(12, 4, "t"), Ok(3));
        assert!(exact_div(7, 2, "t").unwrap_err().is_fault());
    }

    #[test]
    fn param_bound() {
        assert!(check_param("a", PARAM_LIMIT).is_ok());
        assert!(check_param("a", -PARAM_LIMIT - 1).is_err());
    }
}
