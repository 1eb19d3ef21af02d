//! Small helpers around exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Exact rational scalar used for all coefficient and weight arithmetic.
pub type Rat = BigRational;

/// Canonical text form: `num` when the denominator is one, `num/den` otherwise.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Rational from integer parts.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Exact conversion of a decimal literal `int.frac` (both decimal digit
/// strings) into a rational, e.g. `0.25` becomes `1/4`.
pub fn decimal_to_rat(int_part: &str, frac_part: &str) -> Option<Rat> {
    let int: BigInt = int_part.parse().ok()?;
    if frac_part.is_empty() {
        return Some(Rat::from_integer(int));
    }
    let frac: BigInt = frac_part.parse().ok()?;
    let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
    Some(Rat::new(int * &scale + frac, scale))
}

/// Nearest `f64`, or `None` when the value does not fit a finite double.
pub fn rat_to_f64(r: &Rat) -> Option<f64> {
    let v = r.to_f64()?;
    v.is_finite().then_some(v)
}

/// Wire form of a rational: numerator and denominator as decimal strings, so
/// arbitrary-precision values survive JSON round trips.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatJson {
    pub num: String,
    pub den: String,
}

impl From<&Rat> for RatJson {
    fn from(r: &Rat) -> Self {
        RatJson {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl RatJson {
    /// Parses the decimal strings back into an exact rational.
    pub fn to_rat(&self) -> Option<Rat> {
        let num: BigInt = self.num.parse().ok()?;
        let den: BigInt = self.den.parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(Rat::new(num, den))
    }
}

/// True when `r > 0`.
pub fn is_positive(r: &Rat) -> bool {
    r.is_positive()
}
