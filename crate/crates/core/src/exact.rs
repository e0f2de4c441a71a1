//! Helpers for exact rationals: "p/q" rendering and float conversion.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serializer;

/// Renders `r` as `p/q` with `q > 0`.
pub fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Nearest `f64`, without overflowing on large numerators.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let shift = r.numer().bits().max(r.denom().bits()) as i64 - 60;
    let (n, d) = if shift > 0 {
        (r.numer() >> shift as usize, r.denom() >> shift as usize)
    } else {
        (r.numer().clone(), r.denom().clone())
    };
    if d.is_zero() {
        return if r.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
    }
    n.to_f64().unwrap_or(0.0) / d.to_f64().unwrap_or(1.0)
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn serialize_ratio<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(r))
}

/// JSON number when it fits in `i64`, decimal string otherwise.
pub fn serialize_bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

pub fn serialize_opt_ratio<S: Serializer>(
    r: &Option<BigRational>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&ratio_string(r)),
        None => s.serialize_none(),
    }
}

/// Parses `p/q` or an integer.
pub fn parse_ratio(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p.trim().parse().ok()?, q))
        }
        None => Some(BigRational::from_integer(text.parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_and_parses() {
        assert_eq!(ratio_string(&frac(476, 10)), "238/5");
        assert_eq!(ratio_string(&int(-3)), "-3/1");
        assert_eq!(parse_ratio("238/5"), Some(frac(238, 5)));
        assert_eq!(parse_ratio("12"), Some(int(12)));
        assert_eq!(parse_ratio("1/0"), None);
    }

    #[test]
    fn float_conversion_survives_huge_values() {
        let big = BigRational::new(BigInt::from(10).pow(400) * 3, BigInt::from(10).pow(400));
        assert!((ratio_to_f64(&big) - 3.0).abs() < 1e-12);
        assert!((ratio_to_f64(&frac(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
    }
}
