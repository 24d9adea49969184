//! Small numeric helpers shared across modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `ln |n|` without overflowing for huge integers; `-inf` for zero.
pub fn ln_abs(n: &BigInt) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let a = n.abs();
    if let Some(v) = a.to_f64().filter(|v| v.is_finite()) {
        return v.ln();
    }
    let bits = a.bits();
    let shift = bits - 60;
    let top = (&a >> shift).to_f64().expect("60-bit value fits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Decimal string with 15 significant digits.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        // Rounding can carry into a new leading digit; trim to 15 again.
        let digits = s.chars().filter(char::is_ascii_digit).collect::<String>();
        let significant = digits.trim_start_matches('0').len();
        if significant > 15 && decimals > 0 {
            let d = decimals - 1;
            return format!("{x:.d$}");
        }
        s
    } else {
        format!("{x:.14e}")
    }
}

/// Parses an exact rational from `"p/q"`, an integer, or a decimal such as
/// `"0.125"` or `"-2.5e-3"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(all * ten.pow(scale as u32))
    } else {
        BigRational::new(all, ten.pow((-scale) as u32))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_of_huge_integers() {
        let big = BigInt::from(3).pow(2000);
        let expect = 2000.0 * 3f64.ln();
        assert!((ln_abs(&big) - expect).abs() / expect < 1e-14);
        assert_eq!(ln_abs(&BigInt::from(-1)), 0.0);
        assert_eq!(ln_abs(&BigInt::zero()), f64::NEG_INFINITY);
    }

    #[test]
    fn rationals() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(parse_rational("1/2").unwrap(), q(1, 2));
        assert_eq!(parse_rational("0.5").unwrap(), q(1, 2));
        assert_eq!(parse_rational(" 3 ").unwrap(), q(3, 1));
        assert_eq!(parse_rational("-2.5e-3").unwrap(), q(-1, 400));
        assert_eq!(parse_rational(".25").unwrap(), q(1, 4));
        assert_eq!(parse_rational("1e2").unwrap(), q(100, 1));
        for bad in ["", "x", "1/0", "1.2.3", "e5", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(fmt_real(2f64.sqrt()), "1.41421356237310");
        assert_eq!(fmt_real(0.5), "0.500000000000000");
        assert_eq!(fmt_real(1234.5), "1234.50000000000");
        assert_eq!(fmt_real(9.999999999999999), "10.0000000000000");
        assert_eq!(fmt_real(1e-9), "1.00000000000000e-9");
        assert_eq!(fmt_real(0.0), "0");
    }
}
