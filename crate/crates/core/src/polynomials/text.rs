//! Text format for integer polynomials.
//!
//! Two input forms are accepted: an ascending coefficient list `"c0,c1,...,cn"`
//! and a sparse expression such as `"z^10+z^9-z^7-3*z+1"`. The variable may be
//! written `z` or `w`. Output is always the sparse form in descending degree.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntPolynomial;
use crate::error::Error;

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("z")?,
                _ => write!(f, "z^{k}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if compact.contains(',') {
            parse_list(&compact)
        } else {
            parse_sparse(&compact)
        }
    }
}

fn parse_int(tok: &str, whole: &str) -> Result<BigInt, Error> {
    tok.parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("bad integer {tok:?} in {whole:?}")))
}

fn parse_list(s: &str) -> Result<IntPolynomial, Error> {
    let coeffs = s.split(',').map(|t| parse_int(t, s)).collect::<Result<Vec<_>, _>>()?;
    Ok(IntPolynomial::from_coeffs(coeffs))
}

fn parse_sparse(s: &str) -> Result<IntPolynomial, Error> {
    let mut terms: Vec<(bool, &str)> = Vec::new();
    let mut start = 0;
    let mut negative = false;
    let bytes = s.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if b == b'+' || b == b'-' {
            // A sign directly after '^' belongs to an exponent and is rejected later.
            if i > 0 && bytes[i - 1] == b'^' {
                continue;
            }
            if i > start {
                terms.push((negative, &s[start..i]));
            } else if i > 0 {
                return Err(Error::Parse(format!("empty term in {s:?}")));
            }
            negative = b == b'-';
            start = i + 1;
        }
    }
    if start >= s.len() {
        return Err(Error::Parse(format!("dangling sign in {s:?}")));
    }
    terms.push((negative, &s[start..]));

    let mut coeffs: Vec<BigInt> = Vec::new();
    for (neg, term) in terms {
        let (c, k) = parse_term(term, s)?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigInt::zero());
        }
        if neg {
            coeffs[k] -= c;
        } else {
            coeffs[k] += c;
        }
    }
    Ok(IntPolynomial::from_coeffs(coeffs))
}

fn parse_term(term: &str, whole: &str) -> Result<(BigInt, usize), Error> {
    let Some(pos) = term.find(['z', 'w']) else {
        return Ok((parse_int(term, whole)?, 0));
    };
    let coef = term[..pos].strip_suffix('*').unwrap_or(&term[..pos]);
    let c = if coef.is_empty() {
        BigInt::one()
    } else {
        parse_int(coef, whole)?
    };
    let rest = &term[pos + 1..];
    let k = if rest.is_empty() {
        1
    } else if let Some(exp) = rest.strip_prefix('^') {
        exp.parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad exponent {exp:?} in {whole:?}")))?
    } else {
        return Err(Error::Parse(format!("unexpected {rest:?} in {whole:?}")));
    };
    Ok((c, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn parses_both_forms() {
        assert_eq!("z^2-2".parse::<IntPolynomial>().unwrap(), p(&[-2, 0, 1]));
        assert_eq!("-2,0,1".parse::<IntPolynomial>().unwrap(), p(&[-2, 0, 1]));
        assert_eq!(
            "z^10+z^9-z^7-z^6-z^5-z^4-z^3+z+1".parse::<IntPolynomial>().unwrap(),
            p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
        );
        assert_eq!("2*z^2 - 1".parse::<IntPolynomial>().unwrap(), p(&[-1, 0, 2]));
        assert_eq!("-z".parse::<IntPolynomial>().unwrap(), p(&[0, -1]));
        assert_eq!("w-2".parse::<IntPolynomial>().unwrap(), p(&[-2, 1]));
        assert_eq!("5".parse::<IntPolynomial>().unwrap(), p(&[5]));
        assert_eq!("z+z".parse::<IntPolynomial>().unwrap(), p(&[0, 2]));
        assert!("0".parse::<IntPolynomial>().unwrap().is_zero());
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "z^", "z^-1", "z+", "2**z", "y", "1,,2", "z^2--1", "3q"] {
            assert!(bad.parse::<IntPolynomial>().is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn prints_sparse_descending() {
        assert_eq!(p(&[-2, 0, 1]).to_string(), "z^2-2");
        assert_eq!(p(&[1, -1, 0, -3]).to_string(), "-3z^3-z+1");
        assert_eq!(p(&[0]).to_string(), "0");
        assert_eq!(p(&[-7]).to_string(), "-7");
        assert_eq!(p(&[0, 1]).to_string(), "z");
    }
}
