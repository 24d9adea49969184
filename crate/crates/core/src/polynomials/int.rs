use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use super::ComplexPolynomial;

/// Univariate polynomial with arbitrary-precision integer coefficients.
///
/// Coefficients are stored in ascending order of degree (`c_0` first) with no
/// trailing zeros, so the zero polynomial is the empty sequence. Every
/// constructor normalizes, which makes equality structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

fn trim(mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    coeffs
}

impl IntPolynomial {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        IntPolynomial { coeffs: trim(coeffs) }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * z^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// The identity polynomial `z`.
    pub fn identity() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient; zero for the zero polynomial.
    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Self::from_coeffs(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// `P` or `-P`, whichever has a positive leading coefficient.
    pub fn sign_normalized(&self) -> Self {
        if self.leading().is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact value at an integer point.
    pub fn eval_int(&self, z: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * z + c)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// `Q(V(z))` by Horner's scheme in `V`.
    pub fn compose(&self, inner: &IntPolynomial) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    /// Exact quotient `self / divisor` over the integers, or `None` when the
    /// division leaves a remainder or a non-integral quotient.
    pub fn exact_div(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dn = divisor.degree();
        if self.degree() < dn {
            return None;
        }
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); self.degree() - dn + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dn];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * d;
            }
            quot[k] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(Self::from_coeffs(quot))
        } else {
            None
        }
    }

    pub fn divides(&self, other: &IntPolynomial) -> bool {
        other.exact_div(self).is_some()
    }

    /// Pseudo-remainder `prem(self, divisor)`: the remainder of
    /// `lc(divisor)^(deg self - deg divisor + 1) * self` on division by `divisor`.
    pub fn pseudo_rem(&self, divisor: &IntPolynomial) -> IntPolynomial {
        assert!(!divisor.is_zero(), "pseudo-division by zero polynomial");
        let dn = divisor.degree();
        if self.is_zero() || self.degree() < dn {
            return self.clone();
        }
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        for k in (0..=(self.degree() - dn)).rev() {
            let top = rem[k + dn].clone();
            for c in rem.iter_mut() {
                *c *= &lead;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &top * d;
            }
        }
        rem.truncate(dn);
        Self::from_coeffs(rem)
    }

    /// Greatest common divisor in `Z[z]`, normalized to a positive leading
    /// coefficient. Uses the primitive remainder sequence.
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() {
            return other.sign_normalized();
        }
        if other.is_zero() {
            return self.sign_normalized();
        }
        let content = self.content().gcd(&other.content());
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        loop {
            if b.degree() == 0 {
                return Self::constant(content);
            }
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return b.scale(&content);
            }
            a = b;
            b = r.primitive_part();
        }
    }

    /// Square-free decomposition by Yun's algorithm.
    ///
    /// Returns `(unit, parts)` with `self = unit * prod(part_i ^ i)`, where
    /// every part is primitive with positive leading coefficient, pairwise
    /// coprime and square-free. Only nonconstant parts are listed.
    pub fn square_free(&self) -> (BigInt, Vec<(IntPolynomial, u32)>) {
        if self.is_zero() {
            return (BigInt::zero(), Vec::new());
        }
        let f = self.primitive_part();
        let unit = self.leading() / f.leading();
        if f.degree() == 0 {
            return (unit, Vec::new());
        }
        let df = f.derivative();
        let a0 = f.gcd(&df).primitive_part();
        let mut parts = Vec::new();
        if a0.degree() == 0 {
            parts.push((f, 1));
            return (unit, parts);
        }
        let mut b = f.exact_div(&a0).expect("gcd divides f");
        let c = df.exact_div(&a0).expect("gcd divides f'");
        let mut d = &c - &b.derivative();
        let mut i = 1u32;
        while b.degree() > 0 {
            let a = b.gcd(&d).primitive_part();
            let next_b = b.exact_div(&a).expect("gcd divides b");
            let next_c = d.exact_div(&a).expect("gcd divides d");
            if a.degree() > 0 {
                parts.push((a, i));
            }
            d = &next_c - &next_b.derivative();
            b = next_b;
            i += 1;
        }
        (unit, parts)
    }

    /// Floating mirror; records whether any coefficient rounded.
    pub fn to_complex(&self) -> ComplexPolynomial {
        ComplexPolynomial::from_int(self)
    }

    pub(crate) fn coeff_to_f64(c: &BigInt) -> (f64, bool) {
        let v = c.to_f64().unwrap_or(f64::INFINITY);
        let exact = v.is_finite() && BigInt::from_f64(v).as_ref() == Some(c);
        (v, exact)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        IntPolynomial::from_coeffs(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) + rhs.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Product for IntPolynomial {
    fn product<I: Iterator<Item = IntPolynomial>>(iter: I) -> Self {
        iter.fold(IntPolynomial::one(), |acc, p| &acc * &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn normalization_trims_trailing_zeros() {
        let a = p(&[1, 2, 0, 0]);
        assert_eq!(a.coeffs().len(), 2);
        assert_eq!(IntPolynomial::from_coeffs(a.coeffs().to_vec()), a);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0]).degree(), 0);
    }

    #[test]
    fn compose_examples() {
        let v = p(&[-1, 0, 1]);
        assert_eq!(p(&[-1, 1]).compose(&v), p(&[-2, 0, 1]));
        assert_eq!(p(&[1, 1]).compose(&v), p(&[0, 0, 1]));
        let w2 = p(&[0, 0, 1]);
        let got = w2.compose(&p(&[-2, 0, 1]));
        assert_eq!(got, p(&[4, 0, -4, 0, 1]));
        for z in [-3i64, -1, 2, 5, 11] {
            let z = BigInt::from(z);
            let inner = p(&[-2, 0, 1]).eval_int(&z);
            assert_eq!(got.eval_int(&z), &inner * &inner);
        }
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[-1, 0, 1]).derivative(), p(&[0, 2]));
        assert!(p(&[5]).derivative().is_zero());
        assert_eq!(p(&[4, 0, -4, 0, 1]).derivative(), p(&[0, -8, 0, 4]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[4, 0, -4, 0, 1]);
        assert_eq!(a.exact_div(&p(&[-2, 0, 1])), Some(p(&[-2, 0, 1])));
        assert_eq!(a.exact_div(&p(&[-1, 1])), None);
        // Non-integral quotient.
        assert_eq!(p(&[1, 1]).exact_div(&p(&[1, 2])), None);
        assert_eq!(p(&[2, 4]).exact_div(&p(&[1, 2])), Some(p(&[2])));
    }

    #[test]
    fn gcd_and_square_free() {
        let a = p(&[-1, 0, 1]); // (z-1)(z+1)
        let b = p(&[1, -2, 1]); // (z-1)^2
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(p(&[6, 6]).gcd(&p(&[4, 4])), p(&[2, 2]));

        // -3 (z-1)^2 (z+1)^3
        let f = (p(&[-1, 1]).pow(2) * p(&[1, 1]).pow(3)).scale(&BigInt::from(-3));
        let (unit, parts) = f.square_free();
        assert_eq!(unit, BigInt::from(-3));
        assert_eq!(parts, vec![(p(&[-1, 1]), 2), (p(&[1, 1]), 3)]);
        let rebuilt = parts
            .iter()
            .map(|(q, e)| q.pow(*e))
            .product::<IntPolynomial>()
            .scale(&unit);
        assert_eq!(rebuilt, f);
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = p(&[3, 1, 4, 1, 5]);
        let b = p(&[2, 7, 3]);
        let r = a.pseudo_rem(&b);
        assert!(r.degree() < b.degree() || r.is_zero());
        // lc^3 * a - r is divisible by b.
        let lhs = &a.scale(&BigInt::from(27)) - &r;
        assert!(b.divides(&lhs));
    }

    #[test]
    fn primitive_part_and_content() {
        let a = p(&[-4, 0, -6]);
        assert_eq!(a.content(), BigInt::from(2));
        assert_eq!(a.primitive_part(), p(&[2, 0, 3]));
    }
}
