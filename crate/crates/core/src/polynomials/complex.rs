use num_complex::Complex64;

use super::IntPolynomial;

/// Polynomial with `f64` complex coefficients, ascending by degree.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
    inexact: bool,
}

impl ComplexPolynomial {
    /// Trailing exact zeros are dropped.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        ComplexPolynomial { coeffs, inexact: false }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Nearest-rounded conversion; `is_inexact` reports whether any
    /// coefficient was not representable.
    pub fn from_int(p: &IntPolynomial) -> Self {
        let mut inexact = false;
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| {
                let (v, exact) = IntPolynomial::coeff_to_f64(c);
                inexact |= !exact;
                Complex64::new(v, 0.0)
            })
            .collect();
        ComplexPolynomial { coeffs, inexact }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_inexact(&self) -> bool {
        self.inexact
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `(P(z), P'(z))` in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let mut p = zero;
        let mut dp = zero;
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// `sum |c_k| |z|^k`, the scale of rounding error in `eval(z)`.
    pub fn eval_abs(&self, z: Complex64) -> f64 {
        let a = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * a + c.norm())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        ComplexPolynomial {
            coeffs,
            inexact: self.inexact,
        }
    }

    /// `P(z) - w`.
    pub fn shifted(&self, w: Complex64) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(-w);
        } else {
            coeffs[0] -= w;
        }
        ComplexPolynomial {
            coeffs,
            inexact: self.inexact,
        }
    }
}

impl From<&IntPolynomial> for ComplexPolynomial {
    fn from(p: &IntPolynomial) -> Self {
        Self::from_int(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn eval_examples() {
        let p = ComplexPolynomial::from_real(&[-2.0, 0.0, 1.0]);
        assert_eq!(p.eval(Complex64::new(0.0, 0.0)), Complex64::new(-2.0, 0.0));
        let id = ComplexPolynomial::from_real(&[0.0, 1.0]);
        let z = Complex64::new(3.0, 4.0);
        assert_eq!(id.eval(z), z);
        let lehmer = IntPolynomial::from_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]).to_complex();
        assert_eq!(lehmer.eval(Complex64::new(1.0, 0.0)), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn inexact_conversion_is_flagged() {
        let big = BigInt::from(2u64).pow(60) + 1;
        let p = IntPolynomial::from_coeffs(vec![big, BigInt::from(1)]);
        assert!(p.to_complex().is_inexact());
        assert!(!IntPolynomial::from_i64(&[1, 2, 3]).to_complex().is_inexact());
    }

    #[test]
    fn derivative_with_value() {
        let p = ComplexPolynomial::from_real(&[1.0, -3.0, 0.0, 2.0]);
        let z = Complex64::new(0.5, -1.5);
        let (v, d) = p.eval_with_derivative(z);
        assert!((v - p.eval(z)).norm() < 1e-14);
        assert!((d - p.derivative().eval(z)).norm() < 1e-13);
    }
}
