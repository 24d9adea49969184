//! Exact integer linear algebra: Sylvester matrices and resultants.
//!
//! Sign convention: `Res(P, V) = c_n^m * prod V(z_k)` where `z_k` are the
//! roots of `P`, `n = deg P`, `m = deg V` and `c_n` is the leading
//! coefficient of `P`. This is the determinant of the Sylvester matrix whose
//! first `m` rows carry the coefficients of `P` (highest degree first).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polynomials::IntPolynomial;

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        Ok(IntMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    /// Determinant by Bareiss fraction-free elimination. Every intermediate
    /// division is exact.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::InvalidInput(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = self.entries.chunks(n).map(<[BigInt]>::to_vec).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    a[i][j] = q;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }
}

/// The `(n+m) x (n+m)` Sylvester matrix of `P` (degree `n`) and `V` (degree `m`).
pub fn sylvester(p: &IntPolynomial, v: &IntPolynomial) -> Result<IntMatrix> {
    if p.is_zero() || v.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let n = p.degree();
    let m = v.degree();
    if n + m == 0 {
        return Err(Error::Degenerate("Sylvester matrix of two constants".into()));
    }
    let size = n + m;
    let mut mat = IntMatrix::zeros(size, size);
    let pd: Vec<&BigInt> = p.coeffs().iter().rev().collect();
    let vd: Vec<&BigInt> = v.coeffs().iter().rev().collect();
    for row in 0..m {
        for (j, c) in pd.iter().enumerate() {
            mat.set(row, row + j, (*c).clone());
        }
    }
    for row in 0..n {
        for (j, c) in vd.iter().enumerate() {
            mat.set(m + row, row + j, (*c).clone());
        }
    }
    Ok(mat)
}

/// `Res(P, V)` as the Bareiss determinant of the Sylvester matrix.
pub fn resultant(p: &IntPolynomial, v: &IntPolynomial) -> Result<BigInt> {
    sylvester(p, v)?.determinant()
}

/// `Res_z(P(z), w - V(z))` as a polynomial in `w`, by exact evaluation at
/// `deg P + 1` integer points and Newton interpolation over the rationals.
///
/// For monic `P` this is `prod (w - V(alpha_k))` over the roots of `P`.
pub fn level_resultant(p: &IntPolynomial, v: &IntPolynomial) -> Result<IntPolynomial> {
    if p.is_zero() || v.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if v.degree() == 0 {
        return Err(Error::Degenerate("level resultant needs deg V >= 1".into()));
    }
    let n = p.degree();
    let xs: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
    let ys = xs
        .iter()
        .map(|w| {
            let shifted = &IntPolynomial::constant(w.clone()) - v;
            resultant(p, &shifted)
        })
        .collect::<Result<Vec<_>>>()?;
    interpolate(&xs, &ys)
}

/// Newton interpolation through integer points; errors if the interpolant
/// does not have integer coefficients.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Result<IntPolynomial> {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.iter().map(|y| BigRational::from_integer(y.clone())).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let denom = BigRational::from_integer(&xs[i] - &xs[i - level]);
            dd[i] = (&dd[i] - &dd[i - 1]) / denom;
        }
    }
    // Expand the Newton form into monomial coefficients.
    let mut coeffs = vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        // coeffs <- coeffs * (z - xs[k]) + dd[k]
        let mut next = vec![BigRational::zero(); n];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i + 1 < n {
                next[i + 1] += c;
            }
            next[i] -= c * BigRational::from_integer(xs[k].clone());
        }
        next[0] += &dd[k];
        coeffs = next;
    }
    let ints = coeffs
        .into_iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::InvalidInput("interpolant is not integral".into()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPolynomial::from_coeffs(ints))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    /// Cofactor expansion along the first row; exponential, test-only.
    fn cofactor_det(m: &IntMatrix) -> BigInt {
        fn rec(rows: &[Vec<BigInt>]) -> BigInt {
            let n = rows.len();
            if n == 1 {
                return rows[0][0].clone();
            }
            let mut acc = BigInt::zero();
            for j in 0..n {
                let minor: Vec<Vec<BigInt>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = &rows[0][j] * rec(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        let rows: Vec<Vec<BigInt>> = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.get(i, j).clone()).collect())
            .collect();
        rec(&rows)
    }

    #[test]
    fn sylvester_example() {
        let s = sylvester(&p(&[-2, 1]), &p(&[-1, 0, 1])).unwrap();
        assert_eq!((s.rows(), s.cols()), (3, 3));
        assert_eq!(cofactor_det(&s), BigInt::from(3));
        assert_eq!(s.determinant().unwrap(), BigInt::from(3));
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p(&[-2, 1]), &p(&[-1, 0, 1])).unwrap(), BigInt::from(3));
        assert_eq!(resultant(&p(&[-2, 0, 1]), &p(&[-2, 0, 1])).unwrap(), BigInt::zero());
        assert_eq!(resultant(&p(&[-1, 0, 1]), &p(&[0, 2])).unwrap(), BigInt::from(-4));
        assert_eq!(resultant(&p(&[0, 1]), &p(&[0, 1])).unwrap(), BigInt::zero());
        // Shared factor (z - 1).
        let a = p(&[-1, 1]) * p(&[3, 0, 1]);
        let b = p(&[-1, 1]) * p(&[5, 1]);
        assert_eq!(resultant(&a, &b).unwrap(), BigInt::zero());
    }

    #[test]
    fn constant_cases() {
        assert_eq!(resultant(&p(&[3]), &p(&[1, 0, 1])).unwrap(), BigInt::from(9));
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[3])).unwrap(), BigInt::from(9));
        assert!(matches!(resultant(&p(&[3]), &p(&[2])), Err(Error::Degenerate(_))));
        assert_eq!(
            resultant(&IntPolynomial::zero(), &p(&[1, 1])),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn bareiss_matches_cofactor_with_pivoting() {
        let m = IntMatrix::from_rows(vec![
            vec![0.into(), 2.into(), 1.into(), 3.into()],
            vec![1.into(), 0.into(), 4.into(), 1.into()],
            vec![2.into(), 5.into(), 0.into(), 2.into()],
            vec![3.into(), 1.into(), 1.into(), 0.into()],
        ])
        .unwrap();
        assert_eq!(m.determinant().unwrap(), cofactor_det(&m));
    }

    #[test]
    fn level_resultant_is_companion() {
        // P = z^2 - 2, V = z^2 - 1: V(+-sqrt 2) = 1, so Q(w) = (w - 1)^2.
        let q = level_resultant(&p(&[-2, 0, 1]), &p(&[-1, 0, 1])).unwrap();
        assert_eq!(q, p(&[1, -2, 1]));
        // P = z: Q(w) = w - V(0) = w + 1.
        let q = level_resultant(&p(&[0, 1]), &p(&[-1, 0, 1])).unwrap();
        assert_eq!(q, p(&[1, 1]));
    }
}
