use num_bigint::BigInt;
use num_traits::One;

use super::IntPolynomial;
use crate::error::{Error, Result};

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The `j`-th cyclotomic polynomial, obtained by exact division of `w^j - 1`
/// by `Phi_d` for every proper divisor `d` of `j`.
pub fn cyclotomic(j: u64, cap: u64) -> Result<IntPolynomial> {
    if j == 0 {
        return Err(Error::InvalidInput("cyclotomic index must be positive".into()));
    }
    if j > cap {
        return Err(Error::ResourceCap {
            what: "cyclotomic index",
            requested: j as u128,
            cap: cap as u128,
        });
    }
    let divs = divisors(j);
    let mut table: Vec<(u64, IntPolynomial)> = Vec::with_capacity(divs.len());
    for &d in &divs {
        let mut phi = &IntPolynomial::monomial(BigInt::one(), d as usize) - &IntPolynomial::one();
        for (e, phi_e) in &table {
            if d % e == 0 {
                phi = phi.exact_div(phi_e).expect("cyclotomic factors divide z^d - 1");
            }
        }
        table.push((d, phi));
    }
    Ok(table.pop().expect("j has at least one divisor").1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn small_indices() {
        let cap = 10_000;
        assert_eq!(cyclotomic(1, cap).unwrap(), IntPolynomial::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2, cap).unwrap(), IntPolynomial::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(6, cap).unwrap(), IntPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12, cap).unwrap(), IntPolynomial::from_i64(&[1, 0, -1, 0, 1]));
        // Phi_105 is the first with a coefficient of absolute value 2.
        let phi105 = cyclotomic(105, cap).unwrap();
        assert_eq!(phi105.degree(), 48);
        assert!(phi105.coeffs().iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn resource_cap() {
        assert!(matches!(cyclotomic(11, 10), Err(Error::ResourceCap { .. })));
        assert!(cyclotomic(0, 10).is_err());
    }

    #[test]
    fn degree_is_totient_and_roots_are_primitive() {
        for j in 1..=30u64 {
            let phi = cyclotomic(j, 10_000).unwrap();
            assert_eq!(phi.degree() as u64, euler_phi(j));
            assert!(phi.is_monic());
            let c = phi.to_complex();
            for k in 1..=j {
                if num_integer::gcd(k, j) != 1 {
                    continue;
                }
                let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / j as f64);
                assert!(c.eval(z).norm() <= 1e-9, "Phi_{j} at exp(2 pi i {k}/{j})");
            }
        }
    }

    #[test]
    fn divisor_list() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(36), 12);
    }
}
