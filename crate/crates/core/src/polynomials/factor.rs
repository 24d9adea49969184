//! Factorization over the integers by root-cluster reconstruction.
//!
//! A square-free primitive polynomial is split by finding its complex roots,
//! enumerating conjugation-closed root subsets in increasing size, rounding
//! `lc * prod(z - root)` to integers and confirming each candidate factor by
//! exact division. Multiplicities come from the exact square-free
//! decomposition, so the floating roots are always simple.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

use super::IntPolynomial;
use crate::error::{Error, Result};
use crate::rootfinding::{roots_with, RootOptions};

/// `unit * prod(factor ^ multiplicity)`; factors are primitive, irreducible
/// and have positive leading coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: BigInt,
    pub factors: Vec<(IntPolynomial, u32)>,
}

impl Factorization {
    pub fn product(&self) -> IntPolynomial {
        self.factors
            .iter()
            .map(|(f, e)| f.pow(*e))
            .product::<IntPolynomial>()
            .scale(&self.unit)
    }

    /// True when the input was a single irreducible of positive degree with
    /// multiplicity one, up to the unit.
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Factors `p` into content and irreducible primitive factors.
pub fn factor(p: &IntPolynomial, degree_cap: usize) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.degree() > degree_cap {
        return Err(Error::ResourceCap {
            what: "factorization degree",
            requested: p.degree() as u128,
            cap: degree_cap as u128,
        });
    }
    let (unit, parts) = p.square_free();
    let mut factors = Vec::new();
    for (part, mult) in parts {
        for f in split_square_free(&part)? {
            factors.push((f, mult));
        }
    }
    factors.sort_by(|(a, _), (b, _)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
    });
    Ok(Factorization { unit, factors })
}

/// Whether `p` is irreducible over the integers (constants are not).
pub fn is_irreducible(p: &IntPolynomial, degree_cap: usize) -> Result<bool> {
    if p.degree() == 0 {
        return Ok(false);
    }
    let f = factor(p, degree_cap)?;
    Ok(f.is_irreducible() && f.unit.abs() == BigInt::from(1))
}

/// A root or a conjugate pair; candidate factors are unions of classes.
#[derive(Debug, Clone)]
struct RootClass {
    members: Vec<Complex64>,
}

fn conjugate_classes(roots: &[Complex64]) -> Vec<RootClass> {
    let scale: f64 = roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let tiny = 1e-7 * scale;
    let mut classes = Vec::new();
    let mut used = vec![false; roots.len()];
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let z = roots[i];
        if z.im.abs() <= tiny {
            classes.push(RootClass {
                members: vec![Complex64::new(z.re, 0.0)],
            });
            continue;
        }
        let partner = (0..roots.len())
            .filter(|&j| !used[j] && roots[j].im.signum() != z.im.signum())
            .min_by(|&a, &b| (roots[a] - z.conj()).norm().total_cmp(&(roots[b] - z.conj()).norm()));
        match partner {
            Some(j) => {
                used[j] = true;
                let avg = 0.5 * (z + roots[j].conj());
                classes.push(RootClass {
                    members: vec![avg, avg.conj()],
                });
            }
            None => classes.push(RootClass { members: vec![z] }),
        }
    }
    classes
}

fn round_candidate(lead: &BigInt, roots: &[Complex64]) -> Option<IntPolynomial> {
    let lead_f = lead.to_f64()?;
    // Constant term first: cheap rejection before the full product.
    let c0: Complex64 = roots.iter().fold(Complex64::new(lead_f, 0.0), |acc, z| acc * (-z));
    if !near_integer(c0) {
        return None;
    }
    let mut poly = vec![Complex64::new(lead_f, 0.0)];
    for z in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * z;
        }
        poly = next;
    }
    let mut coeffs = Vec::with_capacity(poly.len());
    for c in poly {
        if !near_integer(c) {
            return None;
        }
        coeffs.push(BigInt::from_f64(c.re.round())?);
    }
    let cand = IntPolynomial::from_coeffs(coeffs).primitive_part();
    (cand.degree() > 0).then_some(cand)
}

fn near_integer(c: Complex64) -> bool {
    let mag = c.re.abs().max(1.0);
    if mag > 2f64.powi(50) {
        return false;
    }
    let tol = 1e-5 * mag.sqrt();
    c.im.abs() <= tol && (c.re - c.re.round()).abs() <= tol
}

fn split_square_free(p: &IntPolynomial) -> Result<Vec<IntPolynomial>> {
    let mut found = Vec::new();
    let mut rest = p.primitive_part();
    if rest.coeffs()[0].is_zero() {
        let z = IntPolynomial::identity();
        found.push(z.clone());
        rest = rest.exact_div(&z).expect("z divides p");
    }
    if rest.degree() <= 1 {
        if rest.degree() == 1 {
            found.push(rest);
        }
        return Ok(found);
    }
    let rs = roots_with(&rest.to_complex(), RootOptions::default(), None)?;
    let mut classes = conjugate_classes(&rs.roots);
    let mut size = 1;
    while 2 * size <= rest.degree() {
        match find_factor_of_size(&rest, &classes, size) {
            Some((f, used)) => {
                rest = rest.exact_div(&f).expect("candidate verified by exact division");
                let mut keep = Vec::new();
                for (i, c) in classes.into_iter().enumerate() {
                    if !used.contains(&i) {
                        keep.push(c);
                    }
                }
                classes = keep;
                found.push(f);
            }
            None => size += 1,
        }
    }
    if rest.degree() > 0 {
        found.push(rest);
    }
    Ok(found)
}

fn find_factor_of_size(p: &IntPolynomial, classes: &[RootClass], size: usize) -> Option<(IntPolynomial, Vec<usize>)> {
    let lead = p.leading();
    let mut chosen = Vec::new();
    let mut result = None;
    search_subsets(classes, 0, size, &mut chosen, &mut |idx| {
        let roots: Vec<Complex64> = idx.iter().flat_map(|&i| classes[i].members.iter().copied()).collect();
        if let Some(cand) = round_candidate(&lead, &roots) {
            if cand.degree() == size && cand.divides(p) {
                result = Some((cand, idx.to_vec()));
                return true;
            }
        }
        false
    });
    result
}

/// Depth-first enumeration of class subsets with total size `remaining`;
/// stops as soon as `visit` returns true.
fn search_subsets(
    classes: &[RootClass],
    start: usize,
    remaining: usize,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if remaining == 0 {
        return visit(chosen);
    }
    for i in start..classes.len() {
        let k = classes[i].members.len();
        if k > remaining {
            continue;
        }
        chosen.push(i);
        if search_subsets(classes, i + 1, remaining - k, chosen, visit) {
            return true;
        }
        chosen.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn examples() {
        let f = factor(&p(&[-2, 0, 1]), 24).unwrap();
        assert_eq!(f.factors, vec![(p(&[-2, 0, 1]), 1)]);
        assert!(f.is_irreducible());

        let f = factor(&p(&[-1, 0, 1]), 24).unwrap();
        assert_eq!(f.factors, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);

        let f = factor(&p(&[4, 0, -4, 0, 1]), 24).unwrap();
        assert_eq!(f.factors, vec![(p(&[-2, 0, 1]), 2)]);
        assert_eq!(f.product(), p(&[4, 0, -4, 0, 1]));
    }

    #[test]
    fn content_and_sign_are_kept() {
        let q = p(&[6, 0, -6]); // -6 (z-1)(z+1)
        let f = factor(&q, 24).unwrap();
        assert_eq!(f.unit, BigInt::from(-6));
        assert_eq!(f.product(), q);
        let c = factor(&p(&[-7]), 24).unwrap();
        assert!(c.factors.is_empty());
        assert_eq!(c.product(), p(&[-7]));
    }

    #[test]
    fn non_monic_rational_roots() {
        // (2z - 1)(3z + 2)(z^2 + z + 1)
        let q = p(&[-1, 2]) * p(&[2, 3]) * p(&[1, 1, 1]);
        let f = factor(&q, 24).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert_eq!(f.product(), q);
    }

    #[test]
    fn swinnerton_dyer_style_quartic_is_irreducible() {
        // z^4 - 10 z^2 + 1 is irreducible but has four real roots.
        assert!(is_irreducible(&p(&[1, 0, -10, 0, 1]), 24).unwrap());
        assert!(!is_irreducible(&p(&[3]), 24).unwrap());
        assert!(!is_irreducible(&p(&[0, 0, 1]), 24).unwrap());
    }

    #[test]
    fn degree_cap() {
        let q = p(&[1, 1, 1, 1, 1, 1]);
        assert!(matches!(factor(&q, 4), Err(Error::ResourceCap { .. })));
        assert_eq!(factor(&IntPolynomial::zero(), 24), Err(Error::ZeroPolynomial));
    }
}
