//! Lemniscates `L = {z : |V(z)| = r}` and their potential theory.
//!
//! The equilibrium measure of `L` is the pushforward of the uniform measure on
//! the circle `|w| = r` under the `m`-valued inverse of `V`, which is what the
//! quadrature in [`quadrature`] exploits.

mod quadrature;
pub(crate) use quadrature::check_nodes;
mod trace;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::polynomials::{ComplexPolynomial, IntPolynomial};
use crate::rootfinding::{roots, solve_level_with, RootOptions, RootSet};

pub use quadrature::{equilibrium_average, Average, LevelGrid};
pub use trace::{trace, Component, CurveTrace, TraceWarning};

/// Position of a point relative to a lemniscate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Interior,
    OnCurve,
    Exterior,
}

/// The level curve `|V(z)| = r` of a polynomial `V` of degree `m >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Lemniscate {
    v: ComplexPolynomial,
    v_int: Option<IntPolynomial>,
    r_exact: BigRational,
    r: f64,
}

impl Lemniscate {
    /// Lemniscate of an integer polynomial with an exact radius.
    pub fn new(v: IntPolynomial, r: BigRational) -> Result<Self> {
        if v.degree() == 0 {
            return Err(Error::InvalidInput(
                "lemniscate polynomial must have degree >= 1".into(),
            ));
        }
        if !r.is_positive() {
            return Err(Error::InvalidInput("lemniscate radius must be positive".into()));
        }
        let rf = ratio_to_f64(&r);
        Ok(Lemniscate {
            v: v.to_complex(),
            v_int: Some(v),
            r_exact: r,
            r: rf,
        })
    }

    /// Same as [`Lemniscate::new`] with the radius given as a float, taken exactly.
    pub fn with_radius(v: IntPolynomial, r: f64) -> Result<Self> {
        let exact = BigRational::from_f64(r).ok_or_else(|| Error::InvalidInput(format!("radius {r} is not finite")))?;
        Self::new(v, exact)
    }

    /// Lemniscate of a polynomial with complex coefficients. Operations that
    /// need exact integer arithmetic on `V` are unavailable for it.
    pub fn from_complex(v: ComplexPolynomial, r: f64) -> Result<Self> {
        if v.degree() == 0 {
            return Err(Error::InvalidInput(
                "lemniscate polynomial must have degree >= 1".into(),
            ));
        }
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidInput("lemniscate radius must be positive".into()));
        }
        Ok(Lemniscate {
            v,
            v_int: None,
            r_exact: BigRational::from_f64(r).expect("finite radius"),
            r,
        })
    }

    /// The unit circle `|z| = 1`.
    pub fn unit_circle() -> Self {
        Self::new(IntPolynomial::identity(), BigRational::from_integer(1.into())).expect("valid lemniscate")
    }

    pub fn v(&self) -> &ComplexPolynomial {
        &self.v
    }

    pub fn v_int(&self) -> Option<&IntPolynomial> {
        self.v_int.as_ref()
    }

    /// Integer `V`, or a hypothesis error naming the operation that needs it.
    pub fn require_int(&self, op: &str) -> Result<&IntPolynomial> {
        self.v_int
            .as_ref()
            .ok_or_else(|| Error::HypothesisViolation(format!("{op} needs V with integer coefficients")))
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn r_exact(&self) -> &BigRational {
        &self.r_exact
    }

    /// `m = deg V`.
    pub fn degree(&self) -> usize {
        self.v.degree()
    }

    /// `|a_m|`.
    pub fn leading_abs(&self) -> f64 {
        self.v.leading().norm()
    }

    /// `|a_m|` exactly, when `V` is integral.
    pub fn leading_abs_exact(&self) -> Option<BigInt> {
        self.v_int.as_ref().map(|v| v.leading().abs())
    }

    /// `(r / |a_m|)^(1/m)`.
    pub fn capacity(&self) -> f64 {
        (self.r / self.leading_abs()).powf(1.0 / self.degree() as f64)
    }

    /// Relative offset `(|V(z)| - r) / r`.
    pub fn level_offset(&self, z: Complex64) -> f64 {
        (self.v.eval(z).norm() - self.r) / self.r
    }

    pub fn classify(&self, z: Complex64, tol: f64) -> Location {
        let off = self.level_offset(z);
        if off.abs() <= tol {
            Location::OnCurve
        } else if off < 0.0 {
            Location::Interior
        } else {
            Location::Exterior
        }
    }

    /// Green function of the exterior of the filled lemniscate with pole at
    /// infinity: `(1/m) log(|V(z)| / r)` outside, zero on the filled set.
    pub fn green(&self, z: Complex64) -> f64 {
        let a = self.v.eval(z).norm();
        if a > self.r {
            (a / self.r).ln() / self.degree() as f64
        } else {
            0.0
        }
    }

    /// `integral log|z - t| dmu(t) = (1/m) log(max(r, |V(z)|) / |a_m|)`.
    pub fn equilibrium_potential(&self, z: Complex64) -> f64 {
        let a = self.v.eval(z).norm().max(self.r);
        (a / self.leading_abs()).ln() / self.degree() as f64
    }

    /// Critical points of `V` (roots of `V'`); empty for linear `V`.
    pub fn critical_points(&self) -> Result<Vec<Complex64>> {
        if self.degree() < 2 {
            return Ok(Vec::new());
        }
        Ok(roots(&self.v.derivative(), 1e-14)?.roots)
    }

    /// Critical points whose value lies on the curve to relative `1e-9`.
    pub fn near_critical(&self) -> Result<Vec<Complex64>> {
        Ok(self
            .critical_points()?
            .into_iter()
            .filter(|&c| self.level_offset(c).abs() <= 1e-9)
            .collect())
    }

    /// The `m` points of `L` over angle `theta`, i.e. the solutions of
    /// `V(z) = r e^{i theta}`, Newton-polished.
    pub fn level_points(&self, theta: f64, warm: Option<&[Complex64]>) -> Result<RootSet> {
        let w = Complex64::from_polar(self.r, theta);
        let mut rs = solve_level_with(&self.v, w, warm, RootOptions::default())?;
        for z in rs.roots.iter_mut() {
            *z = newton_on_level(&self.v, w, *z);
        }
        Ok(rs)
    }

    /// `r * |a_m|` as an exact rational, when `V` is integral.
    pub fn radius_times_leading(&self) -> Option<BigRational> {
        self.leading_abs_exact()
            .map(|a| &self.r_exact * BigRational::from_integer(a))
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Residual-guarded Newton refinement of a solution of `V(z) = w`.
fn newton_on_level(v: &ComplexPolynomial, w: Complex64, z: Complex64) -> Complex64 {
    let mut z = z;
    for _ in 0..3 {
        let (val, der) = v.eval_with_derivative(z);
        let res = val - w;
        if res.norm() == 0.0 || der.norm() == 0.0 {
            break;
        }
        let cand = z - res / der;
        if (v.eval(cand) - w).norm() < res.norm() {
            z = cand;
        } else {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lm(v: &[i64], r: f64) -> Lemniscate {
        Lemniscate::with_radius(IntPolynomial::from_i64(v), r).unwrap()
    }

    #[test]
    fn classify_examples() {
        let circle = Lemniscate::unit_circle();
        assert_eq!(circle.classify(Complex64::new(0.0, 0.0), 1e-9), Location::Interior);
        let bern = lm(&[-1, 0, 1], 1.0);
        assert_eq!(bern.classify(Complex64::new(2f64.sqrt(), 0.0), 1e-9), Location::OnCurve);
        assert_eq!(bern.classify(Complex64::new(2.0, 0.0), 1e-9), Location::Exterior);
    }

    #[test]
    fn capacity_examples() {
        assert_eq!(Lemniscate::unit_circle().capacity(), 1.0);
        assert!((lm(&[-2, 0, 1], 0.5).capacity() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((lm(&[-1, 0, 2], 0.5).capacity() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn green_examples() {
        let circle = Lemniscate::unit_circle();
        assert!((circle.green(Complex64::new(std::f64::consts::E, 0.0)) - 1.0).abs() < 1e-15);
        assert_eq!(circle.green(Complex64::new(0.3, 0.2)), 0.0);
        let bern = lm(&[-1, 0, 1], 1.0);
        assert!((bern.green(Complex64::new(2.0, 0.0)) - 0.5 * 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn potential_examples() {
        assert_eq!(
            Lemniscate::unit_circle().equilibrium_potential(Complex64::new(0.0, 0.0)),
            0.0
        );
        let l = lm(&[-2, 0, 1], 0.5);
        assert!((l.equilibrium_potential(Complex64::new(0.0, 0.0)) - 0.5 * 2f64.ln()).abs() < 1e-15);
        // sqrt(2) is a root of V, inside a component.
        let inside = Complex64::new(2f64.sqrt(), 0.0);
        assert!((l.equilibrium_potential(inside) + 0.5 * 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn green_potential_relation_outside() {
        let l = lm(&[1, -3, 0, 2], 0.7);
        for z in [
            Complex64::new(3.0, 1.0),
            Complex64::new(-2.0, -2.5),
            Complex64::new(0.1, 4.0),
        ] {
            assert_eq!(l.classify(z, 1e-9), Location::Exterior);
            let lhs = l.equilibrium_potential(z) - l.capacity().ln();
            assert!((lhs - l.green(z)).abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Lemniscate::with_radius(IntPolynomial::from_i64(&[3]), 1.0).is_err());
        assert!(Lemniscate::with_radius(IntPolynomial::from_i64(&[0, 1]), 0.0).is_err());
        assert!(Lemniscate::with_radius(IntPolynomial::from_i64(&[0, 1]), -1.0).is_err());
    }

    #[test]
    fn level_points_lie_on_curve() {
        let l = lm(&[5, -1, 3, 1], 2.5);
        for k in 0..8 {
            let theta = k as f64 * 0.7;
            for z in l.level_points(theta, None).unwrap().roots {
                assert!(l.level_offset(z).abs() < 1e-12);
            }
        }
    }
}
