use num_complex::Complex64;
use rayon::prelude::*;

use super::Lemniscate;
use crate::error::{Error, Result};

/// Solutions of `V(z) = r e^{i theta_k}` on a uniform grid of `n` angles.
///
/// `points[k]` holds the `m` solutions over `theta[k]`. Branch order within
/// a node is whatever the warm-started solver produced and carries no meaning
/// for averaging.
#[derive(Debug, Clone)]
pub struct LevelGrid {
    pub theta: Vec<f64>,
    pub points: Vec<Vec<Complex64>>,
}

impl LevelGrid {
    /// Solves the level equation node by node, warm-starting from the
    /// previous node.
    pub fn new(lm: &Lemniscate, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("level grid needs at least one node".into()));
        }
        let step = 2.0 * std::f64::consts::PI / n as f64;
        let mut theta = Vec::with_capacity(n);
        let mut points: Vec<Vec<Complex64>> = Vec::with_capacity(n);
        for k in 0..n {
            let t = k as f64 * step;
            let warm = points.last().map(Vec::as_slice);
            let rs = lm.level_points(t, warm)?;
            theta.push(t);
            points.push(rs.roots);
        }
        Ok(LevelGrid { theta, points })
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    /// Periodic trapezoidal average of `f` against the equilibrium measure,
    /// with the halving estimate `|A(n) - A(n/2)|`.
    ///
    /// Node values are evaluated in parallel but summed in index order, so the
    /// result does not depend on the thread count.
    pub fn average<F>(&self, f: F) -> Average
    where
        F: Fn(Complex64) -> f64 + Sync,
    {
        let node_values: Vec<f64> = self
            .points
            .par_iter()
            .map(|pts| pts.iter().map(|&z| f(z)).sum::<f64>() / pts.len() as f64)
            .collect();
        let n = node_values.len();
        let full = node_values.iter().sum::<f64>() / n as f64;
        let half = if n >= 2 {
            node_values.iter().step_by(2).sum::<f64>() / n.div_ceil(2) as f64
        } else {
            full
        };
        Average {
            value: full,
            error: (full - half).abs(),
            nodes: n,
        }
    }
}

/// A quadrature value with its halving error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Average {
    pub value: f64,
    pub error: f64,
    pub nodes: usize,
}

/// `integral f dmu` over the equilibrium measure of `lm`, by the periodic
/// trapezoidal rule on `n_nodes` angles (a power of two, at least 16).
pub fn equilibrium_average<F>(lm: &Lemniscate, f: F, n_nodes: usize) -> Result<Average>
where
    F: Fn(Complex64) -> f64 + Sync,
{
    check_nodes(n_nodes)?;
    Ok(LevelGrid::new(lm, n_nodes)?.average(f))
}

pub(crate) fn check_nodes(n_nodes: usize) -> Result<()> {
    if n_nodes < 16 || !n_nodes.is_power_of_two() {
        return Err(Error::InvalidInput(format!(
            "n_nodes must be a power of two >= 16, got {n_nodes}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomials::IntPolynomial;

    fn lm(v: &[i64], r: f64) -> Lemniscate {
        Lemniscate::with_radius(IntPolynomial::from_i64(v), r).unwrap()
    }

    #[test]
    fn unit_measure() {
        for l in [lm(&[0, 1], 1.0), lm(&[-1, 0, 1], 0.5), lm(&[2, 1, 0, 3], 4.0)] {
            let a = equilibrium_average(&l, |_| 1.0, 64).unwrap();
            assert!((a.value - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn jensen_on_unit_circle() {
        let l = Lemniscate::unit_circle();
        let two = Complex64::new(2.0, 0.0);
        let a = equilibrium_average(&l, |z| (z - two).norm().ln(), 1024).unwrap();
        assert!((a.value - 2f64.ln()).abs() < 1e-12);
        assert!(a.error < 1e-12);
    }

    #[test]
    fn potential_at_origin() {
        let l = lm(&[-2, 0, 1], 0.5);
        let a = equilibrium_average(&l, |z| z.norm().ln(), 1024).unwrap();
        assert!((a.value - 0.5 * 2f64.ln()).abs() < 1e-10);
        assert!((a.value - l.equilibrium_potential(Complex64::new(0.0, 0.0))).abs() < 1e-10);
    }

    #[test]
    fn convergence_on_doubling() {
        let l = lm(&[-2, 0, 1], 0.5);
        let f = |z: Complex64| z.norm().ln();
        let a = equilibrium_average(&l, f, 1 << 10).unwrap();
        let b = equilibrium_average(&l, f, 1 << 11).unwrap();
        assert!((a.value - b.value).abs() < 1e-10);
    }

    #[test]
    fn node_count_validation() {
        let l = Lemniscate::unit_circle();
        assert!(equilibrium_average(&l, |_| 1.0, 8).is_err());
        assert!(equilibrium_average(&l, |_| 1.0, 48).is_err());
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let l = lm(&[1, -3, 0, 2], 0.9);
        let f = |z: Complex64| (z - Complex64::new(0.3, 2.0)).norm().ln();
        let grid = LevelGrid::new(&l, 512).unwrap();
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| grid.average(f));
        let b = four.install(|| grid.average(f));
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }
}
