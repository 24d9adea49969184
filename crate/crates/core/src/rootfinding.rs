//! Simultaneous complex root finding by the Aberth–Ehrlich iteration.
//!
//! Every returned root carries a post-hoc residual `|P(root)|` and an
//! inclusion radius. Roots whose inclusion disks nearly touch are merged into
//! a cluster that shares one enlarged radius.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::polynomials::{ComplexPolynomial, IntPolynomial};

const EPS: f64 = f64::EPSILON;

/// Iteration controls for [`roots_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    /// Stop once every relative correction falls below this value.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            tol: 1e-14,
            max_iter: 200,
        }
    }
}

/// Roots of a polynomial, listed with multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// Per-root inclusion radius.
    pub radii: Vec<f64>,
    /// `|P(root)|`, recomputed after the iteration.
    pub residuals: Vec<f64>,
    pub iterations: usize,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    fn empty() -> Self {
        RootSet {
            roots: Vec::new(),
            radii: Vec::new(),
            residuals: Vec::new(),
            iterations: 0,
        }
    }
}

/// All roots of `p` with the default iteration cap.
pub fn roots(p: &ComplexPolynomial, tol: f64) -> Result<RootSet> {
    roots_with(
        p,
        RootOptions {
            tol,
            ..RootOptions::default()
        },
        None,
    )
}

/// The `m` solutions of `V(z) = w`. A previous solution set may be passed to
/// warm-start the iteration; roots then keep the order of `warm`.
pub fn solve_level(v: &ComplexPolynomial, w: Complex64, warm: Option<&RootSet>) -> Result<RootSet> {
    solve_level_with(v, w, warm.map(|r| r.roots.as_slice()), RootOptions::default())
}

pub fn solve_level_with(
    v: &ComplexPolynomial,
    w: Complex64,
    warm: Option<&[Complex64]>,
    opts: RootOptions,
) -> Result<RootSet> {
    roots_with(&v.shifted(w), opts, warm)
}

/// Roots of an integer polynomial, computed per part of its exact square-free
/// decomposition so that the iteration only ever sees simple roots. Each
/// entry pairs a root set with its multiplicity in `p`.
pub fn square_free_roots(p: &IntPolynomial) -> Result<Vec<(RootSet, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (_, parts) = p.square_free();
    parts
        .into_iter()
        .map(|(part, mult)| {
            let mut rs = roots_with(&part.to_complex(), RootOptions::default(), None)?;
            polish_exact(&part, &mut rs);
            Ok((rs, mult))
        })
        .collect()
}

/// Roots whose inclusion radius exceeds this (relative) get the exact polish.
const EXACT_POLISH_THRESHOLD: f64 = 1e-13;

/// Newton refinement with residuals evaluated exactly in integer arithmetic,
/// for roots left poorly determined by floating-point evaluation (typically
/// members of tight clusters of a polynomial with large coefficients).
fn polish_exact(p: &IntPolynomial, rs: &mut RootSet) {
    let n = p.degree() as f64;
    let dp = p.derivative();
    let mut touched = false;
    for i in 0..rs.roots.len() {
        let mut z = rs.roots[i];
        if rs.radii[i] <= EXACT_POLISH_THRESHOLD * z.norm().max(1.0) {
            continue;
        }
        touched = true;
        let mut val = exact_eval(p, z);
        for _ in 0..8 {
            let der = exact_eval(&dp, z);
            if der.norm() == 0.0 || val.norm() == 0.0 {
                break;
            }
            let step = val / der;
            let cand = z - step;
            let cand_val = exact_eval(p, cand);
            if cand_val.norm() >= val.norm() {
                break;
            }
            z = cand;
            val = cand_val;
            if step.norm() <= 2.0 * EPS * z.norm() {
                break;
            }
        }
        let der = exact_eval(&dp, z).norm();
        rs.roots[i] = z;
        rs.residuals[i] = val.norm();
        rs.radii[i] = if der > 0.0 {
            n * val.norm() / der + 2.0 * EPS * z.norm()
        } else {
            rs.radii[i]
        };
    }
    if touched {
        merge_clusters(rs);
    }
}

/// `x * 2^k` without intermediate overflow.
fn ldexp(mut x: f64, mut k: i64) -> f64 {
    while k > 1000 {
        x *= 2f64.powi(1000);
        k -= 1000;
    }
    while k < -1000 {
        x *= 2f64.powi(-1000);
        k += 1000;
    }
    x * 2f64.powi(k as i32)
}

/// `v * 2^(-shift)` rounded to the nearest double (up to truncation of the
/// bits below the top 64).
fn scaled_to_f64(v: &BigInt, shift: i64) -> f64 {
    let bits = v.bits() as i64;
    if bits <= 64 {
        return ldexp(v.to_f64().unwrap_or(0.0), -shift);
    }
    let drop = bits - 64;
    let top = (v >> drop as usize).to_f64().unwrap_or(0.0);
    ldexp(top, drop - shift)
}

/// `p(z)` where `z` is taken as the exact dyadic complex number it stores;
/// the only rounding is the final conversion.
fn exact_eval(p: &IntPolynomial, z: Complex64) -> Complex64 {
    use num_traits::Float;
    let parts = [z.re, z.im].map(|x| {
        let (m, e, sign) = Float::integer_decode(x);
        (BigInt::from(m) * sign as i64, if m == 0 { i16::MAX } else { e })
    });
    let e = parts[0].1.min(parts[1].1);
    if e == i16::MAX {
        return Complex64::new(scaled_to_f64(&p.coeffs().first().cloned().unwrap_or_default(), 0), 0.0);
    }
    let align = |(v, ex): &(BigInt, i16)| {
        if v.is_zero() {
            BigInt::zero()
        } else {
            v << (ex - e) as usize
        }
    };
    let (mut x, mut y) = (align(&parts[0]), align(&parts[1]));
    let s: i64 = if e >= 0 {
        x <<= e as usize;
        y <<= e as usize;
        0
    } else {
        -(e as i64)
    };
    // Horner on Gaussian integers for p(z) * 2^(s n).
    let c = p.coeffs();
    let n = c.len() - 1;
    let (mut re, mut im) = (c[n].clone(), BigInt::zero());
    for k in (0..n).rev() {
        let nr = &re * &x - &im * &y;
        let ni = &re * &y + &im * &x;
        re = nr + (&c[k] << (s as usize * (n - k)));
        im = ni;
    }
    let shift = s * n as i64;
    Complex64::new(scaled_to_f64(&re, shift), scaled_to_f64(&im, shift))
}

/// Aberth–Ehrlich iteration from `init` (or a circle scaled to the geometric
/// mean of the root moduli), followed by a residual-guarded Newton polish.
pub fn roots_with(p: &ComplexPolynomial, opts: RootOptions, init: Option<&[Complex64]>) -> Result<RootSet> {
    let n = p.degree();
    if p.is_zero() || n == 0 {
        return Err(Error::Degenerate(
            "root finding needs a polynomial of degree at least 1".into(),
        ));
    }
    let coeffs = p.coeffs();
    // Exact zero roots are split off so that they keep a zero radius.
    let zeros = coeffs.iter().take_while(|c| c.norm() == 0.0).count();
    let reduced = ComplexPolynomial::new(coeffs[zeros..].to_vec());
    let mut out = if reduced.degree() == 0 {
        RootSet::empty()
    } else {
        let init = init.filter(|s| s.len() == n).map(|s| {
            // Drop the warm entries nearest the origin when zeros were split off.
            let mut idx: Vec<usize> = (0..n).collect();
            idx.sort_by(|&a, &b| s[b].norm().total_cmp(&s[a].norm()));
            let mut keep: Vec<usize> = idx[..n - zeros].to_vec();
            keep.sort_unstable();
            keep.into_iter().map(|i| s[i]).collect::<Vec<_>>()
        });
        aberth(&reduced, opts, init)?
    };
    for _ in 0..zeros {
        out.roots.push(Complex64::new(0.0, 0.0));
        out.radii.push(0.0);
        out.residuals.push(0.0);
    }
    if zeros > 0 {
        finish(p, &mut out);
    }
    Ok(out)
}

fn initial_guesses(p: &ComplexPolynomial) -> Vec<Complex64> {
    let n = p.degree();
    let c = p.coeffs();
    let lead = p.leading();
    let center = -c[n - 1] / (lead * n as f64);
    let shifted_mag = (p.eval(center) / lead).norm().powf(1.0 / n as f64);
    let radius = if shifted_mag.is_finite() && shifted_mag > 0.0 {
        shifted_mag
    } else {
        (c[0] / lead).norm().powf(1.0 / n as f64).max(1.0)
    };
    (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            center + Complex64::from_polar(radius, angle)
        })
        .collect()
}

fn aberth(p: &ComplexPolynomial, opts: RootOptions, init: Option<Vec<Complex64>>) -> Result<RootSet> {
    let n = p.degree();
    if n == 1 {
        let c = p.coeffs();
        let mut out = RootSet {
            roots: vec![-c[0] / c[1]],
            radii: vec![0.0],
            residuals: vec![0.0],
            iterations: 0,
        };
        finish(p, &mut out);
        return Ok(out);
    }
    let mut z = init.unwrap_or_else(|| initial_guesses(p));
    // Coincident starting points would make the Aberth correction singular.
    for i in 0..n {
        for j in 0..i {
            if z[i] == z[j] {
                let bump = EPS.sqrt() * (1.0 + z[i].norm()) * (1.0 + i as f64);
                z[i] += Complex64::new(bump, bump * 0.5);
            }
        }
    }
    let mut done = vec![false; n];
    let mut iterations = 0;
    let mut max_correction = f64::INFINITY;
    while iterations < opts.max_iter {
        iterations += 1;
        max_correction = 0.0f64;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (val, der) = p.eval_with_derivative(z[i]);
            let noise = 8.0 * (n as f64 + 1.0) * EPS * p.eval_abs(z[i]);
            if val.norm() <= noise {
                done[i] = true;
                continue;
            }
            let ratio = val / der;
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let mut step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                step = if ratio.re.is_finite() && ratio.im.is_finite() {
                    ratio
                } else {
                    Complex64::new(EPS.sqrt() * (1.0 + z[i].norm()), 0.0)
                };
            }
            z[i] -= step;
            let rel = step.norm() / z[i].norm().max(f64::MIN_POSITIVE);
            max_correction = max_correction.max(rel);
            if rel < opts.tol {
                done[i] = true;
            }
        }
        if done.iter().all(|&d| d) {
            break;
        }
    }
    if !done.iter().all(|&d| d) {
        return Err(Error::NonConvergence {
            iterations,
            max_correction,
        });
    }
    polish(p, &mut z);
    let mut out = RootSet {
        roots: z,
        radii: vec![0.0; n],
        residuals: vec![0.0; n],
        iterations,
    };
    finish(p, &mut out);
    Ok(out)
}

/// Newton steps that are only kept when they reduce the residual.
fn polish(p: &ComplexPolynomial, z: &mut [Complex64]) {
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (val, der) = p.eval_with_derivative(*zi);
            if val.norm() == 0.0 || der.norm() == 0.0 {
                break;
            }
            let cand = *zi - val / der;
            if p.eval(cand).norm() < val.norm() {
                *zi = cand;
            } else {
                break;
            }
        }
    }
}

/// Recomputes residuals, derives inclusion radii and merges clusters.
fn finish(p: &ComplexPolynomial, out: &mut RootSet) {
    let n = p.degree() as f64;
    let lead = p.leading().norm();
    let count = out.roots.len();
    for i in 0..count {
        let z = out.roots[i];
        let (val, der) = p.eval_with_derivative(z);
        out.residuals[i] = val.norm();
        if z.norm() == 0.0 && p.coeffs()[0].norm() == 0.0 {
            out.radii[i] = 0.0;
            continue;
        }
        let floor = EPS * p.eval_abs(z);
        let res = val.norm().max(floor);
        let newton = if der.norm() > 0.0 {
            n * res / der.norm()
        } else {
            f64::INFINITY
        };
        let modulus = (res / lead).powf(1.0 / n);
        let r = newton.min(modulus);
        out.radii[i] = if r.is_finite() { r } else { modulus };
    }
    merge_clusters(out);
}

fn merge_clusters(out: &mut RootSet) {
    let count = out.roots.len();
    let mut parent: Vec<usize> = (0..count).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..count {
        for j in 0..i {
            let reach = 10.0 * (out.radii[i] + out.radii[j]);
            if (out.roots[i] - out.roots[j]).norm() <= reach {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..count {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    for members in groups.values().filter(|m| m.len() > 1) {
        let centroid: Complex64 = members.iter().map(|&i| out.roots[i]).sum::<Complex64>() / members.len() as f64;
        let shared = members
            .iter()
            .map(|&i| (out.roots[i] - centroid).norm() + out.radii[i])
            .fold(0.0, f64::max);
        for &i in members {
            out.radii[i] = out.radii[i].max(shared);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomials::IntPolynomial;

    fn sorted_real(rs: &RootSet) -> Vec<f64> {
        let mut v: Vec<f64> = rs.roots.iter().map(|z| z.re).collect();
        v.sort_by(f64::total_cmp);
        v
    }

    #[test]
    fn quadratic_roots() {
        let p = ComplexPolynomial::from_real(&[-1.0, 0.0, 1.0]);
        let rs = roots(&p, 1e-14).unwrap();
        assert_eq!(rs.len(), 2);
        let v = sorted_real(&rs);
        assert!((v[0] + 1.0).abs() < 1e-14 && (v[1] - 1.0).abs() < 1e-14);
        assert!(rs.residuals.iter().all(|&r| r < 1e-14));
    }

    #[test]
    fn wilkinson_five() {
        let p: IntPolynomial = (1..=5).map(|k| IntPolynomial::from_i64(&[-k, 1])).product();
        let rs = roots(&p.to_complex(), 1e-14).unwrap();
        let v = sorted_real(&rs);
        for (k, r) in v.iter().enumerate() {
            assert!((r - (k + 1) as f64).abs() < 1e-10);
        }
        for z in &rs.roots {
            assert!(z.im.abs() < 1e-10);
        }
    }

    #[test]
    fn sqrt_two_against_bisection() {
        let f = |x: f64| x * x - 2.0;
        let (mut lo, mut hi) = (1.0f64, 2.0f64);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let rs = roots(&ComplexPolynomial::from_real(&[-2.0, 0.0, 1.0]), 1e-14).unwrap();
        let v = sorted_real(&rs);
        assert!((v[1] - lo).abs() < 1e-12);
        assert!((v[0] + lo).abs() < 1e-12);
    }

    #[test]
    fn level_solutions() {
        let id = ComplexPolynomial::from_real(&[0.0, 1.0]);
        let rs = solve_level(&id, Complex64::new(0.0, 1.0), None).unwrap();
        assert!((rs.roots[0] - Complex64::new(0.0, 1.0)).norm() < 1e-15);

        let v = ComplexPolynomial::from_real(&[-1.0, 0.0, 1.0]);
        let rs = solve_level(&v, Complex64::new(1.0, 0.0), None).unwrap();
        let s = sorted_real(&rs);
        assert!((s[0] + 2f64.sqrt()).abs() < 1e-14 && (s[1] - 2f64.sqrt()).abs() < 1e-14);

        // Double root at the origin: both roots within the cluster radius of 0.
        let rs = solve_level(&v, Complex64::new(-1.0, 0.0), None).unwrap();
        for (z, r) in rs.roots.iter().zip(&rs.radii) {
            assert!(z.norm() <= r.max(1e-300) * 1.0001 || z.norm() == 0.0);
        }
    }

    #[test]
    fn exact_zero_roots_have_zero_radius() {
        let p = ComplexPolynomial::from_real(&[0.0, 0.0, -2.0, 1.0]);
        let rs = roots(&p, 1e-14).unwrap();
        assert_eq!(rs.roots.iter().filter(|z| z.norm() == 0.0).count(), 2);
        assert!(rs.radii.iter().all(|r| r.is_finite() && *r >= 0.0));
    }

    #[test]
    fn multiple_roots_converge() {
        // (z^2 - 2)^3
        let p = IntPolynomial::from_i64(&[-2, 0, 1]).pow(3).to_complex();
        let rs = roots(&p, 1e-14).unwrap();
        for z in &rs.roots {
            assert!(((z * z) - 2.0).norm() < 1e-4);
        }
    }

    #[test]
    fn degenerate_input() {
        assert!(roots(&ComplexPolynomial::from_real(&[3.0]), 1e-14).is_err());
    }
}
