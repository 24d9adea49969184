//! Heights of integer polynomials over a lemniscate.
//!
//! For `P(z) = c_n prod (z - z_k)` and `L = {|V| = r}` with `V` of degree `m`
//! and leading coefficient `a_m`, the generalized Mahler measure has the
//! closed form
//!
//! ```text
//! M_L(P) = |c_n| |a_m|^(-n/m) (prod max(r, |V(z_k)|))^(1/m)
//! ```
//!
//! which is the authoritative value here. Quadrature against the equilibrium
//! measure is kept as an independent verification channel, and it is the only
//! route to the `L_p` norms. The sup norm is taken over a traced grid and
//! refined by golden-section search in the angle.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exact::resultant;
use crate::lemniscate::{Average, Lemniscate, LevelGrid};
use crate::numeric::{fmt_real, ln_abs};
use crate::polynomials::IntPolynomial;
use crate::rootfinding::{square_free_roots, RootSet};

/// Relative slack used when comparing heights that should be ordered.
pub const ORDER_SLACK: f64 = 1e-9;

/// A quadrature-derived value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

fn check_nonzero(p: &IntPolynomial) -> Result<()> {
    if p.is_zero() {
        Err(Error::ZeroPolynomial)
    } else {
        Ok(())
    }
}

/// `log M_L(P)` from the roots of `P`.
pub fn log_mahler_closed(p: &IntPolynomial, lm: &Lemniscate) -> Result<f64> {
    check_nonzero(p)?;
    if p.degree() == 0 {
        return Ok(ln_abs(&p.leading()));
    }
    Ok(log_mahler_from_roots(
        &p.leading(),
        p.degree(),
        &square_free_roots(p)?,
        lm,
    ))
}

/// `log M_L(P)` from the leading coefficient, degree and square-free root
/// sets of `P`. Scans use this to share one root computation across several
/// lemniscates.
pub fn log_mahler_from_roots(leading: &BigInt, degree: usize, roots: &[(RootSet, u32)], lm: &Lemniscate) -> f64 {
    let m = lm.degree() as f64;
    let r = lm.r();
    let mut sum = 0.0;
    for (rs, mult) in roots {
        let part: f64 = rs.roots.iter().map(|&z| lm.v().eval(z).norm().max(r).ln()).sum();
        sum += *mult as f64 * part;
    }
    ln_abs(leading) - (degree as f64 / m) * lm.leading_abs().ln() + sum / m
}

/// Generalized Mahler measure by the closed form.
///
/// The product is formed directly when it stays in range, which keeps simple
/// values such as `sqrt(2)` correctly rounded; otherwise it goes through logs.
pub fn mahler_closed(p: &IntPolynomial, lm: &Lemniscate) -> Result<f64> {
    check_nonzero(p)?;
    let (lead, exact) = IntPolynomial::coeff_to_f64(&p.leading());
    if p.degree() == 0 && exact {
        return Ok(lead.abs());
    }
    let m = lm.degree() as f64;
    let r = lm.r();
    let mut prod = 1.0f64;
    for (rs, mult) in square_free_roots(p)? {
        for &z in &rs.roots {
            prod *= lm.v().eval(z).norm().max(r).powi(mult as i32);
        }
    }
    let direct = lead.abs() * lm.leading_abs().powf(-(p.degree() as f64) / m) * prod.powf(1.0 / m);
    if exact && direct.is_finite() && direct > 0.0 && prod.is_finite() && prod > 0.0 {
        Ok(direct)
    } else {
        Ok(log_mahler_closed(p, lm)?.exp())
    }
}

/// Classical Mahler measure `|c_n| prod max(1, |z_k|)`.
pub fn mahler_classical(p: &IntPolynomial) -> Result<f64> {
    mahler_closed(p, &Lemniscate::unit_circle())
}

/// Roots of `P` closer to `L` than the singularity margin
/// `delta = 1e-4 * cap(L)`, measured as `| |V(z)| - r | < delta * r`.
fn singular_root(p: &IntPolynomial, lm: &Lemniscate) -> Result<Option<Complex64>> {
    if p.degree() == 0 {
        return Ok(None);
    }
    let delta = 1e-4 * lm.capacity();
    for (rs, _) in square_free_roots(p)? {
        if let Some(z) = rs.roots.iter().find(|&&z| lm.level_offset(z).abs() < delta) {
            return Ok(Some(*z));
        }
    }
    Ok(None)
}

/// `exp(integral log|P| dmu)` by quadrature on a precomputed grid.
pub fn mahler_quadrature_on(p: &IntPolynomial, lm: &Lemniscate, grid: &LevelGrid) -> Result<Estimate> {
    check_nonzero(p)?;
    if let Some(z) = singular_root(p, lm)? {
        return Err(Error::SingularIntegrand {
            root: format!("{z}"),
            margin: 1e-4 * lm.capacity(),
        });
    }
    let pc = p.to_complex();
    let avg = grid.average(|z| pc.eval(z).norm().ln());
    let value = avg.value.exp();
    Ok(Estimate {
        value,
        error: value * avg.error.exp_m1(),
    })
}

/// `exp(integral log|P| dmu)` by periodic trapezoidal quadrature.
pub fn mahler_quadrature(p: &IntPolynomial, lm: &Lemniscate, n_nodes: usize) -> Result<Estimate> {
    crate::lemniscate::check_nodes(n_nodes)?;
    check_nonzero(p)?;
    if let Some(z) = singular_root(p, lm)? {
        return Err(Error::SingularIntegrand {
            root: format!("{z}"),
            margin: 1e-4 * lm.capacity(),
        });
    }
    mahler_quadrature_on(p, lm, &LevelGrid::new(lm, n_nodes)?)
}

fn lp_from_average(avg: Average, exponent: f64) -> Estimate {
    let value = avg.value.powf(1.0 / exponent);
    let error = if avg.value > 0.0 {
        value * avg.error / (exponent * avg.value)
    } else {
        avg.error.powf(1.0 / exponent)
    };
    Estimate { value, error }
}

/// `(integral |P|^p dmu)^(1/p)` on a precomputed grid.
pub fn lp_norm_on(p: &IntPolynomial, grid: &LevelGrid, exponent: f64) -> Result<Estimate> {
    check_nonzero(p)?;
    if !(exponent > 0.0 && exponent.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "L_p exponent must be in (0, inf), got {exponent}"
        )));
    }
    let pc = p.to_complex();
    let avg = grid.average(|z| pc.eval(z).norm().powf(exponent));
    Ok(lp_from_average(avg, exponent))
}

/// `L_p(mu)` norm of `P` for `0 < p < inf`.
pub fn lp_norm(p: &IntPolynomial, lm: &Lemniscate, exponent: f64, n_nodes: usize) -> Result<Estimate> {
    crate::lemniscate::check_nodes(n_nodes)?;
    check_nonzero(p)?;
    lp_norm_on(p, &LevelGrid::new(lm, n_nodes)?, exponent)
}

/// Maximum of `|P|` over the lemniscate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupNorm {
    pub value: f64,
    /// Angle of `V(z) = r e^{i theta}` where the maximum was found.
    pub theta: f64,
    pub point: Complex64,
    /// Grid spacing in `theta` before refinement.
    pub grid_step: f64,
}

fn envelope(pc: &crate::polynomials::ComplexPolynomial, pts: &[Complex64]) -> (f64, Complex64) {
    pts.iter()
        .map(|&z| (pc.eval(z).norm(), z))
        .fold(
            (f64::NEG_INFINITY, Complex64::default()),
            |a, b| if b.0 > a.0 { b } else { a },
        )
}

/// Sup norm over a precomputed grid, refined by golden-section search around
/// the best grid nodes.
pub fn sup_norm_on(p: &IntPolynomial, lm: &Lemniscate, grid: &LevelGrid) -> Result<SupNorm> {
    check_nonzero(p)?;
    let pc = p.to_complex();
    let n = grid.len();
    let step = 2.0 * std::f64::consts::PI / n as f64;
    let values: Vec<(f64, Complex64)> = grid.points.iter().map(|pts| envelope(&pc, pts)).collect();

    let mut best = SupNorm {
        value: f64::NEG_INFINITY,
        theta: 0.0,
        point: Complex64::default(),
        grid_step: step,
    };
    for (k, &(v, z)) in values.iter().enumerate() {
        if v > best.value {
            best = SupNorm {
                value: v,
                theta: grid.theta[k],
                point: z,
                grid_step: step,
            };
        }
    }
    if p.degree() == 0 {
        return Ok(best);
    }
    // Refine around the strongest local maxima of the node sequence.
    let mut peaks: Vec<usize> = (0..n)
        .filter(|&k| {
            let prev = values[(k + n - 1) % n].0;
            let next = values[(k + 1) % n].0;
            values[k].0 >= prev && values[k].0 >= next
        })
        .collect();
    peaks.sort_by(|&a, &b| values[b].0.total_cmp(&values[a].0).then(a.cmp(&b)));
    peaks.truncate(4);
    for k in peaks {
        let warm = grid.points[k].clone();
        let eval = |t: f64| -> Result<(f64, Complex64)> {
            let rs = lm.level_points(t, Some(&warm))?;
            Ok(envelope(&pc, &rs.roots))
        };
        let (mut a, mut b) = (grid.theta[k] - step, grid.theta[k] + step);
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let mut c = b - g * (b - a);
        let mut d = a + g * (b - a);
        let mut fc = eval(c)?;
        let mut fd = eval(d)?;
        for _ in 0..50 {
            if fc.0 >= fd.0 {
                b = d;
                d = c;
                fd = fc;
                c = b - g * (b - a);
                fc = eval(c)?;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + g * (b - a);
                fd = eval(d)?;
            }
        }
        for (t, (v, z)) in [(c, fc), (d, fd)] {
            if v > best.value {
                best = SupNorm {
                    value: v,
                    theta: t.rem_euclid(2.0 * std::f64::consts::PI),
                    point: z,
                    grid_step: step,
                };
            }
        }
    }
    Ok(best)
}

/// `max |P|` over `L`, from a grid of `n_theta` angles plus refinement. The
/// value is a certified lower bound; the grid step is reported with it.
pub fn sup_norm(p: &IntPolynomial, lm: &Lemniscate, n_theta: usize) -> Result<SupNorm> {
    check_nonzero(p)?;
    if n_theta < 16 {
        return Err(Error::InvalidInput(format!("n_theta must be >= 16, got {n_theta}")));
    }
    sup_norm_on(p, lm, &LevelGrid::new(lm, n_theta)?)
}

/// Comparison of `M_L(P)` with `|a_m|^(-n/m) |Res(P, V)|^(1/m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultantBound {
    pub resultant: BigInt,
    pub bound: f64,
    pub mahler_closed: f64,
    /// `bound <= M_L(P)` up to relative `1e-9`.
    pub holds: bool,
    /// All roots of `P` lie on or outside `L`, where the bound is an equality.
    pub equality_case: bool,
    /// `|bound - M_L(P)|` relative to `max(1, M_L(P))`.
    pub relative_gap: f64,
}

pub fn resultant_bound(p: &IntPolynomial, lm: &Lemniscate) -> Result<ResultantBound> {
    check_nonzero(p)?;
    let v = lm.require_int("resultant bound")?;
    let res = resultant(p, v)?;
    let m = lm.degree() as f64;
    let n = p.degree() as f64;
    let bound = if res.is_zero() {
        0.0
    } else {
        ((ln_abs(&res) - n * lm.leading_abs().ln()) / m).exp()
    };
    let mahler = mahler_closed(p, lm)?;
    let scale = mahler.max(1.0);
    let mut equality_case = true;
    for (rs, _) in square_free_roots(p)? {
        if rs.roots.iter().any(|&z| lm.level_offset(z) < -ORDER_SLACK) {
            equality_case = false;
        }
    }
    Ok(ResultantBound {
        resultant: res,
        bound,
        mahler_closed: mahler,
        holds: bound <= mahler + ORDER_SLACK * scale,
        equality_case,
        relative_gap: (bound - mahler).abs() / scale,
    })
}

/// One member of the height family `0 <= p <= inf`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum PValue {
    /// `p = 0`: the generalized Mahler measure.
    Zero,
    Finite(f64),
    Infinity,
}

impl PValue {
    pub fn from_f64(p: f64) -> Result<Self> {
        if p == 0.0 {
            Ok(PValue::Zero)
        } else if p == f64::INFINITY {
            Ok(PValue::Infinity)
        } else if p > 0.0 && p.is_finite() {
            Ok(PValue::Finite(p))
        } else {
            Err(Error::InvalidInput(format!(
                "height exponent must be in [0, inf], got {p}"
            )))
        }
    }

    pub fn label(&self) -> String {
        match self {
            PValue::Zero => "0".into(),
            PValue::Finite(p) => format!("{p}"),
            PValue::Infinity => "inf".into(),
        }
    }

    fn order_key(&self) -> f64 {
        match self {
            PValue::Zero => 0.0,
            PValue::Finite(p) => *p,
            PValue::Infinity => f64::INFINITY,
        }
    }
}

impl std::str::FromStr for PValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "Inf" | "oo" => Ok(PValue::Infinity),
            t => PValue::from_f64(
                t.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad exponent {t:?}")))?,
            ),
        }
    }
}

/// Quadrature and grid resolution for multi-height evaluations.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightOptions {
    pub n_nodes: usize,
    pub n_theta: usize,
}

impl Default for HeightOptions {
    fn default() -> Self {
        HeightOptions {
            n_nodes: 1 << 12,
            n_theta: 1 << 12,
        }
    }
}

/// Outcome of checking `M_L(P) <= ||P||_p <= ||P||_inf` and monotonicity in `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubordinationReport {
    pub mahler: f64,
    pub lp: Vec<(f64, Estimate)>,
    pub sup: f64,
    pub chain_holds: bool,
    pub monotone: bool,
    /// Human-readable description of each failed comparison.
    pub failures: Vec<String>,
}

impl SubordinationReport {
    pub fn holds(&self) -> bool {
        self.chain_holds && self.monotone
    }

    pub fn to_json(&self) -> Value {
        let mut lp = Map::new();
        let mut err = Map::new();
        for (e, est) in &self.lp {
            lp.insert(format!("{e}"), Value::String(fmt_real(est.value)));
            err.insert(format!("{e}"), Value::String(fmt_real(est.error)));
        }
        json!({
            "mahler": fmt_real(self.mahler),
            "lp": lp,
            "sup": fmt_real(self.sup),
            "errors": {"lp": err},
            "chain_holds": self.chain_holds,
            "monotone": self.monotone,
            "failures": self.failures,
        })
    }
}

pub fn subordination_check(
    p: &IntPolynomial,
    lm: &Lemniscate,
    p_grid: &[f64],
    opts: &HeightOptions,
) -> Result<SubordinationReport> {
    check_nonzero(p)?;
    crate::lemniscate::check_nodes(opts.n_nodes)?;
    let grid = LevelGrid::new(lm, opts.n_nodes)?;
    let sup_grid = if opts.n_theta == opts.n_nodes {
        grid.clone()
    } else {
        LevelGrid::new(lm, opts.n_theta)?
    };
    subordination_check_on(p, lm, p_grid, &grid, &sup_grid)
}

/// [`subordination_check`] on precomputed quadrature and sup-norm grids.
pub fn subordination_check_on(
    p: &IntPolynomial,
    lm: &Lemniscate,
    p_grid: &[f64],
    grid: &LevelGrid,
    sup_grid: &LevelGrid,
) -> Result<SubordinationReport> {
    check_nonzero(p)?;
    let mut exps: Vec<f64> = p_grid.to_vec();
    if exps.iter().any(|&e| !(e > 0.0 && e.is_finite())) {
        return Err(Error::InvalidInput(
            "subordination grid needs finite positive exponents".into(),
        ));
    }
    exps.sort_by(f64::total_cmp);
    let mahler = mahler_closed(p, lm)?;
    let sup = sup_norm_on(p, lm, sup_grid)?.value;
    let lp = exps
        .iter()
        .map(|&e| Ok((e, lp_norm_on(p, grid, e)?)))
        .collect::<Result<Vec<_>>>()?;

    let mut failures = Vec::new();
    let slack = |x: f64| ORDER_SLACK * x.abs().max(1.0);
    for (e, est) in &lp {
        if mahler > est.value + est.error + slack(est.value) {
            failures.push(format!("M_L = {mahler} > ||P||_{e} = {}", est.value));
        }
        if est.value > sup + est.error + slack(sup) {
            failures.push(format!("||P||_{e} = {} > ||P||_inf = {sup}", est.value));
        }
    }
    let chain_holds = failures.is_empty() && mahler <= sup + slack(sup);
    if mahler > sup + slack(sup) {
        failures.push(format!("M_L = {mahler} > ||P||_inf = {sup}"));
    }
    let mut monotone = true;
    for w in lp.windows(2) {
        let (a, b) = (&w[0].1, &w[1].1);
        if a.value > b.value + a.error + b.error + slack(b.value) {
            monotone = false;
            failures.push(format!("||P||_{} > ||P||_{}", w[0].0, w[1].0));
        }
    }
    Ok(SubordinationReport {
        mahler,
        lp,
        sup,
        chain_holds,
        monotone,
        failures,
    })
}

/// All heights of one polynomial over one lemniscate.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightReport {
    pub polynomial: IntPolynomial,
    pub lemniscate: Lemniscate,
    pub mahler_closed: f64,
    pub mahler_quadrature: Option<Estimate>,
    /// Heights keyed by exponent, in ascending order of `p`. `p = 0` holds
    /// the closed-form Mahler measure and `p = inf` the sup norm.
    pub lp_values: Vec<(PValue, f64)>,
    pub lp_errors: Vec<(PValue, f64)>,
    pub sup: SupNorm,
    pub resultant_bound: Option<f64>,
    pub method_notes: Vec<String>,
}

impl HeightReport {
    pub fn compute(p: &IntPolynomial, lm: &Lemniscate, exponents: &[PValue], opts: &HeightOptions) -> Result<Self> {
        check_nonzero(p)?;
        crate::lemniscate::check_nodes(opts.n_nodes)?;
        let mut notes = vec!["mahler: closed form from roots of P".to_string()];
        let mahler = mahler_closed(p, lm)?;
        let grid = LevelGrid::new(lm, opts.n_nodes)?;
        let mahler_quadrature = match mahler_quadrature_on(p, lm, &grid) {
            Ok(e) => {
                notes.push(format!("mahler_quadrature: trapezoidal, {} nodes", opts.n_nodes));
                Some(e)
            }
            Err(Error::SingularIntegrand { .. }) => {
                notes.push("mahler_quadrature: skipped, root of P on or near L".into());
                None
            }
            Err(e) => return Err(e),
        };
        let sup_grid = if opts.n_theta == opts.n_nodes {
            grid.clone()
        } else {
            LevelGrid::new(lm, opts.n_theta)?
        };
        let sup = sup_norm_on(p, lm, &sup_grid)?;
        notes.push(format!(
            "sup: lower bound from {} nodes refined by golden-section search (grid step {:.3e})",
            sup_grid.len(),
            sup.grid_step
        ));

        let mut exps = exponents.to_vec();
        exps.sort_by(|a, b| a.order_key().total_cmp(&b.order_key()));
        exps.dedup();
        let mut lp_values = Vec::new();
        let mut lp_errors = Vec::new();
        for e in exps {
            match e {
                PValue::Zero => lp_values.push((e, mahler)),
                PValue::Infinity => lp_values.push((e, sup.value)),
                PValue::Finite(x) => {
                    let est = lp_norm_on(p, &grid, x)?;
                    lp_values.push((e, est.value));
                    lp_errors.push((e, est.error));
                }
            }
        }
        if !lp_errors.is_empty() {
            notes.push(format!("lp: trapezoidal, {} nodes", opts.n_nodes));
        }
        let resultant_bound = match lm.v_int() {
            Some(_) => Some(resultant_bound(p, lm)?.bound),
            None => {
                notes.push("resultant bound: unavailable for complex V".into());
                None
            }
        };
        Ok(HeightReport {
            polynomial: p.clone(),
            lemniscate: lm.clone(),
            mahler_closed: mahler,
            mahler_quadrature,
            lp_values,
            lp_errors,
            sup,
            resultant_bound,
            method_notes: notes,
        })
    }

    pub fn to_json(&self) -> Value {
        let mut lp = Map::new();
        for (p, v) in &self.lp_values {
            lp.insert(p.label(), Value::String(fmt_real(*v)));
        }
        let mut lp_err = Map::new();
        for (p, v) in &self.lp_errors {
            lp_err.insert(p.label(), Value::String(fmt_real(*v)));
        }
        json!({
            "polynomial": self.polynomial.to_string(),
            "lemniscate": lemniscate_json(&self.lemniscate),
            "heights": {
                "mahler": fmt_real(self.mahler_closed),
                "mahler_quadrature": self.mahler_quadrature.map(|e| fmt_real(e.value)),
                "lp": lp,
                "sup": fmt_real(self.sup.value),
            },
            "bounds": {
                "resultant": self.resultant_bound.map(fmt_real),
            },
            "errors": {
                "quadrature": {
                    "mahler": self.mahler_quadrature.map(|e| fmt_real(e.error)),
                    "lp": lp_err,
                },
                "sup_grid_step": fmt_real(self.sup.grid_step),
            },
            "notes": self.method_notes,
        })
    }
}

/// `{V, r}` with `V` in sparse form and `r` as a decimal string.
pub fn lemniscate_json(lm: &Lemniscate) -> Value {
    let v = match lm.v_int() {
        Some(v) => v.to_string(),
        None => format!("{:?}", lm.v().coeffs()),
    };
    json!({ "V": v, "r": fmt_real(lm.r()) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn lm(v: &[i64], r: f64) -> Lemniscate {
        Lemniscate::with_radius(p(v), r).unwrap()
    }

    fn lehmer() -> IntPolynomial {
        p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
    }

    #[test]
    fn mahler_closed_examples() {
        let l = lm(&[-2, 0, 1], 0.5);
        for k in 1..=3u32 {
            let v = p(&[-2, 0, 1]).pow(k);
            assert!((mahler_closed(&v, &l).unwrap() - 0.5f64.powi(k as i32)).abs() < 1e-13);
        }
        let m = mahler_closed(&lehmer(), &Lemniscate::unit_circle()).unwrap();
        assert!((m - 1.176280818).abs() < 1e-9);
        assert!((mahler_closed(&p(&[0, 1]), &l).unwrap() - 2f64.sqrt()).abs() < 1e-14);
        assert_eq!(mahler_closed(&p(&[-7]), &l).unwrap(), 7.0);
        assert_eq!(mahler_closed(&IntPolynomial::zero(), &l), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn mahler_quadrature_examples() {
        let l = lm(&[1, 5, -1, 2], 1.3);
        let one = mahler_quadrature(&p(&[1]), &l, 64).unwrap();
        assert!((one.value - 1.0).abs() < 1e-15);
        let c = mahler_quadrature(&p(&[-2, 1]), &Lemniscate::unit_circle(), 1 << 10).unwrap();
        assert!((c.value - 2.0).abs() < 1e-10);
        let l = lm(&[-2, 0, 1], 0.5);
        let q = mahler_quadrature(&p(&[0, 1]), &l, 1 << 10).unwrap();
        assert!((q.value - 2f64.sqrt()).abs() < 1e-8);
    }

    #[test]
    fn singular_integrand_refused() {
        let l = lm(&[-1, 0, 1], 1.0);
        // z^2 - 2 has its roots on the Bernoulli lemniscate.
        let err = mahler_quadrature(&p(&[-2, 0, 1]), &l, 256).unwrap_err();
        assert!(matches!(err, Error::SingularIntegrand { .. }));
        // The closed form still works there.
        assert!((mahler_closed(&p(&[-2, 0, 1]), &l).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lp_examples() {
        let circle = Lemniscate::unit_circle();
        for e in [0.5, 1.0, 3.0] {
            let v = lp_norm(&p(&[0, 0, 0, 1]), &circle, e, 64).unwrap();
            assert!((v.value - 1.0).abs() < 1e-14);
        }
        let v = lp_norm(&p(&[1, 1]), &circle, 2.0, 256).unwrap();
        assert!((v.value - 2f64.sqrt()).abs() < 1e-13);
        let l = lm(&[3, -1, 2], 0.8);
        let v = lp_norm(&p(&[3, -1, 2]), &l, 4.0, 64).unwrap();
        assert!((v.value - 0.8).abs() < 1e-13);
        assert!(lp_norm(&p(&[1]), &l, 0.0, 64).is_err());
    }

    #[test]
    fn sup_examples() {
        let circle = Lemniscate::unit_circle();
        let s = sup_norm(&p(&[1, 1]), &circle, 64).unwrap();
        assert!((s.value - 2.0).abs() < 1e-12);
        let l = lm(&[-1, 0, 1], 1.0);
        let s = sup_norm(&p(&[0, 1]), &l, 1 << 10).unwrap();
        assert!((s.value - 2f64.sqrt()).abs() < 1e-12);
        let l = lm(&[-2, 0, 1], 0.5);
        let s = sup_norm(&p(&[-2, 0, 1]).pow(2), &l, 64).unwrap();
        assert!((s.value - 0.25).abs() < 1e-14);
    }

    #[test]
    fn sup_refinement_beats_grid() {
        // The maximum of |2z^2 + 3z - 5| on the circle sits between nodes.
        let l = Lemniscate::unit_circle();
        let q = p(&[-5, 3, 2]);
        let coarse = sup_norm(&q, &l, 16).unwrap();
        let dense = sup_norm(&q, &l, 1 << 14).unwrap();
        assert!((coarse.value - dense.value).abs() < 1e-9);
    }

    #[test]
    fn resultant_bound_examples() {
        let l = lm(&[-2, 0, 1], 0.5);
        let b = resultant_bound(&p(&[-2, 0, 1]), &l).unwrap();
        assert_eq!(b.bound, 0.0);
        assert!(b.holds);
        let b = resultant_bound(&p(&[-2, 1]), &Lemniscate::unit_circle()).unwrap();
        assert!((b.bound - 2.0).abs() < 1e-14 && b.equality_case && b.relative_gap < 1e-12);
        let b = resultant_bound(&p(&[-2, 1]), &lm(&[-1, 0, 1], 1.0)).unwrap();
        assert!((b.bound - 3f64.sqrt()).abs() < 1e-14);
        assert!((b.mahler_closed - 3f64.sqrt()).abs() < 1e-14);
        assert!(b.equality_case);
    }

    #[test]
    fn subordination_examples() {
        let circle = Lemniscate::unit_circle();
        let rep = subordination_check(&p(&[1, 1]), &circle, &[1.0, 2.0, 4.0], &HeightOptions::default()).unwrap();
        assert!(rep.holds(), "{:?}", rep.failures);
        assert!((rep.mahler - 1.0).abs() < 1e-12);
        // |1 + z| has a kink at z = -1, so the L_1 value converges only algebraically.
        let l1 = rep.lp[0].1;
        assert!((l1.value - 4.0 / std::f64::consts::PI).abs() < 1e-6);
        assert!((l1.value - 4.0 / std::f64::consts::PI).abs() <= 2.0 * l1.error);
        assert!((rep.lp[1].1.value - 2f64.sqrt()).abs() < 1e-12);
        assert!((rep.sup - 2.0).abs() < 1e-12);

        let l = lm(&[1, 0, -3, 1], 0.6);
        let rep = subordination_check(&p(&[1, 0, -3, 1]), &l, &[0.5, 2.0], &HeightOptions::default()).unwrap();
        assert!(rep.holds());
        for (_, e) in &rep.lp {
            assert!((e.value - 0.6).abs() < 1e-12);
        }
    }

    #[test]
    fn report_json_shape() {
        let l = lm(&[-2, 0, 1], 0.5);
        let exps = [PValue::Zero, PValue::Finite(2.0), PValue::Infinity];
        let rep = HeightReport::compute(
            &p(&[0, 1]),
            &l,
            &exps,
            &HeightOptions {
                n_nodes: 256,
                n_theta: 256,
            },
        )
        .unwrap();
        let j = rep.to_json();
        assert_eq!(j["polynomial"], "z");
        assert_eq!(j["lemniscate"]["V"], "z^2-2");
        assert_eq!(j["lemniscate"]["r"], "0.500000000000000");
        assert_eq!(j["heights"]["mahler"], "1.41421356237310");
        let keys: Vec<&String> = j["heights"]["lp"].as_object().unwrap().keys().collect();
        assert_eq!(keys, ["0", "2", "inf"]);
    }

    #[test]
    fn p_value_parsing() {
        assert_eq!("inf".parse::<PValue>().unwrap(), PValue::Infinity);
        assert_eq!("0".parse::<PValue>().unwrap(), PValue::Zero);
        assert_eq!("2.5".parse::<PValue>().unwrap(), PValue::Finite(2.5));
        assert!("-1".parse::<PValue>().is_err());
    }
}
