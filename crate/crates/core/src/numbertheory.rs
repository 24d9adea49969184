//! Arithmetic of lemniscates `|V| = 1` with monic integer `V`: unit-height
//! classification, complete conjugate sets on the curve, and Lehmer-type
//! scans.
//!
//! Everything that decides divisibility is exact. For monic `P` the companion
//! `Q(w) = prod (w - V(alpha_k))` over the roots of `P` is obtained as the
//! integer polynomial `Res_z(P(z), w - V(z))`, and `M_L(P)^m = M(Q)`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::coeffbox::{scan, CoeffBox, ProgressSink};
use crate::error::{Error, Result};
use crate::exact::level_resultant;
use crate::heights::{lemniscate_json, log_mahler_from_roots, mahler_classical, mahler_closed};
use crate::lemniscate::{Lemniscate, Location};
use crate::numeric::fmt_real;
use crate::polynomials::{cyclotomic, euler_phi, factor, is_irreducible, IntPolynomial};
use crate::rootfinding::{roots, square_free_roots, RootSet};

/// Tolerance for "height exactly one".
pub const UNIT_HEIGHT_TOL: f64 = 1e-9;
/// Relative tolerance for `OnCurve` when listing conjugate sets.
pub const ENUMERATION_TOL: f64 = 1e-9;
/// Relative tolerance for `OnCurve` in the emptiness scan.
pub const EMPTINESS_TOL: f64 = 1e-6;

/// `V` normalized to leading coefficient `+1`. Negating `V` does not change
/// the curve `|V| = r`.
fn monic_v(lm: &Lemniscate, op: &str) -> Result<(IntPolynomial, Lemniscate)> {
    let v = lm.require_int(op)?;
    if !v.leading().abs().is_one() {
        return Err(Error::HypothesisViolation(format!("{op} needs monic V, got {v}")));
    }
    if v.is_monic() {
        return Ok((v.clone(), lm.clone()));
    }
    let nv = -v;
    let nlm = Lemniscate::new(nv.clone(), lm.r_exact().clone())?;
    Ok((nv, nlm))
}

fn unit_radius(lm: &Lemniscate, op: &str) -> Result<()> {
    if !lm.r_exact().is_one() {
        return Err(Error::HypothesisViolation(format!(
            "{op} needs r = 1, got r = {}",
            lm.r_exact()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictKind {
    DividesV,
    CyclotomicLift,
    NotUnitHeight,
}

impl VerdictKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerdictKind::DividesV => "divides_v",
            VerdictKind::CyclotomicLift => "cyclotomic_lift",
            VerdictKind::NotUnitHeight => "not_unit_height",
        }
    }
}

/// Classification of a monic irreducible `P` over `|V| = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct KroneckerVerdict {
    pub kind: VerdictKind,
    pub cyclotomic_index: Option<u64>,
    /// `V / P` or `(Phi_j o V) / P`, computed by exact division.
    pub witness: Option<IntPolynomial>,
    pub mahler: f64,
    /// `prod (w - V(alpha_k))`; absent for `NotUnitHeight`.
    pub companion: Option<IntPolynomial>,
}

impl KroneckerVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.as_str(),
            "cyclotomic_index": self.cyclotomic_index,
            "witness": self.witness.as_ref().map(|w| w.to_string()),
            "mahler": fmt_real(self.mahler),
            "companion": self.companion.as_ref().map(|q| q.to_string()),
        })
    }
}

/// Decides whether `M_L(P) = 1` and, if so, why: `P | V`, or `P | Phi_j o V`
/// for the least admissible `j`. Only `j` with `phi(j) <= deg P` can divide
/// the companion, so larger indices are never tried.
pub fn kronecker_classify(p: &IntPolynomial, lm: &Lemniscate, max_index: u64) -> Result<KroneckerVerdict> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    unit_radius(lm, "kronecker_classify")?;
    let (v, lm) = monic_v(lm, "kronecker_classify")?;
    if !p.is_monic() || p.degree() == 0 {
        return Err(Error::HypothesisViolation(format!(
            "P must be monic of positive degree, got {p}"
        )));
    }
    if !is_irreducible(p, p.degree())? {
        return Err(Error::HypothesisViolation(format!("P must be irreducible, got {p}")));
    }
    let mahler = mahler_closed(p, &lm)?;
    if mahler > 1.0 + UNIT_HEIGHT_TOL {
        return Ok(KroneckerVerdict {
            kind: VerdictKind::NotUnitHeight,
            cyclotomic_index: None,
            witness: None,
            mahler,
            companion: None,
        });
    }
    let q = level_resultant(p, &v)?;
    if q.coeffs()[0].is_zero() {
        let witness = v
            .exact_div(p)
            .ok_or_else(|| Error::Degenerate(format!("companion vanishes at 0 but {p} does not divide {v}")))?;
        return Ok(KroneckerVerdict {
            kind: VerdictKind::DividesV,
            cyclotomic_index: None,
            witness: Some(witness),
            mahler,
            companion: Some(q),
        });
    }
    let n = p.degree() as u64;
    for j in (1..=max_index).filter(|&j| euler_phi(j) <= n) {
        let phi = cyclotomic(j, max_index)?;
        if !phi.divides(&q) {
            continue;
        }
        let lifted = phi.compose(&v);
        let witness = lifted.exact_div(p).ok_or_else(|| {
            Error::Degenerate(format!(
                "Phi_{j} divides the companion but {p} does not divide Phi_{j}(V)"
            ))
        })?;
        return Ok(KroneckerVerdict {
            kind: VerdictKind::CyclotomicLift,
            cyclotomic_index: Some(j),
            witness: Some(witness),
            mahler,
            companion: Some(q),
        });
    }
    Err(Error::IndexExhausted { max_index })
}

/// A complete set of conjugate algebraic integers.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjugateSet {
    pub minimal_polynomial: IntPolynomial,
    pub roots: RootSet,
    /// `j` with the set among the roots of `Phi_j o V`; `None` for interior sets.
    pub cyclotomic_index: Option<u64>,
    /// Roots of `V`, strictly inside the curve.
    pub interior: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjugateSetReport {
    pub sets: Vec<ConjugateSet>,
    pub lemniscate: Lemniscate,
    pub max_index: u64,
    pub max_degree: usize,
    /// Factors skipped because a root failed the on-curve check numerically.
    pub rejected: Vec<IntPolynomial>,
}

impl ConjugateSetReport {
    pub fn on_curve(&self) -> impl Iterator<Item = &ConjugateSet> {
        self.sets.iter().filter(|s| !s.interior)
    }

    pub fn to_json(&self) -> Value {
        let sets: Vec<Value> = self
            .sets
            .iter()
            .map(|s| {
                json!({
                    "minimal_polynomial": s.minimal_polynomial.to_string(),
                    "cyclotomic_index": s.cyclotomic_index,
                    "interior": s.interior,
                    "roots": s.roots.roots.iter().map(|z| [fmt_real(z.re), fmt_real(z.im)]).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "lemniscate": lemniscate_json(&self.lemniscate),
            "max_index": self.max_index,
            "max_degree": self.max_degree,
            "sets": sets,
            "rejected": self.rejected.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Complete conjugate sets of degree `<= max_degree` lying on `|V| = 1`, as
/// the irreducible factors of `Phi_j o V` for `j <= max_index`, plus the
/// irreducible factors of `V` itself flagged as interior.
///
/// A factor of `Phi_j o V` maps onto the primitive `j`-th roots of unity, so
/// its degree is at least `phi(j)`; indices with `phi(j) > max_degree` are
/// skipped without factoring.
pub fn enumerate_conjugate_sets(
    lm: &Lemniscate,
    max_index: u64,
    max_degree: usize,
    factor_cap: usize,
) -> Result<ConjugateSetReport> {
    unit_radius(lm, "enumerate_conjugate_sets")?;
    let (v, lm) = monic_v(lm, "enumerate_conjugate_sets")?;
    let mut sets = Vec::new();
    let mut rejected = Vec::new();
    for (f, _) in factor(&v, factor_cap)?.factors {
        if f.degree() <= max_degree {
            let rs = roots(&f.to_complex(), 1e-14)?;
            sets.push(ConjugateSet {
                minimal_polynomial: f,
                roots: rs,
                cyclotomic_index: None,
                interior: true,
            });
        }
    }
    for j in (1..=max_index).filter(|&j| euler_phi(j) as usize <= max_degree) {
        let lifted = cyclotomic(j, max_index)?.compose(&v);
        for (f, _) in factor(&lifted, factor_cap)?.factors {
            if f.degree() > max_degree {
                continue;
            }
            let rs = roots(&f.to_complex(), 1e-14)?;
            if rs
                .roots
                .iter()
                .all(|&z| lm.classify(z, ENUMERATION_TOL) == Location::OnCurve)
            {
                sets.push(ConjugateSet {
                    minimal_polynomial: f,
                    roots: rs,
                    cyclotomic_index: Some(j),
                    interior: false,
                });
            } else {
                rejected.push(f);
            }
        }
    }
    Ok(ConjugateSetReport {
        sets,
        lemniscate: lm,
        max_index,
        max_degree,
        rejected,
    })
}

/// Result of scanning monic polynomials for roots all on a curve with `r < 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmptinessReport {
    pub lemniscate: Lemniscate,
    pub coeff_box: CoeffBox,
    pub scanned: u128,
    pub hits: Vec<IntPolynomial>,
    /// The candidate whose worst root is closest to the curve, with that
    /// worst relative offset `max_k | |V(z_k)| - r | / r`.
    pub near_miss: Option<(IntPolynomial, f64)>,
}

impl EmptinessReport {
    pub fn to_json(&self) -> Value {
        json!({
            "lemniscate": lemniscate_json(&self.lemniscate),
            "box": self.coeff_box.to_json(),
            "scanned": self.scanned.to_string(),
            "hits": self.hits.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "near_miss": self.near_miss.as_ref().map(|(p, d)| json!({
                "polynomial": p.to_string(),
                "max_offset": fmt_real(*d),
            })),
        })
    }
}

/// Scans monic integer polynomials of degree `1..=max_degree` with
/// coefficients in `[-coeff_bound, coeff_bound]` for ones whose roots all lie
/// on `|V| = r`, `0 < r < 1`. None can exist; hits would indicate a bug.
pub fn no_sets_below_one(
    lm: &Lemniscate,
    coeff_bound: u64,
    max_degree: usize,
    scan_cap: u128,
    mut progress: ProgressSink<'_>,
) -> Result<EmptinessReport> {
    let (_, lm) = monic_v(lm, "no_sets_below_one")?;
    let r = lm.r_exact();
    if !(r.is_positive() && *r < BigRational::one()) {
        return Err(Error::HypothesisViolation(format!(
            "no_sets_below_one needs 0 < r < 1, got r = {r}"
        )));
    }
    let bx = CoeffBox::monic(max_degree, coeff_bound);
    bx.check_cap("emptiness scan candidates", scan_cap)?;
    let mut hits = Vec::new();
    let mut best: Option<(usize, u128, f64)> = None;
    let eval = |p: &IntPolynomial| -> Result<f64> {
        let mut worst = 0.0f64;
        for (rs, _) in square_free_roots(p)? {
            for &z in &rs.roots {
                worst = worst.max(lm.level_offset(z).abs());
            }
        }
        Ok(worst)
    };
    let scanned = scan(
        &bx,
        eval,
        |d, i, worst| {
            if worst <= EMPTINESS_TOL {
                hits.push(bx.decode(d, i));
            }
            if best.is_none_or(|(_, _, b)| worst < b) {
                best = Some((d, i, worst));
            }
            best.map(|b| b.2)
        },
        &mut progress,
    )?;
    Ok(EmptinessReport {
        near_miss: best.map(|(d, i, w)| (bx.decode(d, i), w)),
        lemniscate: lm,
        coeff_box: bx,
        scanned,
        hits,
    })
}

/// `M(Q)` against `M_L(Q o V)` over `|V| = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct LiftReport {
    pub m_of_q: f64,
    pub m_l_of_composition: f64,
    pub relative_gap: f64,
}

impl LiftReport {
    pub fn to_json(&self) -> Value {
        json!({
            "M_of_Q": fmt_real(self.m_of_q),
            "M_L_of_composition": fmt_real(self.m_l_of_composition),
            "relative_gap": fmt_real(self.relative_gap),
        })
    }
}

pub fn lift_measure_identity(q: &IntPolynomial, lm: &Lemniscate) -> Result<LiftReport> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    unit_radius(lm, "lift_measure_identity")?;
    let (v, lm) = monic_v(lm, "lift_measure_identity")?;
    let m_of_q = mahler_classical(q)?;
    let m_l = mahler_closed(&q.compose(&v), &lm)?;
    Ok(LiftReport {
        m_of_q,
        m_l_of_composition: m_l,
        relative_gap: (m_l - m_of_q).abs() / m_of_q,
    })
}

/// Smallest heights above `1 + gap` over a coefficient box, on `L` and on the
/// unit circle, with the two-sided consistency checks between them.
#[derive(Debug, Clone, PartialEq)]
pub struct LehmerReport {
    pub lemniscate: Lemniscate,
    pub coeff_box: CoeffBox,
    pub gap: f64,
    pub scanned: u128,
    pub smallest_above_one: Option<f64>,
    pub witness: Option<IntPolynomial>,
    pub unit_circle_min: Option<f64>,
    pub unit_circle_witness: Option<IntPolynomial>,
    /// `(B^(1/m), B)` for the unit-circle minimum `B`.
    pub sandwich: Option<(f64, f64)>,
    /// `M_L(Q o V)` for the unit-circle witness `Q`.
    pub lift_value: Option<f64>,
    /// Smallest `M_L` over the whole box; at least 1 in theory.
    pub min_height: f64,
    /// `|M_L(W)^m - M(Q_W)| / M(Q_W)` for the witness `W` and its companion `Q_W`.
    pub construction_gap: Option<f64>,
    pub lower_holds: bool,
    pub upper_holds: bool,
    pub floor_holds: bool,
}

impl LehmerReport {
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds && self.floor_holds
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lemniscate": lemniscate_json(&self.lemniscate),
            "box": self.coeff_box.to_json(),
            "gap": fmt_real(self.gap),
            "scanned": self.scanned.to_string(),
            "smallest_above_one": self.smallest_above_one.map(fmt_real),
            "witness": self.witness.as_ref().map(|p| p.to_string()),
            "unit_circle_min": self.unit_circle_min.map(fmt_real),
            "unit_circle_witness": self.unit_circle_witness.as_ref().map(|p| p.to_string()),
            "sandwich": self.sandwich.map(|(a, b)| [fmt_real(a), fmt_real(b)]),
            "lift_value": self.lift_value.map(fmt_real),
            "min_height": fmt_real(self.min_height),
            "construction_gap": self.construction_gap.map(fmt_real),
            "checks": {
                "lower": self.lower_holds,
                "upper": self.upper_holds,
                "floor": self.floor_holds,
            },
        })
    }
}

/// Running minimum over values above a threshold; ties within `1e-12`
/// relative keep the earlier candidate.
#[derive(Default)]
struct MinAbove {
    best: Option<(f64, usize, u128)>,
}

impl MinAbove {
    fn offer(&mut self, value: f64, threshold: f64, d: usize, i: u128) {
        if value <= threshold {
            return;
        }
        if self.best.is_none_or(|(b, _, _)| value < b * (1.0 - 1e-12)) {
            self.best = Some((value, d, i));
        }
    }
}

pub fn lehmer_scan(
    lm: &Lemniscate,
    max_degree: usize,
    coeff_bound: u64,
    gap: f64,
    scan_cap: u128,
    mut progress: ProgressSink<'_>,
) -> Result<LehmerReport> {
    if !(gap > 0.0 && gap.is_finite()) {
        return Err(Error::InvalidInput(format!("gap must be positive, got {gap}")));
    }
    unit_radius(lm, "lehmer_scan")?;
    let (v, lm) = monic_v(lm, "lehmer_scan")?;
    let circle = Lemniscate::unit_circle();
    let bx = CoeffBox::signed(max_degree, coeff_bound);
    bx.check_cap("lehmer scan candidates", scan_cap)?;
    let threshold = 1.0 + gap;

    let eval = |p: &IntPolynomial| -> Result<(f64, f64)> {
        if p.degree() == 0 {
            let c = p.leading().abs();
            let l = crate::numeric::ln_abs(&c);
            return Ok((l.exp(), l.exp()));
        }
        let sf = square_free_roots(p)?;
        let on_l = log_mahler_from_roots(&p.leading(), p.degree(), &sf, &lm).exp();
        let on_t = log_mahler_from_roots(&p.leading(), p.degree(), &sf, &circle).exp();
        Ok((on_l, on_t))
    };
    let mut min_l = MinAbove::default();
    let mut min_t = MinAbove::default();
    let mut floor = f64::INFINITY;
    let scanned = scan(
        &bx,
        eval,
        |d, i, (ml, mt)| {
            floor = floor.min(ml);
            min_l.offer(ml, threshold, d, i);
            min_t.offer(mt, threshold, d, i);
            min_l.best.map(|b| b.0)
        },
        &mut progress,
    )?;

    let m = lm.degree() as i32;
    let witness = min_l.best.map(|(_, d, i)| bx.decode(d, i));
    let unit_circle_witness = min_t.best.map(|(_, d, i)| bx.decode(d, i));
    // Recompute the reported minima directly from the witnesses.
    let smallest_above_one = witness.as_ref().map(|w| mahler_closed(w, &lm)).transpose()?;
    let unit_circle_min = unit_circle_witness.as_ref().map(mahler_classical).transpose()?;
    let sandwich = unit_circle_min.map(|b| (b.powf(1.0 / m as f64), b));
    let lift_value = unit_circle_witness
        .as_ref()
        .map(|q| mahler_closed(&q.compose(&v), &lm))
        .transpose()?;
    let construction_gap = match &witness {
        Some(w) => {
            let q = level_resultant(w, &v)?;
            let mq = mahler_classical(&q)?;
            let ml = smallest_above_one.expect("witness has a value");
            Some((ml.powi(m) - mq).abs() / mq)
        }
        None => None,
    };
    let lower_holds = match (smallest_above_one, sandwich) {
        (Some(l), Some((lo, _))) => l >= lo - 1e-9,
        _ => true,
    };
    let upper_holds = match (lift_value, unit_circle_min) {
        (Some(lift), Some(b)) => lift <= b + 1e-9,
        _ => true,
    };
    Ok(LehmerReport {
        lemniscate: lm,
        coeff_box: bx,
        gap,
        scanned,
        smallest_above_one,
        witness,
        unit_circle_min,
        unit_circle_witness,
        sandwich,
        lift_value,
        min_height: floor,
        construction_gap,
        lower_holds,
        upper_holds,
        floor_holds: floor >= 1.0 - 1e-9,
    })
}
