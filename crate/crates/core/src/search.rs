//! Exhaustive searches for integer polynomials of smallest height.
//!
//! The candidate space is every nonzero integer polynomial of degree at most
//! `k m` with coefficients in `[-B, B]`, one representative per sign. Before
//! any root finding a candidate must beat two lower bounds: the
//! leading-coefficient bound `|c_n| (r / |a_m|)^(n/m)` and, when `Res(P, V)`
//! is nonzero, `|a_m|^(-n/m) |Res(P, V)|^(1/m)`. Both are compared against a
//! height already attained in the box (by `1` or `V^k`), so pruning never
//! changes the minimum or the set of minimizers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::coeffbox::{scan, CoeffBox, ProgressSink};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::exact::resultant;
use crate::heights::{lemniscate_json, lp_norm_on, mahler_closed, sup_norm_on, PValue};
use crate::lemniscate::{Lemniscate, LevelGrid};
use crate::numbertheory::{kronecker_classify, VerdictKind};
use crate::numeric::{fmt_real, ln_abs};
use crate::polynomials::{euler_phi, factor, is_irreducible, IntPolynomial};

/// Two heights closer than this (relative) are treated as equal.
pub const TIE_TOL: f64 = 1e-9;
/// Margin by which a lower bound must exceed the incumbent to prune.
const PRUNE_MARGIN: f64 = 1e-6;
/// Grid sizes for the two-tier sup norm.
const SUP_COARSE: usize = 1 << 10;
const SUP_FINE: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpec {
    pub lemniscate: Lemniscate,
    pub k: usize,
    pub p: PValue,
    pub coeff_bound: u64,
    pub prune: bool,
}

impl SearchSpec {
    pub fn max_degree(&self) -> usize {
        self.k * self.lemniscate.degree()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lemniscate": lemniscate_json(&self.lemniscate),
            "k": self.k,
            "p": self.p.label(),
            "coeff_bound": self.coeff_bound,
            "prune": self.prune,
        })
    }
}

/// Which extremal statement applies to a lemniscate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    /// Irreducible integer `V`, `r < 1/|a_m|`.
    One,
    /// Irreducible integer `V`, `r = 1/|a_m| < 1`.
    Two,
    /// Irreducible integer `V`, `r = |a_m| = 1`.
    Three,
    /// `r / |a_m| >= 1`: the minimum is 1.
    Large,
    /// Outside every proved case; the scan is reported without a prediction.
    Exploratory,
}

impl Case {
    pub fn label(&self) -> &'static str {
        match self {
            Case::One => "i",
            Case::Two => "ii",
            Case::Three => "iii",
            Case::Large => "Llarge",
            Case::Exploratory => "exploratory",
        }
    }

    fn is_min_h(&self) -> bool {
        matches!(self, Case::One | Case::Two | Case::Three)
    }
}

/// Decides the case with exact rational arithmetic on `r` and `|a_m|`.
pub fn determine_case(lm: &Lemniscate, factor_cap: usize) -> Result<Case> {
    let one = BigRational::one();
    let r = lm.r_exact();
    let Some(v) = lm.v_int() else {
        // Complex V: only the large-radius statement applies.
        let ratio = lm.r() / lm.leading_abs();
        return Ok(if ratio >= 1.0 { Case::Large } else { Case::Exploratory });
    };
    let a = BigRational::from_integer(v.leading().abs());
    let ra = r * &a;
    let large = *r >= a;
    if ra <= one {
        if is_irreducible(v, factor_cap.max(v.degree()))? {
            return Ok(if ra < one {
                Case::One
            } else if a.is_one() {
                Case::Three
            } else {
                Case::Two
            });
        }
        if large {
            return Ok(Case::Large);
        }
        return Err(Error::HypothesisViolation(format!(
            "minimal-height theorem needs irreducible V; {v} is reducible"
        )));
    }
    Ok(if large { Case::Large } else { Case::Exploratory })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub spec: SearchSpec,
    pub case: Case,
    /// Proved infimum for the case, when there is one.
    pub floor: Option<f64>,
    pub min_value: f64,
    /// Sign-normalized minimizers, in scan order.
    pub argmins: Vec<IntPolynomial>,
    pub argmin_values: Vec<f64>,
    pub scanned: u128,
    /// Removed by the leading-coefficient bound.
    pub pruned_leading: u128,
    /// Removed by the resultant bound.
    pub pruned_resultant: u128,
    /// Removed because `M_L` already exceeded the incumbent (p > 0 only).
    pub pruned_mahler: u128,
    /// Candidates whose height fell below the floor by more than `1e-9`.
    pub floor_violations: Vec<(IntPolynomial, f64)>,
}

impl SearchResult {
    pub fn pruned(&self) -> u128 {
        self.pruned_leading + self.pruned_resultant + self.pruned_mahler
    }

    /// The minimum equals the floor and nothing went below it.
    pub fn matches_theorem(&self) -> bool {
        match self.floor {
            Some(f) => self.floor_violations.is_empty() && (self.min_value - f).abs() <= TIE_TOL * f.max(1.0),
            None => false,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "spec": self.spec.to_json(),
            "min_value": fmt_real(self.min_value),
            "argmins": self.argmins.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "scanned": self.scanned.to_string(),
            "pruned": self.pruned().to_string(),
            "case": self.case.label(),
            "floor": self.floor.map(fmt_real),
            "matches_theorem": self.matches_theorem(),
            "floor_violations": self.floor_violations.iter().map(|(p, v)| json!({
                "polynomial": p.to_string(),
                "value": fmt_real(*v),
            })).collect::<Vec<_>>(),
        })
    }
}

enum Outcome {
    PrunedLeading,
    PrunedResultant,
    PrunedMahler,
    Value(f64),
}

/// Height of one candidate under the selected exponent.
struct Evaluator<'a> {
    lm: &'a Lemniscate,
    p: PValue,
    grid: Option<LevelGrid>,
    sup_fine: Option<LevelGrid>,
}

impl<'a> Evaluator<'a> {
    fn new(lm: &'a Lemniscate, p: PValue, n_nodes: usize) -> Result<Self> {
        let (grid, sup_fine) = match p {
            PValue::Zero => (None, None),
            PValue::Finite(_) => (Some(LevelGrid::new(lm, n_nodes)?), None),
            PValue::Infinity => (
                Some(LevelGrid::new(lm, SUP_COARSE)?),
                Some(LevelGrid::new(lm, SUP_FINE)?),
            ),
        };
        Ok(Evaluator { lm, p, grid, sup_fine })
    }

    /// Height of `poly`, given its Mahler measure and the incumbent bound.
    fn height(&self, poly: &IntPolynomial, mahler: f64, incumbent: f64) -> Result<f64> {
        match self.p {
            PValue::Zero => Ok(mahler),
            PValue::Finite(e) => Ok(lp_norm_on(poly, self.grid.as_ref().expect("grid"), e)?.value),
            PValue::Infinity => {
                let coarse = sup_norm_on(poly, self.lm, self.grid.as_ref().expect("grid"))?.value;
                if coarse <= incumbent * (1.0 + PRUNE_MARGIN) + PRUNE_MARGIN {
                    Ok(sup_norm_on(poly, self.lm, self.sup_fine.as_ref().expect("grid"))?.value)
                } else {
                    Ok(coarse)
                }
            }
        }
    }

    fn full(&self, poly: &IntPolynomial) -> Result<f64> {
        self.height(poly, mahler_closed(poly, self.lm)?, f64::INFINITY)
    }
}

/// Scans the box for the smallest height.
pub fn min_height_search(spec: &SearchSpec, cfg: &Config, mut progress: ProgressSink<'_>) -> Result<SearchResult> {
    if spec.k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    if spec.coeff_bound == 0 {
        return Err(Error::InvalidInput("coeff_bound must be positive".into()));
    }
    let lm = &spec.lemniscate;
    let case = determine_case(lm, cfg.factor_degree_cap)?;
    let bx = CoeffBox::signed(spec.max_degree(), spec.coeff_bound);
    bx.check_cap("search candidates", cfg.search_cap)?;
    let eval = Evaluator::new(lm, spec.p, cfg.n_nodes)?;

    let m = lm.degree() as f64;
    let floor = match case {
        c if c.is_min_h() => Some(lm.r().powi(spec.k as i32)),
        Case::Large => Some(1.0),
        _ => None,
    };

    // Incumbent: the best of the heights of `1` and `V^k` when in the box.
    let mut incumbent = eval.full(&IntPolynomial::one())?;
    if let Some(v) = lm.v_int() {
        let vk = v.pow(spec.k as u32).sign_normalized();
        if vk.coeffs().iter().all(|c| c.abs() <= BigInt::from(spec.coeff_bound)) {
            incumbent = incumbent.min(eval.full(&vk)?);
        }
    }
    let cutoff = incumbent * (1.0 + PRUNE_MARGIN);
    let log_ratio = (lm.r() / lm.leading_abs()).ln();
    let log_am = lm.leading_abs().ln();

    let evaluate = |poly: &IntPolynomial| -> Result<Outcome> {
        let n = poly.degree() as f64;
        if spec.prune {
            let lb = (ln_abs(&poly.leading()) + n / m * log_ratio).exp();
            if lb > cutoff {
                return Ok(Outcome::PrunedLeading);
            }
            if let Some(v) = lm.v_int() {
                if poly.degree() > 0 {
                    let res = resultant(poly, v)?;
                    if !res.is_zero() && ((ln_abs(&res) - n * log_am) / m).exp() > cutoff {
                        return Ok(Outcome::PrunedResultant);
                    }
                }
            }
        }
        let mahler = mahler_closed(poly, lm)?;
        if spec.prune && spec.p != PValue::Zero && mahler > cutoff {
            return Ok(Outcome::PrunedMahler);
        }
        Ok(Outcome::Value(eval.height(poly, mahler, incumbent)?))
    };

    let mut pruned = [0u128; 3];
    let mut best = f64::INFINITY;
    let mut near: Vec<(f64, usize, u128)> = Vec::new();
    let mut violations = Vec::new();
    let scanned = scan(
        &bx,
        evaluate,
        |d, i, out| {
            match out {
                Outcome::PrunedLeading => pruned[0] += 1,
                Outcome::PrunedResultant => pruned[1] += 1,
                Outcome::PrunedMahler => pruned[2] += 1,
                Outcome::Value(v) => {
                    if let Some(f) = floor {
                        if v < f - TIE_TOL * f.max(1.0) {
                            violations.push((d, i, v));
                        }
                    }
                    if v < best {
                        best = v;
                        near.retain(|(w, _, _)| *w <= best * (1.0 + TIE_TOL));
                    }
                    if v <= best * (1.0 + TIE_TOL) {
                        near.push((v, d, i));
                    }
                }
            }
            Some(best)
        },
        &mut progress,
    )?;
    near.retain(|(w, _, _)| (w - best).abs() <= TIE_TOL * best);
    Ok(SearchResult {
        spec: spec.clone(),
        case,
        floor,
        min_value: best,
        argmins: near.iter().map(|&(_, d, i)| bx.decode(d, i)).collect(),
        argmin_values: near.iter().map(|t| t.0).collect(),
        scanned,
        pruned_leading: pruned[0],
        pruned_resultant: pruned[1],
        pruned_mahler: pruned[2],
        floor_violations: violations.into_iter().map(|(d, i, v)| (bx.decode(d, i), v)).collect(),
    })
}

/// Argmins against the minimizers predicted for the case.
#[derive(Debug, Clone, PartialEq)]
pub struct UniquenessReport {
    pub result: SearchResult,
    /// Predicted minimizers; `None` when the case makes no uniqueness claim.
    pub predicted: Option<Vec<IntPolynomial>>,
    /// Whether argmins beyond the predicted set are allowed for this case.
    pub extras_permitted: bool,
    pub missing: Vec<IntPolynomial>,
    pub extra: Vec<IntPolynomial>,
    /// For `p = 0` at `r = |a_m| = 1`: argmins whose irreducible factors are
    /// not all divisors of `V` or of some `Phi_j o V` with `phi(j) m <= k m`.
    pub unmatched: Vec<IntPolynomial>,
    pub notes: Vec<String>,
}

impl UniquenessReport {
    pub fn matches(&self) -> bool {
        self.result.matches_theorem()
            && self.missing.is_empty()
            && (self.extras_permitted || self.extra.is_empty())
            && self.unmatched.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let list = |v: &[IntPolynomial]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>();
        let mut j = self.result.to_json();
        j["uniqueness"] = json!({
            "predicted": self.predicted.as_deref().map(list),
            "extras_permitted": self.extras_permitted,
            "missing": list(&self.missing),
            "extra": list(&self.extra),
            "unmatched": list(&self.unmatched),
            "matches": self.matches(),
            "notes": self.notes,
        });
        j
    }
}

fn in_box(p: &IntPolynomial, spec: &SearchSpec) -> bool {
    p.degree() <= spec.max_degree() && p.coeffs().iter().all(|c| c.abs() <= BigInt::from(spec.coeff_bound))
}

/// Runs the search and compares its argmins with the predicted minimizers.
pub fn verify_uniqueness(spec: &SearchSpec, cfg: &Config, progress: ProgressSink<'_>) -> Result<UniquenessReport> {
    let result = min_height_search(spec, cfg, progress)?;
    let lm = &spec.lemniscate;
    let vk = lm.v_int().map(|v| v.pow(spec.k as u32).sign_normalized());
    let one = IntPolynomial::one();
    let positive_p = spec.p != PValue::Zero;
    let mut notes = Vec::new();
    let (predicted, extras_permitted) = match result.case {
        Case::One => (Some(vec![vk.clone().expect("integer V")]), false),
        Case::Two if positive_p => (Some(vec![vk.clone().expect("integer V")]), false),
        Case::Two => {
            notes.push("p = 0 at r = 1/|a_m|: uniqueness is not claimed; extra minimizers are reported".into());
            (Some(vec![vk.clone().expect("integer V")]), true)
        }
        Case::Three if positive_p => (Some(vec![vk.clone().expect("integer V"), one.clone()]), false),
        Case::Three => {
            notes.push("p = 0 at r = |a_m| = 1: minimizers checked against the unit-height classification".into());
            (Some(vec![vk.clone().expect("integer V"), one.clone()]), true)
        }
        Case::Large => {
            let strict = lm.r() > lm.leading_abs()
                && lm
                    .v_int()
                    .map(|v| *lm.r_exact() > BigRational::from_integer(v.leading().abs()))
                    .unwrap_or(true);
            if !strict {
                notes.push("r = |a_m|: uniqueness of the minimizer is not claimed".into());
            }
            (Some(vec![one.clone()]), !strict)
        }
        Case::Exploratory => {
            notes.push("no proved statement covers this lemniscate; scan is exploratory".into());
            (None, true)
        }
    };
    let predicted = predicted.map(|v| v.into_iter().filter(|p| in_box(p, spec)).collect::<Vec<_>>());
    let (missing, extra) = match &predicted {
        Some(pred) => (
            pred.iter().filter(|p| !result.argmins.contains(p)).cloned().collect(),
            result.argmins.iter().filter(|p| !pred.contains(p)).cloned().collect(),
        ),
        None => (Vec::new(), Vec::new()),
    };
    let mut unmatched = Vec::new();
    if result.case == Case::Three && !positive_p {
        let m = lm.degree() as u64;
        let km = spec.max_degree() as u64;
        for a in &result.argmins {
            if !gkr_consistent(a, lm, m, km, cfg)? {
                unmatched.push(a.clone());
            }
        }
    }
    Ok(UniquenessReport {
        result,
        predicted,
        extras_permitted,
        missing,
        extra,
        unmatched,
        notes,
    })
}

/// Every irreducible factor divides `V` or some `Phi_j o V` with
/// `phi(j) m <= k m`.
fn gkr_consistent(p: &IntPolynomial, lm: &Lemniscate, m: u64, km: u64, cfg: &Config) -> Result<bool> {
    if p.degree() == 0 {
        return Ok(p.leading().abs().is_one());
    }
    let f = factor(p, cfg.factor_degree_cap.max(p.degree()))?;
    if !f.unit.abs().is_one() {
        return Ok(false);
    }
    for (g, _) in &f.factors {
        if !g.is_monic() {
            return Ok(false);
        }
        let verdict = kronecker_classify(g, lm, cfg.max_index)?;
        let ok = match verdict.kind {
            VerdictKind::DividesV => true,
            VerdictKind::CyclotomicLift => euler_phi(verdict.cyclotomic_index.expect("index")) * m <= km,
            VerdictKind::NotUnitHeight => false,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}
