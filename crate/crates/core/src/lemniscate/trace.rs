use std::io::{self, Write};

use num_complex::Complex64;

use super::Lemniscate;
use crate::error::{Error, Result};

/// A closed component of the traced curve.
///
/// `theta` is cumulative: a component made of `k` branches spans
/// `[0, 2 pi k]`, and the last point repeats the first to close the loop.
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub theta: Vec<f64>,
    pub points: Vec<Complex64>,
    /// Branch indices in the order they are traversed.
    pub branches: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TraceWarning {
    /// A critical value of `V` lies on the circle `|w| = r`; the component
    /// count is not guaranteed.
    NearCritical { point: Complex64 },
    /// Two branches came within `1e-6 * capacity` of each other.
    BranchCollision { node: usize, distance: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveTrace {
    pub components: Vec<Component>,
    pub theta_nodes: Vec<f64>,
    /// `monodromy[i]` is the branch that branch `i` continues into after
    /// one turn of `theta`.
    pub monodromy: Vec<usize>,
    pub warnings: Vec<TraceWarning>,
}

impl CurveTrace {
    /// CSV with header `component_id,theta,re,im`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "component_id,theta,re,im")?;
        for (id, c) in self.components.iter().enumerate() {
            for (t, z) in c.theta.iter().zip(&c.points) {
                writeln!(out, "{id},{t:e},{:e},{:e}", z.re, z.im)?;
            }
        }
        Ok(())
    }

    pub fn is_near_critical(&self) -> bool {
        self.warnings
            .iter()
            .any(|w| matches!(w, TraceWarning::NearCritical { .. }))
    }
}

/// Greedy nearest-neighbour assignment: `result[i]` is the index in `next`
/// matched to `prev[i]`.
fn greedy_match(prev: &[Complex64], next: &[Complex64]) -> Vec<usize> {
    let m = prev.len();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(m * m);
    for (i, a) in prev.iter().enumerate() {
        for (j, b) in next.iter().enumerate() {
            pairs.push(((a - b).norm(), i, j));
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut result = vec![usize::MAX; m];
    let mut taken = vec![false; m];
    for (_, i, j) in pairs {
        if result[i] == usize::MAX && !taken[j] {
            result[i] = j;
            taken[j] = true;
        }
    }
    result
}

fn min_gap(points: &[Complex64]) -> f64 {
    let mut gap = f64::INFINITY;
    for i in 0..points.len() {
        for j in 0..i {
            gap = gap.min((points[i] - points[j]).norm());
        }
    }
    gap
}

/// Traces `L` as the `m` branches of `V(z) = r e^{i theta}` over a uniform
/// grid of `n_theta` angles and assembles the closed components from the
/// monodromy permutation.
pub fn trace(lm: &Lemniscate, n_theta: usize) -> Result<CurveTrace> {
    if n_theta < 16 {
        return Err(Error::InvalidInput(format!("n_theta must be >= 16, got {n_theta}")));
    }
    let m = lm.degree();
    let cap = lm.capacity();
    let mut warnings: Vec<TraceWarning> = lm
        .near_critical()?
        .into_iter()
        .map(|point| TraceWarning::NearCritical { point })
        .collect();
    let near_critical = !warnings.is_empty();

    let step = 2.0 * std::f64::consts::PI / n_theta as f64;
    let theta_nodes: Vec<f64> = (0..n_theta).map(|k| k as f64 * step).collect();
    // branches[i][k]: branch i at node k; node n_theta is theta = 2 pi.
    let first = lm.level_points(0.0, None)?.roots;
    let mut branches: Vec<Vec<Complex64>> = first.iter().map(|&z| vec![z]).collect();
    let mut current = first;
    let mut collision_flagged = false;
    for k in 1..=n_theta {
        let rs = lm.level_points(k as f64 * step, Some(&current))?;
        let gap = min_gap(&current);
        if gap < 1e-6 * cap && !collision_flagged {
            warnings.push(TraceWarning::BranchCollision {
                node: k - 1,
                distance: gap,
            });
            collision_flagged = true;
        }
        let assign = greedy_match(&current, &rs.roots);
        let next: Vec<Complex64> = assign.iter().map(|&j| rs.roots[j]).collect();
        let displacement = current
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if m > 1 && displacement >= 0.5 * gap && !near_critical {
            return Err(Error::StepTooCoarse {
                node: k,
                displacement,
                gap,
            });
        }
        if k < n_theta {
            for (b, z) in branches.iter_mut().zip(&next) {
                b.push(*z);
            }
        }
        current = next;
    }
    // current[i] is branch i after a full turn; find which start point it hit.
    let starts: Vec<Complex64> = branches.iter().map(|b| b[0]).collect();
    let monodromy = greedy_match(&current, &starts);

    let mut seen = vec![false; m];
    let mut components = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut order = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            order.push(i);
            i = monodromy[i];
        }
        let mut theta = Vec::with_capacity(order.len() * n_theta + 1);
        let mut points = Vec::with_capacity(order.len() * n_theta + 1);
        for (turn, &b) in order.iter().enumerate() {
            let offset = turn as f64 * 2.0 * std::f64::consts::PI;
            theta.extend(theta_nodes.iter().map(|t| t + offset));
            points.extend_from_slice(&branches[b]);
        }
        let last = *order.last().expect("cycle is nonempty");
        theta.push(order.len() as f64 * 2.0 * std::f64::consts::PI);
        points.push(current[last]);
        components.push(Component {
            theta,
            points,
            branches: order,
        });
    }
    Ok(CurveTrace {
        components,
        theta_nodes,
        monodromy,
        warnings,
    })
}
