//! Enumeration of integer polynomials in a coefficient box.
//!
//! Candidates are addressed by `(degree, index)`; the index is a mixed-radix
//! number over the non-leading coefficients, so every shard is a contiguous
//! range and scans stay deterministic under any thread count.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::numeric::fmt_real;
use crate::polynomials::IntPolynomial;

/// Integer polynomials of degree `<= max_degree` with coefficients in
/// `[-bound, bound]`. With `monic` the leading coefficient is 1; otherwise it
/// ranges over `1..=bound`, so each nonzero polynomial appears once up to sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoeffBox {
    pub max_degree: usize,
    pub bound: u64,
    pub monic: bool,
    /// Skip degree 0 (useful for monic scans, where it is just `1`).
    pub min_degree: usize,
}

impl CoeffBox {
    pub fn signed(max_degree: usize, bound: u64) -> Self {
        CoeffBox {
            max_degree,
            bound,
            monic: false,
            min_degree: 0,
        }
    }

    pub fn monic(max_degree: usize, bound: u64) -> Self {
        CoeffBox {
            max_degree,
            bound,
            monic: true,
            min_degree: 1,
        }
    }

    fn leading_choices(&self) -> u128 {
        if self.monic {
            1
        } else {
            self.bound as u128
        }
    }

    /// Number of candidates of exact degree `d`, saturating.
    pub fn count_degree(&self, d: usize) -> u128 {
        let base = 2 * self.bound as u128 + 1;
        let mut n = self.leading_choices();
        for _ in 0..d {
            n = n.saturating_mul(base);
        }
        n
    }

    pub fn count(&self) -> u128 {
        (self.min_degree..=self.max_degree)
            .map(|d| self.count_degree(d))
            .fold(0u128, u128::saturating_add)
    }

    /// Errors when the box holds more than `cap` candidates.
    pub fn check_cap(&self, what: &'static str, cap: u128) -> Result<()> {
        let n = self.count();
        if n > cap {
            return Err(Error::ResourceCap {
                what,
                requested: n,
                cap,
            });
        }
        Ok(())
    }

    /// The `index`-th candidate of exact degree `d`.
    pub fn decode(&self, d: usize, mut index: u128) -> IntPolynomial {
        let base = 2 * self.bound as u128 + 1;
        let b = self.bound as i64;
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push(BigInt::from((index % base) as i64 - b));
            index /= base;
        }
        let lead = if self.monic { 1 } else { index as i64 + 1 };
        coeffs.push(BigInt::from(lead));
        IntPolynomial::from_coeffs(coeffs)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "max_degree": self.max_degree,
            "coeff_bound": self.bound,
            "monic": self.monic,
            "candidates": self.count().to_string(),
        })
    }
}

/// One progress record, emitted after each shard of a scan.
#[derive(Debug, Clone, PartialEq)]
pub struct Progress {
    pub shard: usize,
    pub scanned: u128,
    pub best_so_far: Option<f64>,
}

impl Progress {
    pub fn to_json(&self) -> Value {
        json!({
            "shard": self.shard,
            "scanned": self.scanned.to_string(),
            "best_so_far": self.best_so_far.map(fmt_real),
        })
    }
}

/// Sink for progress records; `None` discards them.
pub type ProgressSink<'a> = Option<&'a mut dyn FnMut(&Progress)>;

pub(crate) fn report(sink: &mut ProgressSink<'_>, p: Progress) {
    if let Some(f) = sink.as_mut() {
        f(&p);
    }
}

/// Indices evaluated in parallel per batch before the in-order merge.
const BATCH: u64 = 1 << 14;

/// Runs `eval` over every candidate of the box in parallel and feeds the
/// results to `consume` in `(degree, index)` order, so any reduction done by
/// `consume` is independent of the thread count. `consume` returns the best
/// value so far, which is reported after each degree shard.
pub(crate) fn scan<T, F, G>(bx: &CoeffBox, eval: F, mut consume: G, sink: &mut ProgressSink<'_>) -> Result<u128>
where
    T: Send,
    F: Fn(&IntPolynomial) -> Result<T> + Sync,
    G: FnMut(usize, u128, T) -> Option<f64>,
{
    use rayon::prelude::*;
    let mut scanned = 0u128;
    let mut best = None;
    for d in bx.min_degree..=bx.max_degree {
        let total = u64::try_from(bx.count_degree(d)).map_err(|_| Error::ResourceCap {
            what: "scan shard",
            requested: bx.count_degree(d),
            cap: u64::MAX as u128,
        })?;
        let mut start = 0u64;
        while start < total {
            let end = (start + BATCH).min(total);
            let values: Vec<T> = (start..end)
                .into_par_iter()
                .map(|i| eval(&bx.decode(d, i as u128)))
                .collect::<Result<_>>()?;
            for (k, v) in values.into_iter().enumerate() {
                best = consume(d, (start + k as u64) as u128, v);
            }
            scanned += (end - start) as u128;
            start = end;
        }
        report(
            sink,
            Progress {
                shard: d,
                scanned,
                best_so_far: best,
            },
        );
    }
    Ok(scanned)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts_and_decoding_are_exhaustive() {
        let b = CoeffBox::signed(2, 1);
        assert_eq!(b.count(), 1 + 3 + 9);
        let mut seen = HashSet::new();
        for d in 0..=2 {
            for i in 0..b.count_degree(d) {
                let p = b.decode(d, i);
                assert_eq!(p.degree(), d);
                assert!(p.leading() > BigInt::from(0));
                assert!(seen.insert(p.to_string()));
            }
        }
        let m = CoeffBox::monic(3, 2);
        assert_eq!(m.count(), 5 + 25 + 125);
        assert!(m.decode(3, 0).is_monic());
        assert_eq!(m.decode(1, 0).to_string(), "z-2");
    }

    #[test]
    fn cap_is_enforced() {
        assert!(CoeffBox::signed(10, 5).check_cap("scan", 1000).is_err());
        assert!(CoeffBox::signed(1, 1).check_cap("scan", 1000).is_ok());
    }
}
