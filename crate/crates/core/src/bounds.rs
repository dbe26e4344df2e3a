//! Closed-form lower bounds for `depth` and `sdepth` of `S/I^t` on the two
//! tree families, next to the older diameter and near-leaf bounds that hold
//! for any forest.

use serde::{Deserialize, Serialize};

use crate::depth::depth_quotient;
use crate::error::{Error, Result};
use crate::exec::Limits;
use crate::field::PrimeField;
use crate::graph::{graph_stats, Family};
use crate::ideal::edge_ideal;
use crate::sdepth::sdepth_quotient;

fn half(x: i64) -> i64 {
    assert!(x % 2 == 0, "inexact division of {x} by 2");
    x / 2
}

/// Lower bound for the caterpillar `P_{n,k,l}` at power `t`.
///
/// At `t = 1` this is the sharper first-power bound; for `t ≥ 2` it is the
/// parity-split bound floored at 1. The star `n = 1` gives 1.
pub fn bound_caterpillar(n: usize, k: usize, l: usize, t: usize) -> Result<i64> {
    if n == 0 || k < 2 || l == 0 || l > k || t == 0 {
        return Err(Error::ParameterDomain(format!(
            "caterpillar bound needs n ≥ 1, k ≥ 2, 1 ≤ l ≤ k, t ≥ 1; got n={n} k={k} l={l} t={t}"
        )));
    }
    if n == 1 {
        if l != k {
            return Err(Error::ParameterDomain(format!(
                "a one-vertex spine needs l = k; got l={l} k={k}"
            )));
        }
        return Ok(1);
    }
    if t == 1 {
        return Ok(first_power_caterpillar(n, k, l));
    }
    Ok(power_caterpillar(n, k, l, t))
}

fn first_power_caterpillar(n: usize, k: usize, l: usize) -> i64 {
    let (n, k, l) = (n as i64, k as i64, l as i64);
    if n % 2 == 0 {
        half(n - 2) * k + l
    } else if l >= 2 {
        half(n - 1) * k + 1
    } else {
        half(n - 1) * k
    }
}

/// The parity-split bound, valid for every `t ≥ 1` and `n ≥ 2`.
pub(crate) fn power_caterpillar(n: usize, k: usize, l: usize, t: usize) -> i64 {
    let (n, k, l, t) = (n as i64, k as i64, l as i64, t as i64);
    let v = if (n - t) % 2 != 0 {
        half(n - t - 1) * k + l - 1
    } else if l >= 2 {
        half(n - t) * k
    } else {
        half(n - t) * k - 1
    };
    v.max(1)
}

/// Lower bound for the lobster `S_{r,p,q}` at power `t`.
pub fn bound_lobster(r: usize, p: usize, q: usize, t: usize) -> Result<i64> {
    if r < 2 || p == 0 || q > p || t == 0 {
        return Err(Error::ParameterDomain(format!(
            "lobster bound needs r ≥ 2, p ≥ 1, 0 ≤ q ≤ p, t ≥ 1; got r={r} p={p} q={q} t={t}"
        )));
    }
    let (r, t) = (r as i64, t as i64);
    Ok(if q == 0 { r - t } else { r - t + 1 }.max(1))
}

/// The forest bound `max{⌈(d − t + a)/3⌉ + s − 1, s}` with diameter `d` and
/// `s` components; `a` defaults to 2 (the plain diameter bound) and is the
/// near-leaf count of a component of diameter `d` otherwise.
pub fn bound_prior_forest(d: usize, s: usize, t: usize, a: Option<usize>) -> i64 {
    let num = d as i64 - t as i64 + a.unwrap_or(2) as i64;
    let ceil = -(-num).div_euclid(3);
    let s = s as i64;
    (ceil + s - 1).max(s)
}

/// An exact invariant that may or may not have been computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exact {
    Skipped,
    Capped { reason: String },
    Value(usize),
}

impl Exact {
    pub fn value(&self) -> Option<usize> {
        match self {
            Exact::Value(v) => Some(*v),
            _ => None,
        }
    }

    pub fn is_capped(&self) -> bool {
        matches!(self, Exact::Capped { .. })
    }

    fn from_result(r: Result<usize>) -> Result<Exact> {
        match r {
            Ok(v) => Ok(Exact::Value(v)),
            Err(Error::Resource(e)) => Ok(Exact::Capped { reason: e.to_string() }),
            Err(e) => Err(e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub family: Family,
    pub t: usize,
    pub new_bound: i64,
    pub prior_diam_bound: i64,
    pub prior_nearleaf_bound: i64,
    pub exact_depth: Exact,
    pub exact_sdepth: Exact,
}

impl BoundReport {
    /// The better of the two forest bounds.
    pub fn prior_bound(&self) -> i64 {
        self.prior_diam_bound.max(self.prior_nearleaf_bound)
    }

    /// False when a computed exact value falls below the new bound.
    pub fn is_sound(&self) -> bool {
        [&self.exact_depth, &self.exact_sdepth]
            .iter()
            .filter_map(|e| e.value())
            .all(|v| v as i64 >= self.new_bound)
    }
}

pub fn new_bound(family: Family, t: usize) -> Result<i64> {
    match family {
        Family::Caterpillar { n, k, l } => bound_caterpillar(n, k, l, t),
        Family::Lobster { r, p, q } => bound_lobster(r, p, q, t),
    }
}

/// Evaluates every bound for one family member and, when asked, the exact
/// invariants under `limits`. Resource exhaustion lands in the report as
/// [`Exact::Capped`].
pub fn compare(
    family: Family,
    t: usize,
    compute_exact: bool,
    field: PrimeField,
    limits: &Limits,
) -> Result<BoundReport> {
    let new_bound = new_bound(family, t)?;
    let graph = family.build()?;
    let stats = graph_stats(&graph);
    let mut report = BoundReport {
        family,
        t,
        new_bound,
        prior_diam_bound: bound_prior_forest(stats.diameter, stats.components, t, None),
        prior_nearleaf_bound: bound_prior_forest(
            stats.diameter,
            stats.components,
            t,
            Some(stats.near_leaves),
        ),
        exact_depth: Exact::Skipped,
        exact_sdepth: Exact::Skipped,
    };
    if !compute_exact {
        return Ok(report);
    }
    let power = u32::try_from(t)
        .map_err(|_| Error::ParameterDomain(format!("t = {t} is too large")))
        .and_then(|t| edge_ideal(&graph).power_with(t, limits.mode));
    let power = match power {
        Ok(p) => p,
        Err(Error::Resource(e)) => {
            let capped = Exact::Capped { reason: e.to_string() };
            report.exact_depth = capped.clone();
            report.exact_sdepth = capped;
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.exact_depth = Exact::from_result(depth_quotient(&power, field, limits).map(|r| r.depth))?;
    let hint = usize::try_from(new_bound.max(0)).unwrap_or(0);
    report.exact_sdepth =
        Exact::from_result(sdepth_quotient(&power, Some(hint), limits).map(|r| r.sdepth))?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caterpillar_examples() {
        assert_eq!(bound_caterpillar(4, 4, 4, 1).unwrap(), 8);
        assert_eq!(bound_caterpillar(4, 4, 4, 2).unwrap(), 4);
        assert_eq!(bound_caterpillar(5, 3, 3, 2).unwrap(), 5);
        assert_eq!(bound_caterpillar(50, 10, 10, 15).unwrap(), 179);
    }

    #[test]
    fn lobster_examples() {
        assert_eq!(bound_lobster(4, 2, 2, 2).unwrap(), 3);
        assert_eq!(bound_lobster(5, 2, 2, 2).unwrap(), 4);
        assert_eq!(bound_lobster(55, 3, 3, 10).unwrap(), 46);
        assert_eq!(bound_lobster(2, 1, 0, 5).unwrap(), 1);
    }

    #[test]
    fn prior_examples() {
        assert_eq!(bound_prior_forest(51, 1, 15, Some(2)), 13);
        assert_eq!(bound_prior_forest(4, 1, 10, Some(55)), 17);
        assert_eq!(bound_prior_forest(0, 3, 1, None), 3);
        // ceiling of a negative quotient rounds toward zero
        assert_eq!(bound_prior_forest(0, 2, 5, None), 2);
        assert_eq!(bound_prior_forest(1, 1, 1, Some(1)), 1);
    }

    #[test]
    fn domain_errors() {
        assert!(bound_caterpillar(0, 2, 1, 1).is_err());
        assert!(bound_caterpillar(3, 1, 1, 1).is_err());
        assert!(bound_caterpillar(3, 2, 3, 1).is_err());
        assert!(bound_caterpillar(1, 3, 2, 1).is_err());
        assert!(bound_caterpillar(3, 2, 2, 0).is_err());
        assert!(bound_lobster(1, 1, 0, 1).is_err());
        assert!(bound_lobster(3, 0, 0, 1).is_err());
        assert!(bound_lobster(3, 1, 2, 1).is_err());
    }

    #[test]
    fn star_stays_at_one() {
        for t in 1..=3 {
            assert_eq!(bound_caterpillar(1, 3, 3, t).unwrap(), 1);
            let f = Family::Caterpillar { n: 1, k: 3, l: 3 };
            let r = compare(f, t, true, PrimeField::default(), &Limits::default()).unwrap();
            assert_eq!(r.exact_depth.value(), Some(1));
            assert_eq!(r.exact_sdepth.value(), Some(1));
        }
    }

    #[test]
    fn compare_uses_graph_statistics() {
        let limits = Limits::default();
        let f = PrimeField::default();
        let c = compare(Family::Caterpillar { n: 50, k: 10, l: 10 }, 15, false, f, &limits).unwrap();
        assert_eq!((c.new_bound, c.prior_bound()), (179, 13));
        let s = compare(Family::Lobster { r: 55, p: 2, q: 2 }, 10, false, f, &limits).unwrap();
        assert_eq!((s.new_bound, s.prior_bound()), (46, 17));
        assert_eq!(s.exact_depth, Exact::Skipped);
    }
}
