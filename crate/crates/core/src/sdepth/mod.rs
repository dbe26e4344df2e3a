//! Exact Stanley depth of `S/I` through interval partitions of the
//! characteristic poset, with certificates that can be checked on their own.

mod counting;
mod poset;
mod search;
mod verify;

pub use counting::{FilterRefutation, PolarRefutation};
pub use poset::{char_poset, CharPoset};
pub use verify::{check_certificate, verify_certificate, CertificateError};

use crate::error::Result;
use crate::exec::Limits;
use crate::ideal::MonomialIdeal;
use crate::monomial::VariableSet;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Interval {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

/// A partition of the characteristic poset into intervals `[a, b]` with
/// `ρ(b) ≥ claimed_d`, witnessing `sdepth(S/I) ≥ claimed_d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StanleyCertificate {
    pub vars: VariableSet,
    pub g: Vec<u32>,
    pub claimed_d: usize,
    pub intervals: Vec<Interval>,
}

impl StanleyCertificate {
    /// The smallest `ρ(b)` over the intervals.
    pub fn min_rho(&self) -> usize {
        self.intervals
            .iter()
            .map(|iv| iv.b.iter().zip(&self.g).filter(|(b, g)| b == g).count())
            .min()
            .unwrap_or(self.g.len())
    }
}

/// Why no partition reaches the requested `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// No point has `ρ ≥ d`, so no interval top qualifies.
    RhoBound { max_rho: usize },
    /// The interval counts forced on a Boolean filter go negative.
    FilterCount(FilterRefutation),
    /// The same count on a filter of the polarized poset.
    PolarizedFilterCount(PolarRefutation),
    /// Backtracking over every admissible interval found no partition.
    ExhaustiveSearch { nodes: u64 },
}

#[derive(Debug, Clone)]
pub enum Decision {
    Feasible(StanleyCertificate),
    Infeasible(Refutation),
}

impl Decision {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Decision::Feasible(_))
    }
}

/// Filter size and rank depth for the polarized count: a cheap pass before
/// construction and a deeper one before exhaustive search.
const POLAR_SHALLOW: (usize, usize) = (2, 3);
const POLAR_DEEP: (usize, usize) = (3, 5);

fn certificate(p: &CharPoset, d: usize, part: search::Part) -> StanleyCertificate {
    let mut intervals: Vec<Interval> = part
        .into_iter()
        .map(|(a, b)| Interval {
            a: p.geo.decode(a),
            b: p.geo.decode(b),
        })
        .collect();
    intervals.sort();
    StanleyCertificate {
        vars: p.vars().clone(),
        g: p.g().to_vec(),
        claimed_d: d,
        intervals,
    }
}

/// Decides whether the poset has a partition with every `ρ(b) ≥ d`.
///
/// Feasibility is shown by construction; infeasibility by a rank bound, a
/// filter count (on the poset or on its polarization), or a completed
/// exhaustive search. A search that runs out
/// of budget is a resource error, never an answer.
pub fn sdepth_at_least(p: &CharPoset, d: usize, limits: &Limits) -> Result<Decision> {
    let all = p.geo.all_live();
    if d == 0 {
        let part = p.points.iter().map(|&x| (x, x)).collect();
        return Ok(Decision::Feasible(certificate(p, 0, part)));
    }
    let max_rho = p.max_rho();
    if max_rho < d {
        return Ok(Decision::Infeasible(Refutation::RhoBound { max_rho }));
    }
    limits.check_deadline()?;
    if let Some(r) = counting::filter_count_refutes(p, d, limits.mode) {
        return Ok(Decision::Infeasible(Refutation::FilterCount(r)));
    }
    let polar = |(size, rank): (usize, usize)| {
        (!p.is_boolean())
            .then(|| counting::polarized_count_refutes(p, d, size, rank, limits.mode))
            .flatten()
            .map(|r| Decision::Infeasible(Refutation::PolarizedFilterCount(r)))
    };
    if let Some(r) = polar(POLAR_SHALLOW) {
        return Ok(r);
    }
    let mut builder = search::Construct::new(&p.geo, limits);
    if let Some(part) = builder.solve(&p.points, all, d as i64)? {
        return Ok(Decision::Feasible(certificate(p, d, part)));
    }
    limits.check_deadline()?;
    if let Some(r) = polar(POLAR_DEEP) {
        return Ok(r);
    }
    let out = search::exact(&p.geo, &p.points, all, d as i64, limits.search_nodes, limits)?;
    Ok(match out.part {
        Some(part) => Decision::Feasible(certificate(p, d, part)),
        None => Decision::Infeasible(Refutation::ExhaustiveSearch { nodes: out.nodes }),
    })
}

#[derive(Debug, Clone)]
pub struct SdepthResult {
    pub sdepth: usize,
    pub certificate: StanleyCertificate,
    /// Why `sdepth + 1` fails.
    pub refutation: Refutation,
}

/// The largest feasible `d`, searching upward from `hint` (or downward when
/// `hint` itself is infeasible).
pub fn sdepth_quotient(ideal: &MonomialIdeal, hint: Option<usize>, limits: &Limits) -> Result<SdepthResult> {
    let p = char_poset(ideal, limits)?;
    sdepth_of_poset(&p, hint, limits)
}

pub fn sdepth_of_poset(p: &CharPoset, hint: Option<usize>, limits: &Limits) -> Result<SdepthResult> {
    let n = p.g().len();
    let mut d = hint.unwrap_or(0).min(n);
    match sdepth_at_least(p, d, limits)? {
        Decision::Feasible(mut cert) => loop {
            match sdepth_at_least(p, d + 1, limits)? {
                Decision::Feasible(c) => {
                    cert = c;
                    d += 1;
                }
                Decision::Infeasible(refutation) => {
                    return Ok(SdepthResult {
                        sdepth: d,
                        certificate: cert,
                        refutation,
                    })
                }
            }
        },
        Decision::Infeasible(mut refutation) => loop {
            d -= 1;
            match sdepth_at_least(p, d, limits)? {
                Decision::Feasible(cert) => {
                    return Ok(SdepthResult {
                        sdepth: d,
                        certificate: cert,
                        refutation,
                    })
                }
                Decision::Infeasible(r) => refutation = r,
            }
        },
    }
}
