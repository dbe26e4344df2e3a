//! Grid verification: evaluate the bounds, and optionally the exact
//! invariants, over a box of family parameters and powers.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::bounds::{compare, BoundReport, Exact};
use crate::error::{Error, Result};
use crate::exec::Limits;
use crate::field::PrimeField;
use crate::graph::Family;

pub const DEFAULT_CELL_BUDGET: Duration = Duration::from_secs(600);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Caterpillar,
    Lobster,
}

/// A box of parameters. For caterpillars the axes are `(n, k, l)`, for
/// lobsters `(r, p, q)`. The third axis defaults to every value the first
/// two allow and is clipped to that range otherwise.
#[derive(Debug, Clone)]
pub struct GridSpec {
    pub kind: FamilyKind,
    pub first: RangeInclusive<usize>,
    pub second: RangeInclusive<usize>,
    pub third: Option<RangeInclusive<usize>>,
    pub t: RangeInclusive<usize>,
    pub compute_exact: bool,
    pub cell_budget: Duration,
    pub field: PrimeField,
    pub seed: u64,
    pub workers: usize,
}

impl GridSpec {
    pub fn new(
        kind: FamilyKind,
        first: RangeInclusive<usize>,
        second: RangeInclusive<usize>,
        t: RangeInclusive<usize>,
    ) -> GridSpec {
        GridSpec {
            kind,
            first,
            second,
            third: None,
            t,
            compute_exact: false,
            cell_budget: DEFAULT_CELL_BUDGET,
            field: PrimeField::default(),
            seed: 0,
            workers: 0,
        }
    }

    /// Every valid family member in the box, in parameter order.
    pub fn families(&self) -> Vec<Family> {
        let mut out = Vec::new();
        for a in self.first.clone() {
            for b in self.second.clone() {
                let valid = match self.kind {
                    FamilyKind::Caterpillar if a == 1 => b..=b,
                    FamilyKind::Caterpillar => 1..=b,
                    FamilyKind::Lobster => 0..=b,
                };
                let (lo, hi) = match &self.third {
                    Some(r) => (*valid.start().max(r.start()), *valid.end().min(r.end())),
                    None => (*valid.start(), *valid.end()),
                };
                for c in lo..=hi {
                    let f = match self.kind {
                        FamilyKind::Caterpillar => Family::Caterpillar { n: a, k: b, l: c },
                        FamilyKind::Lobster => Family::Lobster { r: a, p: b, q: c },
                    };
                    if f.build().is_ok() {
                        out.push(f);
                    }
                }
            }
        }
        out
    }

    fn cells(&self) -> Result<Vec<(Family, usize)>> {
        if self.t.is_empty() || *self.t.start() == 0 {
            return Err(Error::ParameterDomain(format!(
                "t range {}..{} must be nonempty and start at 1 or more",
                self.t.start(),
                self.t.end()
            )));
        }
        let families = self.families();
        if families.is_empty() {
            return Err(Error::ParameterDomain(
                "the parameter ranges contain no valid family member".into(),
            ));
        }
        Ok(families
            .into_iter()
            .flat_map(|f| self.t.clone().map(move |t| (f, t)))
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Ok,
    BoundViolated,
    Capped,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::BoundViolated => "bound_violated",
            RowStatus::Capped => "capped",
        }
    }

    fn of(r: &BoundReport) -> RowStatus {
        if !r.is_sound() {
            RowStatus::BoundViolated
        } else if r.exact_depth.is_capped() || r.exact_sdepth.is_capped() {
            RowStatus::Capped
        } else {
            RowStatus::Ok
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridRow {
    #[serde(flatten)]
    pub report: BoundReport,
    pub status: RowStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub tool_version: String,
    pub seed: u64,
    pub field_char: u64,
    pub rows: Vec<GridRow>,
}

impl VerifyReport {
    pub fn violations(&self) -> usize {
        self.count(RowStatus::BoundViolated)
    }

    pub fn capped(&self) -> usize {
        self.count(RowStatus::Capped)
    }

    fn count(&self, s: RowStatus) -> usize {
        self.rows.iter().filter(|r| r.status == s).count()
    }

    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("family,n,k,l,r,p,q,t,new_bound,diam_bound,nearleaf_bound,depth,sdepth,status\n");
        let exact = |e: &Exact| e.value().map(|v| v.to_string()).unwrap_or_default();
        for row in &self.rows {
            let r = &row.report;
            let params = match r.family {
                Family::Caterpillar { n, k, l } => format!("{n},{k},{l},,,"),
                Family::Lobster { r, p, q } => format!(",,,{r},{p},{q}"),
            };
            writeln!(
                out,
                "{},{params},{},{},{},{},{},{},{}",
                r.family.kind(),
                r.t,
                r.new_bound,
                r.prior_diam_bound,
                r.prior_nearleaf_bound,
                exact(&r.exact_depth),
                exact(&r.exact_sdepth),
                row.status.as_str()
            )
            .expect("writing to a String cannot fail");
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data always serializes");
        s.push('\n');
        s
    }
}

/// Evaluates every cell of the grid. Cells run concurrently on up to
/// `workers` threads (0 = all cores) and each gets its own wall-clock budget;
/// rows come back sorted by parameters whatever the completion order.
pub fn run_grid(spec: &GridSpec, limits: &Limits) -> Result<VerifyReport> {
    let cells = spec.cells()?;
    let eval = |&(family, t): &(Family, usize)| -> Result<GridRow> {
        let cell_limits = limits.clone().with_budget(spec.cell_budget);
        let report = compare(family, t, spec.compute_exact, spec.field, &cell_limits)?;
        Ok(GridRow {
            status: RowStatus::of(&report),
            report,
        })
    };
    let rows = evaluate(spec, limits, &cells, eval)?;
    Ok(VerifyReport {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        seed: spec.seed,
        field_char: spec.field.char(),
        rows,
    })
}

#[cfg(feature = "parallel")]
fn evaluate<F>(spec: &GridSpec, limits: &Limits, cells: &[(Family, usize)], eval: F) -> Result<Vec<GridRow>>
where
    F: Fn(&(Family, usize)) -> Result<GridRow> + Sync + Send,
{
    use crate::exec::ExecMode;
    use rayon::prelude::*;

    if limits.mode == ExecMode::Sequential {
        return cells.iter().map(eval).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers)
        .build()
        .map_err(|e| Error::Invalid(format!("cannot start worker pool: {e}")))?;
    pool.install(|| cells.par_iter().map(eval).collect())
}

#[cfg(not(feature = "parallel"))]
fn evaluate<F>(_: &GridSpec, _: &Limits, cells: &[(Family, usize)], eval: F) -> Result<Vec<GridRow>>
where
    F: Fn(&(Family, usize)) -> Result<GridRow>,
{
    cells.iter().map(eval).collect()
}
