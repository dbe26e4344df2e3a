//! Exact `depth(S/I)` through projective dimension.
//!
//! Squarefree ideals go straight to lcm-lattice homology. Other ideals are
//! either polarized first, or reduced to squarefree ideals by the identity
//! `depth S/I = min { depth S/√(I : x^a) : 0 ≤ a_j < ρ_j, x^a ∉ I }`
//! where `ρ_j` is the largest exponent of `x_j` among the generators.

use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::betti::to_masks;
use crate::error::{Error, ResourceError, Result};
use crate::exec::{try_map_vec, Limits};
use crate::field::PrimeField;
use crate::ideal::MonomialIdeal;
use crate::koszul::{proj_dim, proj_dim_above, split, MaskIdeal, MAX_MASK_VARS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DepthMethod {
    LcmLatticeHomology,
    HochsterOracle,
    LocalCohomologyReduction,
}

/// How non-squarefree ideals are handled; squarefree input ignores this.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DepthStrategy {
    /// Radical reduction for non-squarefree ideals.
    #[default]
    Auto,
    /// Polarize, then lattice homology on the squarefree image.
    Polarize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthResult {
    pub depth: usize,
    pub proj_dim: usize,
    pub ambient_size: usize,
    pub field_char: u64,
    pub method: DepthMethod,
}

impl DepthResult {
    pub fn auslander_buchsbaum_holds(&self) -> bool {
        self.depth + self.proj_dim == self.ambient_size
    }
}

pub fn depth_quotient(ideal: &MonomialIdeal, field: PrimeField, limits: &Limits) -> Result<DepthResult> {
    depth_quotient_with(ideal, field, limits, DepthStrategy::Auto)
}

pub fn depth_quotient_with(
    ideal: &MonomialIdeal,
    field: PrimeField,
    limits: &Limits,
    strategy: DepthStrategy,
) -> Result<DepthResult> {
    let n = ideal.nvars();
    if ideal.is_unit() {
        return Err(Error::Invalid("S/I is zero for the unit ideal".into()));
    }
    let result = |pd: usize, method| DepthResult {
        depth: n - pd,
        proj_dim: pd,
        ambient_size: n,
        field_char: field.char(),
        method,
    };
    if ideal.is_zero() {
        return Ok(result(0, DepthMethod::LcmLatticeHomology));
    }
    if ideal.is_squarefree() {
        let masks = to_masks(ideal, "lcm lattice homology")?;
        return Ok(result(proj_dim(&masks, field, limits)?, DepthMethod::LcmLatticeHomology));
    }
    match strategy {
        DepthStrategy::Polarize => {
            let pol = ideal.polarization()?;
            let masks = to_masks(&pol.ideal, "lcm lattice homology")?;
            Ok(result(proj_dim(&masks, field, limits)?, DepthMethod::LcmLatticeHomology))
        }
        DepthStrategy::Auto => {
            let rads = radicals(ideal, limits)?;
            Ok(result(
                max_proj_dim(&rads, field, limits)?,
                DepthMethod::LocalCohomologyReduction,
            ))
        }
    }
}

/// Distinct radicals `√(I : x^a)` over `0 ≤ a_j < ρ_j`, `x^a ∉ I`.
pub(crate) fn radicals(ideal: &MonomialIdeal, limits: &Limits) -> Result<Vec<MaskIdeal>> {
    let n = ideal.nvars();
    if n > MAX_MASK_VARS {
        return Err(ResourceError::TooManyVariables {
            what: "radical reduction",
            max: MAX_MASK_VARS,
            got: n,
        }
        .into());
    }
    let rho = ideal.max_exponents();
    let top = rho.iter().copied().max().unwrap_or(0) as usize;
    // levels[e-1] of a generator = variables with exponent ≥ e
    let gen_levels: Vec<Vec<u64>> = ideal
        .gens()
        .iter()
        .map(|g| {
            (1..=top as u32)
                .map(|e| {
                    g.exps()
                        .iter()
                        .enumerate()
                        .filter(|(_, &x)| x >= e)
                        .fold(0u64, |m, (j, _)| m | 1 << j)
                })
                .collect()
        })
        .collect();
    // generators grouped by their last variable, which decides when to test them
    let mut by_last: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, g) in ideal.gens().iter().enumerate() {
        if let Some(last) = g.support().last() {
            by_last[last].push(k);
        }
    }

    let mut walk = RadicalWalk {
        n,
        rho: &rho,
        gen_levels: &gen_levels,
        by_last: &by_last,
        levels: vec![0u64; top],
        seen: HashSet::new(),
        visited: 0,
        limits,
    };
    walk.descend(0)?;
    let mut out: Vec<MaskIdeal> = walk
        .seen
        .into_iter()
        .map(|gens| MaskIdeal { nvars: n, gens })
        .collect();
    out.sort_unstable_by(|a, b| a.gens.cmp(&b.gens));
    Ok(out)
}

struct RadicalWalk<'a> {
    n: usize,
    rho: &'a [u32],
    gen_levels: &'a [Vec<u64>],
    by_last: &'a [Vec<usize>],
    /// levels[e-1] = variables j with a_j ≥ e
    levels: Vec<u64>,
    seen: HashSet<Vec<u64>>,
    visited: usize,
    limits: &'a Limits,
}

impl RadicalWalk<'_> {
    fn divides_a(&self, k: usize) -> bool {
        self.gen_levels[k]
            .iter()
            .zip(&self.levels)
            .all(|(g, l)| g & !l == 0)
    }

    fn descend(&mut self, j: usize) -> Result<()> {
        if j == self.n {
            self.visited += 1;
            if self.visited > self.limits.degree_cap {
                return Err(ResourceError::DegreeCap {
                    cap: self.limits.degree_cap,
                }
                .into());
            }
            if self.visited.is_multiple_of(4096) {
                self.limits.check_deadline()?;
            }
            let rad: Vec<u64> = self
                .gen_levels
                .iter()
                .map(|gl| gl.iter().zip(&self.levels).fold(0, |m, (g, l)| m | (g & !l)))
                .collect();
            // anything through a linear generator is redundant; drop it
            // before the quadratic minimalization
            let linear = rad.iter().filter(|m| m.count_ones() == 1).fold(0u64, |a, &m| a | m);
            let rest = rad.into_iter().filter(|&m| m & linear == 0 || m.count_ones() == 1);
            self.seen.insert(MaskIdeal::new(self.n, rest.collect()).gens);
            return Ok(());
        }
        let max_a = self.rho[j].saturating_sub(1);
        let mut a = 0;
        loop {
            let blocked = self.by_last[j].iter().any(|&k| self.divides_a(k));
            if blocked {
                break;
            }
            self.descend(j + 1)?;
            if a == max_a {
                break;
            }
            a += 1;
            self.levels[a as usize - 1] |= 1 << j;
        }
        for e in 0..a as usize {
            self.levels[e] &= !(1 << j);
        }
        Ok(())
    }
}

/// Largest `pd` among the radicals. Each one is only asked whether it beats
/// the running maximum, and radicals with many linear generators go first
/// since they tend to reach high `pd` cheaply.
fn max_proj_dim(rads: &[MaskIdeal], field: PrimeField, limits: &Limits) -> Result<usize> {
    let mut keyed: Vec<(usize, usize, &MaskIdeal)> = rads
        .iter()
        .map(|r| {
            let s = split(r);
            (s.linear, s.pd_upper_bound(), r)
        })
        .collect();
    keyed.sort_by(|a, b| b.0.cmp(&a.0).then(b.1.cmp(&a.1)).then_with(|| a.2.gens.cmp(&b.2.gens)));
    let best = AtomicUsize::new(0);
    try_map_vec(limits.mode, &keyed, |&(_, ub, r)| {
        let floor = best.load(Ordering::Relaxed);
        if ub <= floor {
            return Ok(());
        }
        if let Some(pd) = proj_dim_above(r, field, limits, floor)? {
            best.fetch_max(pd, Ordering::Relaxed);
        }
        Ok::<(), Error>(())
    })?;
    Ok(best.into_inner())
}
