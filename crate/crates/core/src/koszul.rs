//! Multigraded Betti numbers of squarefree quotients in one lcm-lattice
//! degree, from the Koszul complex of `S/J` restricted to that degree.
//!
//! In squarefree degree `σ` with `|σ| = m`, the complex has one basis vector
//! per independent set `G ⊆ σ` (a set containing no generator), sitting in
//! homological degree `m - |G|`; the differential sends `G` to the signed
//! sum of its one-element extensions. With `N_s` independent sets of size
//! `s` and `R_s` the rank of the map from size `s` to size `s + 1`,
//! `β_{m-s,σ} = N_s - R_s - R_{s-1}`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{ResourceError, Result};
use crate::exec::{try_map_vec, Limits};
use crate::field::{sparse_rank, PrimeField, SparseCol};
use crate::lattice::mask_closure;

pub(crate) const MAX_MASK_VARS: usize = 64;

/// A squarefree monomial ideal on at most 64 variables, as minimal supports.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct MaskIdeal {
    pub nvars: usize,
    pub gens: Vec<u64>,
}

impl MaskIdeal {
    /// Minimalizes and sorts the supports.
    pub fn new(nvars: usize, mut gens: Vec<u64>) -> MaskIdeal {
        gens.sort_unstable_by_key(|&g| (g.count_ones(), g));
        gens.dedup();
        let mut kept: Vec<u64> = Vec::with_capacity(gens.len());
        for g in gens {
            if !kept.iter().any(|&k| k & !g == 0) {
                kept.push(g);
            }
        }
        kept.sort_unstable();
        MaskIdeal { nvars, gens: kept }
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first() == Some(&0)
    }
}

/// Independent sets inside one lattice degree, bucketed by size.
struct Faces {
    by_size: Vec<Vec<u64>>,
    index: Vec<HashMap<u64, u32>>,
}

fn faces_within(sigma: u64, gens: &[u64], max_size: usize) -> Faces {
    // only generators inside σ can block a subset of σ
    let inside: Vec<u64> = gens.iter().copied().filter(|&g| g & !sigma == 0).collect();
    let bits: Vec<u32> = (0..64).filter(|&j| sigma >> j & 1 == 1).collect();
    let mut by_var: Vec<Vec<u64>> = vec![Vec::new(); 64];
    for &g in &inside {
        for &j in &bits {
            if g >> j & 1 == 1 {
                by_var[j as usize].push(g);
            }
        }
    }
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); max_size + 1];
    by_size[0].push(0);
    let mut stack: Vec<(u64, usize, usize)> = vec![(0, 0, 0)];
    while let Some((face, start, size)) = stack.pop() {
        if size == max_size {
            continue;
        }
        for (pos, &j) in bits.iter().enumerate().skip(start) {
            let next = face | 1 << j;
            if by_var[j as usize].iter().all(|&g| g & !next != 0) {
                by_size[size + 1].push(next);
                stack.push((next, pos + 1, size + 1));
            }
        }
    }
    let index = by_size
        .iter_mut()
        .map(|v| {
            v.sort_unstable();
            v.iter().enumerate().map(|(i, &f)| (f, i as u32)).collect()
        })
        .collect();
    Faces { by_size, index }
}

/// Rank of the extension map from size-`s` independent sets to size `s+1`.
fn extension_rank(field: PrimeField, sigma: u64, faces: &Faces, s: usize) -> usize {
    if s + 1 >= faces.by_size.len() || faces.by_size[s + 1].is_empty() {
        return 0;
    }
    let minus_one = field.reduce(-1);
    let target = &faces.index[s + 1];
    let cols: Vec<SparseCol> = faces.by_size[s]
        .iter()
        .map(|&g| {
            let mut col: SparseCol = Vec::new();
            let mut rest = sigma & !g;
            while rest != 0 {
                let j = rest.trailing_zeros();
                rest &= rest - 1;
                if let Some(&row) = target.get(&(g | 1 << j)) {
                    let below = (g & ((1u64 << j) - 1)).count_ones();
                    col.push((row, if below.is_multiple_of(2) { 1 } else { minus_one }));
                }
            }
            col.sort_unstable_by_key(|e| e.0);
            col
        })
        .collect();
    sparse_rank(field, cols)
}

struct DegreeHomology {
    field: PrimeField,
    sigma: u64,
    faces: Faces,
    ranks: Vec<Option<usize>>,
}

impl DegreeHomology {
    fn new(field: PrimeField, sigma: u64, gens: &[u64], max_size: usize) -> Self {
        let faces = faces_within(sigma, gens, max_size);
        let len = faces.by_size.len();
        DegreeHomology {
            field,
            sigma,
            faces,
            ranks: vec![None; len],
        }
    }

    fn rank(&mut self, s: usize) -> usize {
        if let Some(r) = self.ranks[s] {
            return r;
        }
        let r = extension_rank(self.field, self.sigma, &self.faces, s);
        self.ranks[s] = Some(r);
        r
    }

    /// `β_{m-s,σ}`; needs faces up to size `s + 1`.
    fn betti_at_size(&mut self, s: usize) -> usize {
        let n = self.faces.by_size[s].len();
        let lower = if s == 0 { 0 } else { self.rank(s - 1) };
        n - self.rank(s) - lower
    }
}

/// Every nonzero `β_{i,σ}` with `i ≥ 1`, for `σ` ranging over the lattice.
pub(crate) fn betti_masks(
    ideal: &MaskIdeal,
    field: PrimeField,
    limits: &Limits,
) -> Result<Vec<(usize, u64, usize)>> {
    if ideal.gens.is_empty() || ideal.is_unit() {
        return Ok(Vec::new());
    }
    let lattice = mask_closure(&ideal.gens, limits)?;
    let per: Vec<Vec<(usize, u64, usize)>> = try_map_vec(limits.mode, &lattice, |&sigma| {
        limits.check_deadline()?;
        let m = sigma.count_ones() as usize;
        let mut h = DegreeHomology::new(field, sigma, &ideal.gens, m);
        let mut out = Vec::new();
        for i in 1..=m {
            let b = h.betti_at_size(m - i);
            if b > 0 {
                out.push((i, sigma, b));
            }
        }
        Ok::<_, ResourceError>(out)
    })?;
    Ok(per.into_iter().flatten().collect())
}

/// `max(pd(S/J), floor)` for `J ≠ 0`, searching lattice degrees from the
/// top and only testing homological degrees above the running maximum.
fn proj_dim_connected(ideal: &MaskIdeal, field: PrimeField, limits: &Limits, floor: usize) -> Result<usize> {
    if ideal.gens.is_empty() {
        return Ok(floor);
    }
    let lattice = mask_closure(&ideal.gens, limits)?;
    let best = AtomicUsize::new(floor.max(1));
    let mut end = lattice.len();
    while end > 0 {
        let m = lattice[end - 1].count_ones() as usize;
        if m <= best.load(Ordering::Relaxed) {
            break;
        }
        let start = lattice[..end].partition_point(|s| (s.count_ones() as usize) < m);
        let level = &lattice[start..end];
        try_map_vec(limits.mode, level, |&sigma| {
            limits.check_deadline()?;
            let floor = best.load(Ordering::Relaxed);
            let ub = m.min(ideal.gens.iter().filter(|&&g| g & !sigma == 0).count());
            if ub <= floor {
                return Ok::<(), ResourceError>(());
            }
            let mut h = DegreeHomology::new(field, sigma, &ideal.gens, m - floor);
            for i in (floor + 1..=ub).rev() {
                if h.betti_at_size(m - i) > 0 {
                    best.fetch_max(i, Ordering::Relaxed);
                    break;
                }
            }
            Ok(())
        })?;
        end = start;
    }
    Ok(best.into_inner())
}

/// Splits off variables that are generators, then connected components;
/// each component is renumbered onto its own low bits.
pub(crate) struct Split {
    pub linear: usize,
    pub components: Vec<MaskIdeal>,
}

pub(crate) fn split(ideal: &MaskIdeal) -> Split {
    let linear_mask: u64 = ideal
        .gens
        .iter()
        .filter(|g| g.count_ones() == 1)
        .fold(0, |a, &g| a | g);
    let rest: Vec<u64> = ideal
        .gens
        .iter()
        .copied()
        .filter(|g| g.count_ones() > 1)
        .collect();
    let mut comps: Vec<(u64, Vec<u64>)> = Vec::new();
    for g in rest {
        let mut merged = (g, vec![g]);
        comps.retain_mut(|(supp, gs)| {
            if *supp & merged.0 != 0 {
                merged.0 |= *supp;
                merged.1.append(gs);
                false
            } else {
                true
            }
        });
        comps.push(merged);
    }
    comps.sort_unstable_by_key(|c| c.0);
    let components = comps
        .into_iter()
        .map(|(supp, gs)| {
            let bits: Vec<u32> = (0..64).filter(|&j| supp >> j & 1 == 1).collect();
            let remap = |g: u64| {
                bits.iter()
                    .enumerate()
                    .filter(|(_, &b)| g >> b & 1 == 1)
                    .fold(0u64, |a, (k, _)| a | 1 << k)
            };
            MaskIdeal::new(bits.len(), gs.into_iter().map(remap).collect())
        })
        .collect();
    Split {
        linear: linear_mask.count_ones() as usize,
        components,
    }
}

impl Split {
    /// Cheap upper bound on `pd`: a component's resolution is no longer
    /// than its variable count or its generator count.
    pub fn pd_upper_bound(&self) -> usize {
        self.linear
            + self
                .components
                .iter()
                .map(|c| c.nvars.min(c.gens.len()))
                .sum::<usize>()
    }
}

/// `pd(S/J)`: additive over the split pieces.
pub(crate) fn proj_dim(ideal: &MaskIdeal, field: PrimeField, limits: &Limits) -> Result<usize> {
    Ok(proj_dim_above(ideal, field, limits, 0)?.unwrap_or(0))
}

/// `Some(pd(S/J))` when it exceeds `floor`, otherwise `None`.
pub(crate) fn proj_dim_above(
    ideal: &MaskIdeal,
    field: PrimeField,
    limits: &Limits,
    floor: usize,
) -> Result<Option<usize>> {
    let s = split(ideal);
    let ubs: Vec<usize> = s.components.iter().map(|c| c.nvars.min(c.gens.len())).collect();
    let mut pd = s.linear;
    let mut rest: usize = ubs.iter().sum();
    for (c, ub) in s.components.iter().zip(&ubs) {
        rest -= ub;
        // this component must beat what the others cannot make up
        let need = floor.saturating_sub(pd + rest);
        let got = proj_dim_connected(c, field, limits, need)?;
        if need > 0 && got <= need {
            return Ok(None);
        }
        pd += got;
    }
    Ok((pd > floor || (floor == 0 && pd == 0)).then_some(pd))
}
