//! A necessary condition for `sdepth ≥ d`, checked on Boolean filters.
//!
//! Take a point `f` with `g - f ∈ {0,1}^n`. The points above `f` form a
//! simplicial complex `K` on the coordinates where `f_j = g_j - 1`, and any
//! admissible partition restricts to a partition of `K` with tops of size at
//! least `d' = d - ρ(f)`. Truncating to tops of size exactly `d'` and
//! counting gives `Σ_j (-1)^{k-j} C(d'-j, k-j) α_j ≥ 0` for `0 ≤ k ≤ d'`,
//! where `α_j` counts faces of size `j`.

use crate::exec::{map_vec, ExecMode};

use super::poset::Geometry;
use super::CharPoset;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterRefutation {
    /// Bottom of the filter.
    pub filter: Vec<u32>,
    /// The rank `k` whose interval count would be negative.
    pub rank: usize,
    pub deficit: i128,
}

/// Level masks: `levels[e-1]` holds the coordinates with value `≥ e`.
fn levels(geo: &Geometry, p: u64, top: usize) -> Vec<u64> {
    let mut out = vec![0u64; top];
    for j in 0..geo.nvars() {
        for slot in out.iter_mut().take(geo.coord(p, j) as usize) {
            *slot |= 1 << j;
        }
    }
    out
}

fn binom(n: i128, k: i128) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// First refuting filter in poset order, if any.
pub(crate) fn filter_count_refutes(p: &CharPoset, d: usize, mode: ExecMode) -> Option<FilterRefutation> {
    let geo = &p.geo;
    let top = geo.g.iter().copied().max().unwrap_or(1) as usize;
    let live = geo.all_live();
    let lv: Vec<Vec<u64>> = p.points.iter().map(|&q| levels(geo, q, top)).collect();
    let rho: Vec<usize> = p.points.iter().map(|&q| geo.rho(q, live)).collect();
    let candidates: Vec<usize> = (0..p.points.len())
        .filter(|&i| {
            let q = p.points[i];
            rho[i] < d && (0..geo.nvars()).all(|j| geo.g[j] - geo.coord(q, j) <= 1)
        })
        .collect();
    let found = map_vec(mode, &candidates, |&fi| {
        let dd = d - rho[fi];
        let mut alpha = vec![0i128; dd + 1];
        for (qi, ql) in lv.iter().enumerate() {
            if lv[fi].iter().zip(ql).all(|(f, q)| f & !q == 0) {
                let size = rho[qi] - rho[fi];
                if size <= dd {
                    alpha[size] += 1;
                }
            }
        }
        first_deficit(&alpha, dd)
    });
    candidates
        .iter()
        .zip(found)
        .find_map(|(&fi, r)| {
            r.map(|(rank, deficit)| FilterRefutation {
                filter: geo.decode(p.points[fi]),
                rank,
                deficit,
            })
        })
}

/// A filter-count refutation found on the polarization of the ideal.
///
/// Polarization preserves `sdepth(S/I) - n`, so a Boolean filter of the
/// polarized poset whose counts go negative at `d + shift` rules out `d`
/// here. The polarized poset is never built: filters and their upper
/// neighbourhoods are enumerated on demand from the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarRefutation {
    /// Filter bottom as `(variable, copy)` pairs; copy 0 is the variable.
    pub filter: Vec<(usize, u32)>,
    pub rank: usize,
    pub deficit: i128,
}

/// The Boolean space of polarized variables `(j, c)` with `c < g_j`.
struct PolarSpace {
    elems: Vec<(usize, u32)>,
    /// Generators whose polarization contains each element.
    containing: Vec<Vec<u32>>,
    /// Polarized generator sizes.
    sizes: Vec<u32>,
}

impl PolarSpace {
    fn new(geo: &Geometry, gen_levels: &[Vec<u64>]) -> Option<PolarSpace> {
        let elems: Vec<(usize, u32)> = (0..geo.nvars())
            .flat_map(|j| (0..geo.g[j]).map(move |c| (j, c)))
            .collect();
        if elems.len() > 128 {
            return None;
        }
        let containing = elems
            .iter()
            .map(|&(j, c)| {
                gen_levels
                    .iter()
                    .enumerate()
                    .filter(|(_, gl)| gl.get(c as usize).is_some_and(|m| m >> j & 1 == 1))
                    .map(|(k, _)| k as u32)
                    .collect()
            })
            .collect();
        let sizes = gen_levels
            .iter()
            .map(|gl| gl.iter().map(|m| m.count_ones()).sum())
            .collect();
        Some(PolarSpace {
            elems,
            containing,
            sizes,
        })
    }

    /// Adds element `e`; false (with the change undone) if the set lands
    /// in the polarized ideal.
    fn add(&self, missing: &mut [u32], e: usize) -> bool {
        let mut hit = false;
        for &k in &self.containing[e] {
            missing[k as usize] -= 1;
            hit |= missing[k as usize] == 0;
        }
        if hit {
            self.remove(missing, e);
        }
        !hit
    }

    fn remove(&self, missing: &mut [u32], e: usize) {
        for &k in &self.containing[e] {
            missing[k as usize] += 1;
        }
    }

    /// Sets of at most `max_size` elements outside the ideal, smallest first.
    fn filters(&self, max_size: usize) -> Vec<u128> {
        let mut out = vec![0u128];
        let mut missing = self.sizes.clone();
        self.grow(&mut missing, 0, 0, max_size, &mut |s| out.push(s));
        out.sort_by_key(|s| (s.count_ones(), *s));
        out
    }

    fn grow(&self, missing: &mut [u32], set: u128, start: usize, left: usize, emit: &mut impl FnMut(u128)) {
        if left == 0 {
            return;
        }
        for e in start..self.elems.len() {
            if self.add(missing, e) {
                let next = set | 1 << e;
                emit(next);
                self.grow(missing, next, e + 1, left - 1, emit);
                self.remove(missing, e);
            }
        }
    }

    /// `α_j` for `j ≤ depth`: supersets of `f` outside the ideal with `j`
    /// extra elements.
    fn upper_counts(&self, f: u128, depth: usize) -> Vec<i128> {
        let mut missing = self.sizes.clone();
        for e in bits128(f) {
            let ok = self.add(&mut missing, e);
            debug_assert!(ok);
        }
        let mut alpha = vec![0i128; depth + 1];
        alpha[0] = 1;
        self.extend(&mut missing, f, 0, 0, depth, &mut alpha);
        alpha
    }

    fn extend(&self, missing: &mut [u32], f: u128, start: usize, level: usize, depth: usize, alpha: &mut [i128]) {
        if level == depth {
            return;
        }
        for e in start..self.elems.len() {
            if f >> e & 1 == 1 || !self.add(missing, e) {
                continue;
            }
            alpha[level + 1] += 1;
            self.extend(missing, f, e + 1, level + 1, depth, alpha);
            self.remove(missing, e);
        }
    }
}

fn bits128(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let j = m.trailing_zeros() as usize;
            m &= m - 1;
            j
        })
    })
}

/// The first negative count `Σ_j (-1)^{k-j} C(dd-j, k-j) α_j` with `k ≤ max`.
fn first_deficit(alpha: &[i128], dd: usize) -> Option<(usize, i128)> {
    (0..alpha.len()).find_map(|k| {
        let beta: i128 = (0..=k)
            .map(|j| {
                let sign = if (k - j) % 2 == 0 { 1 } else { -1 };
                sign * binom((dd - j) as i128, (k - j) as i128) * alpha[j]
            })
            .sum();
        (beta < 0).then_some((k, beta))
    })
}

/// Filter counting on the polarized poset, restricted to filters of at most
/// `max_filter` elements and ranks up to `max_rank` above them.
pub(crate) fn polarized_count_refutes(
    p: &CharPoset,
    d: usize,
    max_filter: usize,
    max_rank: usize,
    mode: ExecMode,
) -> Option<PolarRefutation> {
    let geo = &p.geo;
    let space = PolarSpace::new(geo, &p.gen_levels)?;
    let shift = space.elems.len() - geo.nvars();
    let target = d + shift;
    let filters: Vec<u128> = space
        .filters(max_filter)
        .into_iter()
        .filter(|f| (f.count_ones() as usize) < target)
        .collect();
    let found = map_vec(mode, &filters, |&f| {
        let dd = target - f.count_ones() as usize;
        let alpha = space.upper_counts(f, dd.min(max_rank));
        first_deficit(&alpha, dd)
    });
    filters.iter().zip(found).find_map(|(&f, r)| {
        r.map(|(rank, deficit)| PolarRefutation {
            filter: bits128(f).map(|e| space.elems[e]).collect(),
            rank,
            deficit,
        })
    })
}
