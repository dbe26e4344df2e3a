//! Interval partitions of (sub)posets of the box.
//!
//! A subproblem is a set of points (in absolute coordinates) together with
//! the `live` coordinates that may still vary inside an interval, and the
//! number `need` of live coordinates every interval top must have at their
//! maximum.
//!
//! [`Construct`] builds partitions by binary splits along one coordinate:
//! the bottom slice (where the coordinate is at its smallest value) loses
//! the coordinate, the rest keeps it. Coordinates along which the whole set
//! is a full column up to the top are peeled off first, each lowering
//! `need` by one, and small pieces go to [`exact`].

use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use crate::error::ResourceError;
use crate::exec::Limits;

use super::poset::{bits, Geometry};

/// Intervals `(a, b)` as point codes.
pub(crate) type Part = Vec<(u64, u64)>;

const LEAF_POINTS: usize = 48;
const FALLBACK_POINTS: usize = 400;
const LEAF_NODES: u64 = 100_000;
const SPLIT_TRIES: usize = 4;

type Key = (u64, i64, Vec<u64>);

pub(crate) struct Construct<'a> {
    geo: &'a Geometry,
    limits: &'a Limits,
    memo: HashMap<Key, Option<Rc<Part>>>,
    calls: u64,
}

impl<'a> Construct<'a> {
    pub fn new(geo: &'a Geometry, limits: &'a Limits) -> Self {
        Construct {
            geo,
            limits,
            memo: HashMap::new(),
            calls: 0,
        }
    }

    pub fn solve(&mut self, pts: &[u64], live: u64, need: i64) -> Result<Option<Part>, ResourceError> {
        Ok(self.go(pts.to_vec(), live, need)?.map(|p| p.as_ref().clone()))
    }

    fn go(&mut self, mut pts: Vec<u64>, mut live: u64, mut need: i64) -> Result<Option<Rc<Part>>, ResourceError> {
        self.calls += 1;
        if self.calls.is_multiple_of(256) {
            self.limits.check_deadline()?;
        }
        if need <= 0 || pts.is_empty() {
            return Ok(Some(Rc::new(pts.iter().map(|&p| (p, p)).collect())));
        }

        // peel full columns
        let mut lift = 0u64;
        while need > 0 {
            let Some((j, lo)) = self.product_coordinate(&pts, live) else {
                break;
            };
            pts.retain(|&p| self.geo.coord(p, j) == lo);
            live &= !(1 << j);
            need -= 1;
            lift += u64::from(self.geo.g[j] - lo) * self.geo.strides[j];
        }
        if lift != 0 {
            let base = self.go(pts, live, need)?;
            return Ok(base.map(|b| Rc::new(b.iter().map(|&(a, t)| (a, t + lift)).collect())));
        }

        pts.sort_unstable();
        let key: Key = (live, need, pts);
        if let Some(hit) = self.memo.get(&key) {
            return Ok(hit.clone());
        }
        let pts = &key.2;
        let result = self.split(pts, live, need)?;
        self.memo.insert(key, result.clone());
        Ok(result)
    }

    fn split(&mut self, pts: &[u64], live: u64, need: i64) -> Result<Option<Rc<Part>>, ResourceError> {
        let geo = self.geo;
        if pts.iter().map(|&p| geo.rho(p, live)).max().unwrap_or(0) < need as usize {
            return Ok(None);
        }
        if pts.len() <= LEAF_POINTS {
            return Ok(exact_or_none(geo, pts, live, need, LEAF_NODES, self.limits)?.map(Rc::new));
        }
        // coordinates with few points at the top are the hardest to use
        // later, so they are split first
        let mut order: Vec<(usize, usize, u32)> = bits(live)
            .filter_map(|j| {
                let lo = pts.iter().map(|&p| geo.coord(p, j)).min()?;
                let tops = pts.iter().filter(|&&p| geo.at_top(p, j)).count();
                (lo < geo.g[j]).then_some((tops, j, lo))
            })
            .collect();
        order.sort_unstable();
        for &(_, j, lo) in order.iter().take(SPLIT_TRIES) {
            let (bottom, upper): (Vec<u64>, Vec<u64>) = pts.iter().partition(|&&p| geo.coord(p, j) == lo);
            let Some(low) = self.go(bottom, live & !(1 << j), need)? else {
                continue;
            };
            let Some(high) = self.go(upper, live, need)? else {
                continue;
            };
            let mut part: Part = Vec::with_capacity(low.len() + high.len());
            part.extend(low.iter());
            part.extend(high.iter());
            return Ok(Some(Rc::new(part)));
        }
        if pts.len() <= FALLBACK_POINTS {
            return Ok(exact_or_none(geo, pts, live, need, LEAF_NODES, self.limits)?.map(Rc::new));
        }
        Ok(None)
    }

    /// A live coordinate `j` along which the set is `base × [lo, g_j]`.
    fn product_coordinate(&self, pts: &[u64], live: u64) -> Option<(usize, u32)> {
        let geo = self.geo;
        let set: HashSet<u64> = pts.iter().copied().collect();
        bits(live).find_map(|j| {
            let lo = pts.iter().map(|&p| geo.coord(p, j)).min()?;
            let span = u64::from(geo.g[j] - lo);
            let base: Vec<u64> = pts.iter().copied().filter(|&p| geo.coord(p, j) == lo).collect();
            let full = base.len() as u64 * (span + 1) == pts.len() as u64
                && base
                    .iter()
                    .all(|&p| (1..=span).all(|c| set.contains(&(p + c * geo.strides[j]))));
            full.then_some((j, lo))
        })
    }
}

/// [`exact`], with an exhausted node budget treated as "not found".
fn exact_or_none(
    geo: &Geometry,
    pts: &[u64],
    live: u64,
    need: i64,
    budget: u64,
    limits: &Limits,
) -> Result<Option<Part>, ResourceError> {
    match exact(geo, pts, live, need, budget, limits) {
        Err(ResourceError::SearchBudget) => Ok(None),
        other => other.map(|r| r.part),
    }
}

pub(crate) struct ExactOutcome {
    pub part: Option<Part>,
    pub nodes: u64,
}

struct Frame {
    bottom: usize,
    /// (top code, covered point positions)
    cands: Vec<(u64, Vec<u32>)>,
    next: usize,
}

/// Exhaustive backtracking. The lowest uncovered point whose `ρ` is below
/// `need` must be the bottom of its interval; every choice of top is tried.
/// Points with `ρ ≥ need` left uncovered become singletons.
///
/// Tops are of the form `b_j ∈ {a_j, g_j}`, which loses nothing because any
/// other interval can be cut into such slices with the same `ρ(b)`. On the
/// Boolean lattice, tops have exactly `need` live coordinates at the top.
pub(crate) fn exact(
    geo: &Geometry,
    pts: &[u64],
    live: u64,
    need: i64,
    budget: u64,
    limits: &Limits,
) -> Result<ExactOutcome, ResourceError> {
    let mut order: Vec<u64> = pts.to_vec();
    order.sort_unstable_by_key(|&p| (geo.rank(p), p));
    let pos: HashMap<u64, u32> = order.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
    let need_u = need.max(0) as usize;
    let primary: Vec<usize> = (0..order.len())
        .filter(|&i| geo.rho(order[i], live) < need_u)
        .collect();
    let live_boolean = bits(live).all(|j| geo.g[j] == 1);

    let mut covered = vec![false; order.len()];
    let mut stack: Vec<Frame> = Vec::new();
    let mut next_primary = 0usize;
    let mut nodes = 0u64;

    'outer: loop {
        while next_primary < primary.len() && covered[primary[next_primary]] {
            next_primary += 1;
        }
        if next_primary == primary.len() {
            let mut part: Part = Vec::new();
            for f in &stack {
                let (top, cells) = &f.cands[f.next - 1];
                debug_assert!(!cells.is_empty());
                part.push((order[f.bottom], *top));
            }
            for (i, &c) in covered.iter().enumerate() {
                if !c {
                    part.push((order[i], order[i]));
                }
            }
            return Ok(ExactOutcome {
                part: Some(part),
                nodes,
            });
        }
        nodes += 1;
        if nodes > budget {
            return Err(ResourceError::SearchBudget);
        }
        if nodes.is_multiple_of(1024) {
            limits.check_deadline()?;
        }
        let bottom = primary[next_primary];
        let k0 = need_u - geo.rho(order[bottom], live);
        let cands = candidates(geo, &order, &pos, bottom, live, k0, live_boolean);
        stack.push(Frame {
            bottom,
            cands,
            next: 0,
        });
        loop {
            let Some(top) = stack.last_mut() else {
                return Ok(ExactOutcome { part: None, nodes });
            };
            if top.next > 0 {
                for &c in &top.cands[top.next - 1].1 {
                    covered[c as usize] = false;
                }
            }
            while top.next < top.cands.len()
                && top.cands[top.next].1.iter().any(|&c| covered[c as usize])
            {
                top.next += 1;
            }
            if top.next < top.cands.len() {
                for &c in &top.cands[top.next].1 {
                    covered[c as usize] = true;
                }
                top.next += 1;
                next_primary = primary.partition_point(|&p| p <= top.bottom);
                continue 'outer;
            }
            stack.pop();
        }
    }
}

/// Admissible tops above `order[bottom]`, largest interval first.
fn candidates(
    geo: &Geometry,
    order: &[u64],
    pos: &HashMap<u64, u32>,
    bottom: usize,
    live: u64,
    k0: usize,
    live_boolean: bool,
) -> Vec<(u64, Vec<u32>)> {
    let a = order[bottom];
    // coordinates that can be raised to the top while staying in the set
    let free: Vec<usize> = bits(live)
        .filter(|&j| {
            let c = geo.coord(a, j);
            c < geo.g[j] && pos.contains_key(&(a + u64::from(geo.g[j] - c) * geo.strides[j]))
        })
        .collect();
    let max_size = if live_boolean { k0 } else { free.len() };
    let mut tops: Vec<(u64, usize)> = Vec::new();
    // grow J in increasing coordinate order, keeping a + J in the set
    let mut stack: Vec<(u64, usize, usize)> = vec![(a, 0, 0)];
    while let Some((t, start, size)) = stack.pop() {
        if size >= k0 {
            tops.push((t, size));
        }
        if size == max_size {
            continue;
        }
        for (i, &j) in free.iter().enumerate().skip(start) {
            let nt = t + u64::from(geo.g[j] - geo.coord(a, j)) * geo.strides[j];
            if pos.contains_key(&nt) {
                stack.push((nt, i + 1, size + 1));
            }
        }
    }
    tops.sort_unstable_by(|x, y| y.1.cmp(&x.1).then(x.0.cmp(&y.0)));
    tops.into_iter()
        .map(|(t, _)| (t, interval_cells(geo, pos, a, t)))
        .collect()
}

/// Positions of every point in `[a, b]`.
fn interval_cells(geo: &Geometry, pos: &HashMap<u64, u32>, a: u64, b: u64) -> Vec<u32> {
    let moving: Vec<(u64, u32, u32)> = (0..geo.nvars())
        .filter_map(|j| {
            let (lo, hi) = (geo.coord(a, j), geo.coord(b, j));
            (hi > lo).then_some((geo.strides[j], lo, hi))
        })
        .collect();
    let mut out = Vec::new();
    let mut offs = vec![0u32; moving.len()];
    loop {
        let code = a + moving
            .iter()
            .zip(&offs)
            .map(|(&(s, _, _), &o)| u64::from(o) * s)
            .sum::<u64>();
        out.push(pos[&code]);
        let mut k = 0;
        while k < moving.len() {
            let (_, lo, hi) = moving[k];
            if lo + offs[k] < hi {
                offs[k] += 1;
                break;
            }
            offs[k] = 0;
            k += 1;
        }
        if k == moving.len() {
            break;
        }
    }
    out
}
