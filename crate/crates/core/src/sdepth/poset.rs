use std::collections::HashMap;

use crate::error::{Error, ResourceError, Result};
use crate::exec::Limits;
use crate::ideal::MonomialIdeal;
use crate::monomial::VariableSet;

/// Mixed-radix encoding of the box `[0, g]`: a point `a` is stored as
/// `Σ a_j · stride_j`. When `g` is all ones this is the support bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Geometry {
    pub g: Vec<u32>,
    pub strides: Vec<u64>,
    pub boolean: bool,
}

impl Geometry {
    pub fn new(g: Vec<u32>) -> Result<Geometry> {
        let mut strides = Vec::with_capacity(g.len());
        let mut acc: u64 = 1;
        for &gj in &g {
            strides.push(acc);
            acc = acc.checked_mul(u64::from(gj) + 1).ok_or(ResourceError::TooManyVariables {
                what: "characteristic poset encoding",
                max: 64,
                got: g.len(),
            })?;
        }
        let boolean = g.iter().all(|&x| x == 1);
        Ok(Geometry { g, strides, boolean })
    }

    pub fn nvars(&self) -> usize {
        self.g.len()
    }

    #[inline]
    pub fn coord(&self, p: u64, j: usize) -> u32 {
        if self.boolean {
            (p >> j & 1) as u32
        } else {
            ((p / self.strides[j]) % (u64::from(self.g[j]) + 1)) as u32
        }
    }

    #[inline]
    pub fn at_top(&self, p: u64, j: usize) -> bool {
        self.coord(p, j) == self.g[j]
    }

    /// Number of coordinates in `live` sitting at their top value.
    #[inline]
    pub fn rho(&self, p: u64, live: u64) -> usize {
        if self.boolean {
            (p & live).count_ones() as usize
        } else {
            bits(live).filter(|&j| self.at_top(p, j)).count()
        }
    }

    /// Sum of coordinates, a linear extension of the componentwise order.
    pub fn rank(&self, p: u64) -> u64 {
        if self.boolean {
            u64::from(p.count_ones())
        } else {
            (0..self.nvars()).map(|j| u64::from(self.coord(p, j))).sum()
        }
    }

    pub fn decode(&self, p: u64) -> Vec<u32> {
        (0..self.nvars()).map(|j| self.coord(p, j)).collect()
    }

    pub fn encode(&self, a: &[u32]) -> u64 {
        a.iter()
            .zip(&self.strides)
            .map(|(&x, &s)| u64::from(x) * s)
            .sum()
    }

    pub fn all_live(&self) -> u64 {
        if self.nvars() == 64 {
            u64::MAX
        } else {
            (1u64 << self.nvars()) - 1
        }
    }
}

/// Indices of set bits, ascending.
pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let j = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(j)
        }
    })
}

/// The exponent vectors `a ≤ g` with `x^a ∉ I`, where `g_j` is the largest
/// exponent of `x_j` in a generator, raised to 1 for variables no generator
/// uses.
#[derive(Debug, Clone)]
pub struct CharPoset {
    vars: VariableSet,
    pub(crate) geo: Geometry,
    /// Sorted by `(rank, code)`.
    pub(crate) points: Vec<u64>,
    pub(crate) index: HashMap<u64, u32>,
    /// Per generator, `levels[e-1]` = variables with exponent `≥ e`.
    pub(crate) gen_levels: Vec<Vec<u64>>,
}

impl CharPoset {
    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn g(&self) -> &[u32] {
        &self.geo.g
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_boolean(&self) -> bool {
        self.geo.boolean
    }

    /// Every point as an exponent vector, lowest rank first.
    pub fn points(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        self.points.iter().map(|&p| self.geo.decode(p))
    }

    pub fn contains(&self, a: &[u32]) -> bool {
        a.len() == self.geo.nvars()
            && a.iter().zip(&self.geo.g).all(|(x, g)| x <= g)
            && self.index.contains_key(&self.geo.encode(a))
    }

    /// `ρ(b) = #{i : b_i = g_i}`.
    pub fn rho(&self, b: &[u32]) -> usize {
        b.iter().zip(&self.geo.g).filter(|(x, g)| x == g).count()
    }

    /// The largest `ρ` over the poset.
    pub fn max_rho(&self) -> usize {
        let live = self.geo.all_live();
        self.points
            .iter()
            .map(|&p| self.geo.rho(p, live))
            .max()
            .unwrap_or(0)
    }
}

pub fn char_poset(ideal: &MonomialIdeal, limits: &Limits) -> Result<CharPoset> {
    if ideal.is_unit() {
        return Err(Error::Invalid("S/I is zero for the unit ideal".into()));
    }
    let n = ideal.nvars();
    if n > 64 {
        return Err(ResourceError::TooManyVariables {
            what: "characteristic poset",
            max: 64,
            got: n,
        }
        .into());
    }
    let g: Vec<u32> = ideal.max_exponents().into_iter().map(|x| x.max(1)).collect();
    let geo = Geometry::new(g)?;
    let top = geo.g.iter().copied().max().unwrap_or(1) as usize;

    let gen_levels: Vec<Vec<u64>> = ideal
        .gens()
        .iter()
        .map(|m| {
            (1..=top as u32)
                .map(|e| {
                    m.exps()
                        .iter()
                        .enumerate()
                        .filter(|(_, &x)| x >= e)
                        .fold(0u64, |acc, (j, _)| acc | 1 << j)
                })
                .collect()
        })
        .collect();
    let mut by_last: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, m) in ideal.gens().iter().enumerate() {
        if let Some(last) = m.support().last() {
            by_last[last].push(k);
        }
    }

    let mut walk = Walk {
        geo: &geo,
        gen_levels: &gen_levels,
        by_last: &by_last,
        levels: vec![0; top],
        code: 0,
        out: Vec::new(),
        cap: limits.poset_cap,
    };
    walk.descend(0)?;
    let mut points = walk.out;
    points.sort_unstable_by_key(|&p| (geo.rank(p), p));
    let index = points.iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
    Ok(CharPoset {
        vars: ideal.vars().clone(),
        geo,
        points,
        index,
        gen_levels,
    })
}

/// Depth-first walk of the box that stops raising a coordinate as soon as
/// the monomial lands in the ideal.
struct Walk<'a> {
    geo: &'a Geometry,
    gen_levels: &'a [Vec<u64>],
    by_last: &'a [Vec<usize>],
    levels: Vec<u64>,
    code: u64,
    out: Vec<u64>,
    cap: usize,
}

impl Walk<'_> {
    fn descend(&mut self, j: usize) -> Result<(), ResourceError> {
        if j == self.geo.nvars() {
            if self.out.len() >= self.cap {
                return Err(ResourceError::PosetCap { cap: self.cap });
            }
            self.out.push(self.code);
            return Ok(());
        }
        let saved = self.code;
        let mut a = 0u32;
        loop {
            let blocked = self.by_last[j].iter().any(|&k| {
                self.gen_levels[k]
                    .iter()
                    .zip(&self.levels)
                    .all(|(gl, l)| gl & !l == 0)
            });
            if blocked {
                break;
            }
            self.descend(j + 1)?;
            if a == self.geo.g[j] {
                break;
            }
            a += 1;
            self.levels[a as usize - 1] |= 1 << j;
            self.code += self.geo.strides[j];
        }
        for e in 0..a as usize {
            self.levels[e] &= !(1 << j);
        }
        self.code = saved;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;

    #[test]
    fn principal_squarefree() {
        let v = VariableSet::new(["x", "y"]).unwrap();
        let i = MonomialIdeal::new(v, vec![Monomial::from_exps(vec![1, 1])]).unwrap();
        let p = char_poset(&i, &Limits::default()).unwrap();
        assert_eq!(p.g(), &[1, 1]);
        let pts: Vec<Vec<u32>> = p.points().collect();
        assert_eq!(pts, vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert!(p.is_boolean());
    }

    #[test]
    fn non_squarefree_box() {
        // (x^2, xy) in 2 vars: g = (2, 1); points 1, x, y
        let v = VariableSet::new(["x", "y"]).unwrap();
        let i = MonomialIdeal::new(
            v,
            vec![Monomial::from_exps(vec![2, 0]), Monomial::from_exps(vec![1, 1])],
        )
        .unwrap();
        let p = char_poset(&i, &Limits::default()).unwrap();
        assert_eq!(p.g(), &[2, 1]);
        assert_eq!(p.len(), 3);
        assert!(p.contains(&[0, 1]));
        assert!(!p.contains(&[1, 1]));
    }

    #[test]
    fn cap_counts_points() {
        let v = VariableSet::new(["x", "y", "z"]).unwrap();
        let i = MonomialIdeal::zero(v);
        let limits = Limits {
            poset_cap: 7,
            ..Limits::default()
        };
        assert!(matches!(
            char_poset(&i, &limits),
            Err(Error::Resource(ResourceError::PosetCap { cap: 7 }))
        ));
    }
}
