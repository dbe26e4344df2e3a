use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::exec::{map_vec, ExecMode};
use crate::graph::Graph;
use crate::monomial::{Monomial, VariableSet};

/// Records that an ideal was produced as `base^t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerTag {
    /// Fingerprint of the base ideal's ambient and generators.
    pub base: u64,
    pub t: u32,
}

/// A monomial ideal held as its minimal generating set in canonical order.
///
/// The zero ideal has no generators; the unit ideal has the single
/// generator `1`. Equality compares ambient and generators only.
#[derive(Debug, Clone)]
pub struct MonomialIdeal {
    vars: VariableSet,
    gens: Vec<Monomial>,
    power_tag: Option<PowerTag>,
}

impl PartialEq for MonomialIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.gens == other.gens
    }
}

impl Eq for MonomialIdeal {}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, minimalizing them.
    pub fn new(vars: VariableSet, gens: Vec<Monomial>) -> Result<MonomialIdeal> {
        minimalize(vars, gens)
    }

    pub fn zero(vars: VariableSet) -> MonomialIdeal {
        MonomialIdeal {
            vars,
            gens: Vec::new(),
            power_tag: None,
        }
    }

    pub fn unit(vars: VariableSet) -> MonomialIdeal {
        let n = vars.len();
        MonomialIdeal {
            vars,
            gens: vec![Monomial::one(n)],
            power_tag: None,
        }
    }

    /// Parses generators given as `(name, exponent)` lists.
    pub fn from_named(vars: VariableSet, gens: &[Vec<(&str, u32)>]) -> Result<MonomialIdeal> {
        let n = vars.len();
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            let mut exps = vec![0u32; n];
            for &(name, e) in g {
                exps[vars.require(name)?] += e;
            }
            out.push(Monomial::from_exps(exps));
        }
        minimalize(vars, out)
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn power_tag(&self) -> Option<PowerTag> {
        self.power_tag
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first().is_some_and(Monomial::is_one)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// Membership: some generator divides `m`.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Componentwise maximum of generator exponents.
    pub fn max_exponents(&self) -> Vec<u32> {
        let mut g = vec![0u32; self.nvars()];
        for m in &self.gens {
            for (gi, &e) in g.iter_mut().zip(m.exps()) {
                *gi = (*gi).max(e);
            }
        }
        g
    }

    /// Variables appearing in at least one generator.
    pub fn support(&self) -> Vec<bool> {
        let mut s = vec![false; self.nvars()];
        for m in &self.gens {
            for i in m.support() {
                s[i] = true;
            }
        }
        s
    }

    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.vars.names().hash(&mut h);
        self.gens.hash(&mut h);
        h.finish()
    }

    fn check_ambient(&self, m: &Monomial) -> Result<()> {
        if m.nvars() != self.nvars() {
            return Err(Error::MixedAmbient {
                expected: self.nvars(),
                found: m.nvars(),
            });
        }
        Ok(())
    }

    /// `I^t` by repeated multiplication with minimalization after each step.
    pub fn power(&self, t: u32) -> Result<MonomialIdeal> {
        self.power_with(t, ExecMode::default())
    }

    pub fn power_with(&self, t: u32, mode: ExecMode) -> Result<MonomialIdeal> {
        if t < 1 {
            return Err(Error::ParameterDomain(format!(
                "power exponent must be at least 1, got {t}"
            )));
        }
        let mut acc = self.clone();
        for _ in 1..t {
            acc = acc.product_with(self, mode)?;
        }
        acc.power_tag = Some(PowerTag {
            base: self.fingerprint(),
            t,
        });
        Ok(acc)
    }

    /// The product ideal `I·J` over a shared ambient.
    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.product_with(other, ExecMode::default())
    }

    fn product_with(&self, other: &MonomialIdeal, mode: ExecMode) -> Result<MonomialIdeal> {
        if self.vars != other.vars {
            return Err(Error::MixedAmbient {
                expected: self.nvars(),
                found: other.nvars(),
            });
        }
        let rows: Vec<Vec<Monomial>> = map_vec(mode, &self.gens, |a| {
            other.gens.iter().map(|b| a.mul(b)).collect()
        });
        minimalize_with(self.vars.clone(), rows.into_iter().flatten().collect(), mode)
    }

    /// `(I : m)`.
    pub fn colon(&self, m: &Monomial) -> Result<MonomialIdeal> {
        self.check_ambient(m)?;
        minimalize(
            self.vars.clone(),
            self.gens.iter().map(|g| g.colon(m)).collect(),
        )
    }

    /// `I + (x_v : v in vars)`.
    pub fn sum_with_vars(&self, vars: &[usize]) -> Result<MonomialIdeal> {
        let n = self.nvars();
        let mut gens = self.gens.clone();
        for &v in vars {
            if v >= n {
                return Err(Error::UnknownVariable(format!("index {v}")));
            }
            gens.push(Monomial::var(n, v));
        }
        minimalize(self.vars.clone(), gens)
    }

    pub fn sum_with_named(&self, names: &[&str]) -> Result<MonomialIdeal> {
        let idx = names
            .iter()
            .map(|n| self.vars.require(n))
            .collect::<Result<Vec<_>>>()?;
        self.sum_with_vars(&idx)
    }

    /// `I + J` over a shared ambient.
    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if self.vars != other.vars {
            return Err(Error::MixedAmbient {
                expected: self.nvars(),
                found: other.nvars(),
            });
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        minimalize(self.vars.clone(), gens)
    }

    /// The minor at `y = 0`, extended back to the same ambient.
    pub fn restrict(&self, y: &str) -> Result<MonomialIdeal> {
        let v = self.vars.require(y)?;
        Ok(self.restrict_index(v))
    }

    pub fn restrict_index(&self, v: usize) -> MonomialIdeal {
        MonomialIdeal {
            vars: self.vars.clone(),
            gens: self.gens.iter().filter(|g| g.exp(v) == 0).cloned().collect(),
            power_tag: None,
        }
    }

    /// Re-expresses the ideal in a larger ambient that contains every
    /// current variable by name.
    pub fn embed(&self, target: &VariableSet) -> Result<MonomialIdeal> {
        let map = self
            .vars
            .names()
            .iter()
            .map(|n| target.require(n))
            .collect::<Result<Vec<_>>>()?;
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut e = vec![0u32; target.len()];
                for (i, &x) in g.exps().iter().enumerate() {
                    e[map[i]] = x;
                }
                Monomial::from_exps(e)
            })
            .collect();
        minimalize(target.clone(), gens)
    }

    /// The same generators with fresh free variables appended.
    pub fn with_free_vars<S: Into<String>>(
        &self,
        names: impl IntoIterator<Item = S>,
    ) -> Result<MonomialIdeal> {
        let vars = self.vars.extended(names)?;
        self.embed(&vars)
    }

    /// `I S + J S` where `I` and `J` live on disjoint variable blocks.
    pub fn disjoint_sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        let vars = self.vars.extended(other.vars.names().iter().cloned())?;
        let a = self.embed(&vars)?;
        let b = other.embed(&vars)?;
        a.sum(&b)
    }

    /// Standard polarization. New variables come after the originals, one
    /// run per original variable, named `x'`, `x''`, ...
    ///
    /// Returns the squarefree ideal and the number of added variables.
    pub fn polarize(&self) -> Result<(MonomialIdeal, usize)> {
        let p = self.polarization()?;
        Ok((p.ideal, p.shift))
    }

    pub(crate) fn polarization(&self) -> Result<Polarization> {
        let rho = self.max_exponents();
        let n = self.nvars();
        let mut names: Vec<String> = self.vars.names().to_vec();
        let mut origin: Vec<usize> = (0..n).collect();
        // first[j] = index of x_j's first copy
        let mut first = vec![usize::MAX; n];
        for j in 0..n {
            if rho[j] >= 2 {
                first[j] = names.len();
                for c in 1..rho[j] {
                    names.push(format!("{}{}", self.vars.name(j), "'".repeat(c as usize)));
                    origin.push(j);
                }
            }
        }
        let shift = names.len() - n;
        if shift == 0 {
            return Ok(Polarization {
                ideal: self.clone(),
                shift: 0,
                origin,
            });
        }
        let vars = VariableSet::new(names)?;
        let m = vars.len();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut e = vec![0u32; m];
                for (j, &x) in g.exps().iter().enumerate() {
                    if x >= 1 {
                        e[j] = 1;
                    }
                    for c in 1..x {
                        e[first[j] + c as usize - 1] = 1;
                    }
                }
                Monomial::from_exps(e)
            })
            .collect();
        Ok(Polarization {
            ideal: minimalize(vars, gens)?,
            shift,
            origin,
        })
    }
}

pub(crate) struct Polarization {
    pub ideal: MonomialIdeal,
    pub shift: usize,
    /// Original variable for each polarized variable.
    pub origin: Vec<usize>,
}

/// The edge ideal of `g` over its vertices in order.
pub fn edge_ideal(g: &Graph) -> MonomialIdeal {
    let vars = VariableSet::new(g.vertices().iter().cloned())
        .expect("graph vertices are unique");
    let n = vars.len();
    let gens = g
        .edges()
        .iter()
        .map(|&(a, b)| Monomial::from_vars(n, &[a, b]))
        .collect();
    minimalize(vars, gens).expect("edge monomials share the ambient")
}

/// The divisibility-minimal subset of `gens`, canonically sorted.
pub fn minimalize(vars: VariableSet, gens: Vec<Monomial>) -> Result<MonomialIdeal> {
    minimalize_with(vars, gens, ExecMode::default())
}

/// Candidates below this count are filtered sequentially.
const PARALLEL_MIN: usize = 4096;

pub fn minimalize_with(
    vars: VariableSet,
    mut gens: Vec<Monomial>,
    mode: ExecMode,
) -> Result<MonomialIdeal> {
    let n = vars.len();
    if let Some(bad) = gens.iter().find(|g| g.nvars() != n) {
        return Err(Error::MixedAmbient {
            expected: n,
            found: bad.nvars(),
        });
    }
    gens.sort_unstable();
    gens.dedup();
    if gens.first().is_some_and(Monomial::is_one) {
        return Ok(MonomialIdeal::unit(vars));
    }

    let bloom = |m: &Monomial| m.support().fold(0u64, |acc, i| acc | 1 << (i % 64));
    let mut kept: Vec<(u64, Monomial)> = Vec::new();
    let divided = |kept: &[(u64, Monomial)], b: u64, m: &Monomial| {
        kept.iter().any(|(kb, k)| kb & !b == 0 && k.divides(m))
    };

    if gens.len() < PARALLEL_MIN || mode == ExecMode::Sequential {
        for m in gens {
            let b = bloom(&m);
            if !divided(&kept, b, &m) {
                kept.push((b, m));
            }
        }
    } else {
        // Same-degree distinct monomials never divide each other, so each
        // degree level only needs the survivors of lower levels.
        let mut start = 0;
        while start < gens.len() {
            let deg = gens[start].degree();
            let end = start + gens[start..].partition_point(|m| m.degree() == deg);
            let level = &gens[start..end];
            let keep = map_vec(mode, level, |m| !divided(&kept, bloom(m), m));
            for (m, k) in level.iter().zip(keep) {
                if k {
                    kept.push((bloom(m), m.clone()));
                }
            }
            start = end;
        }
    }

    Ok(MonomialIdeal {
        vars,
        gens: kept.into_iter().map(|(_, m)| m).collect(),
        power_tag: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_caterpillar, build_lobster};

    fn vars(names: &[&str]) -> VariableSet {
        VariableSet::new(names.iter().copied()).unwrap()
    }

    fn ideal(names: &[&str], gens: &[&[(&str, u32)]]) -> MonomialIdeal {
        let gens: Vec<Vec<(&str, u32)>> = gens.iter().map(|g| g.to_vec()).collect();
        MonomialIdeal::from_named(vars(names), &gens).unwrap()
    }

    #[test]
    fn minimalize_drops_multiples() {
        let i = ideal(&["x", "y"], &[&[("x", 1)], &[("x", 1), ("y", 1)]]);
        assert_eq!(i.gens().len(), 1);
        let j = ideal(
            &["x", "y", "z"],
            &[&[("x", 1), ("y", 1)], &[("y", 1), ("z", 1)], &[("x", 1), ("z", 1)]],
        );
        assert_eq!(j.gens().len(), 3);
    }

    #[test]
    fn mixed_ambient_is_an_error() {
        let v = vars(&["x", "y"]);
        let r = minimalize(v, vec![Monomial::one(3)]);
        assert!(matches!(r, Err(Error::MixedAmbient { expected: 2, found: 3 })));
    }

    #[test]
    fn family_generator_counts() {
        assert_eq!(edge_ideal(&build_caterpillar(4, 7, 5).unwrap()).gens().len(), 25);
        assert_eq!(edge_ideal(&build_lobster(8, 4, 2).unwrap()).gens().len(), 38);
    }

    #[test]
    fn principal_power() {
        let i = ideal(&["x", "y"], &[&[("x", 1), ("y", 1)]]);
        let p = i.power(3).unwrap();
        assert_eq!(p.gens(), &[Monomial::from_exps(vec![3, 3])]);
        assert_eq!(p.power_tag().unwrap().t, 3);
        assert_eq!(i.power(1).unwrap(), i);
        assert!(matches!(i.power(0), Err(Error::ParameterDomain(_))));
    }

    #[test]
    fn colon_examples() {
        let i = ideal(&["x", "y"], &[&[("x", 2), ("y", 1)]]);
        let c = i.colon(&Monomial::var(2, 0)).unwrap();
        assert_eq!(c.gens(), &[Monomial::from_exps(vec![1, 1])]);
        let u = i.colon(&Monomial::from_exps(vec![2, 2])).unwrap();
        assert!(u.is_unit());
    }

    #[test]
    fn sum_and_restrict() {
        let i = ideal(&["x", "y", "z"], &[&[("x", 1), ("y", 1)], &[("y", 1), ("z", 1)]]);
        assert_eq!(i.sum_with_named(&["y"]).unwrap().gens(), &[Monomial::var(3, 1)]);
        let t = ideal(
            &["x", "y", "z"],
            &[&[("x", 1), ("y", 1)], &[("y", 1), ("z", 1)], &[("x", 1), ("z", 1)]],
        );
        let r = t.restrict("y").unwrap();
        assert_eq!(r.gens(), &[Monomial::from_exps(vec![1, 0, 1])]);
        assert_eq!(r.nvars(), 3);
        assert!(matches!(t.restrict("w"), Err(Error::UnknownVariable(_))));
        let xy = ideal(&["x", "y", "z"], &[&[("x", 1), ("y", 1)]]);
        assert_eq!(xy.sum_with_named(&["z"]).unwrap().gens().len(), 2);
        assert_eq!(xy.restrict("z").unwrap(), xy);
    }

    #[test]
    fn polarize_examples() {
        let i = ideal(&["x"], &[&[("x", 2)]]);
        let (p, s) = i.polarize().unwrap();
        assert_eq!(s, 1);
        assert_eq!(p.vars().names(), &["x", "x'"]);
        assert_eq!(p.gens(), &[Monomial::from_exps(vec![1, 1])]);

        let j = ideal(&["x", "y"], &[&[("x", 2), ("y", 1)], &[("y", 2)]]);
        let (p, s) = j.polarize().unwrap();
        assert_eq!(s, 2);
        assert_eq!(p.vars().names(), &["x", "y", "x'", "y'"]);
        assert!(p.is_squarefree());
        assert!(p.contains(&Monomial::from_exps(vec![1, 1, 1, 0])));
        assert!(p.contains(&Monomial::from_exps(vec![0, 1, 0, 1])));

        let e = edge_ideal(&build_caterpillar(2, 2, 2).unwrap());
        let (p, s) = e.polarize().unwrap();
        assert_eq!((p, s), (e, 0));
    }

    #[test]
    fn parallel_and_sequential_minimalize_agree() {
        let e = edge_ideal(&build_caterpillar(4, 3, 3).unwrap());
        let a = e.power_with(3, ExecMode::Parallel).unwrap();
        let b = e.power_with(3, ExecMode::Sequential).unwrap();
        assert_eq!(a, b);
        let big = a.product(&a).unwrap();
        let g: Vec<Monomial> = a
            .gens()
            .iter()
            .flat_map(|x| a.gens().iter().map(move |y| x.mul(y)))
            .collect();
        assert!(g.len() >= PARALLEL_MIN);
        let p = minimalize_with(a.vars().clone(), g.clone(), ExecMode::Parallel).unwrap();
        let s = minimalize_with(a.vars().clone(), g, ExecMode::Sequential).unwrap();
        assert_eq!(p, s);
        assert_eq!(p, big);
    }
}
