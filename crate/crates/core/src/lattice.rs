//! The lcm lattice of a monomial ideal.

use std::collections::HashSet;
use std::hash::Hash;

use crate::error::{Error, ResourceError, Result};
use crate::exec::{map_vec, Limits};
use crate::ideal::MonomialIdeal;
use crate::monomial::{Monomial, VariableSet};

/// All distinct lcms of nonempty generator subsets, ordered by divisibility.
///
/// Elements are sorted canonically, so every element precedes its multiples.
#[derive(Debug, Clone)]
pub struct LcmLattice {
    vars: VariableSet,
    elements: Vec<Monomial>,
    atoms: Vec<usize>,
}

impl LcmLattice {
    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn elements(&self) -> &[Monomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Indices of the minimal generators.
    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    /// Index of the join of all generators.
    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.elements[i].divides(&self.elements[j])
    }

    /// Elements strictly below `j`.
    pub fn below(&self, j: usize) -> Vec<usize> {
        (0..j).filter(|&i| self.leq(i, j)).collect()
    }
}

pub fn lcm_lattice(ideal: &MonomialIdeal, limits: &Limits) -> Result<LcmLattice> {
    if ideal.is_zero() {
        return Err(Error::Invalid("the zero ideal has no lcm lattice".into()));
    }
    let gens = ideal.gens();
    let mut elements = join_closure(gens, |a, b| a.lcm(b), limits)?;
    elements.sort();
    let atoms = gens
        .iter()
        .map(|g| elements.binary_search(g).expect("generators are elements"))
        .collect();
    Ok(LcmLattice {
        vars: ideal.vars().clone(),
        elements,
        atoms,
    })
}

/// Closure of squarefree supports under union, as bitmasks.
pub(crate) fn mask_closure(gens: &[u64], limits: &Limits) -> Result<Vec<u64>, ResourceError> {
    let mut out = join_closure(gens, |a, b| a | b, limits)?;
    out.sort_unstable_by_key(|&m| (m.count_ones(), m));
    Ok(out)
}

/// Worklist closure under a binary join. Each round joins the new elements
/// with every generator, which reaches every subset join.
fn join_closure<T, F>(gens: &[T], join: F, limits: &Limits) -> Result<Vec<T>, ResourceError>
where
    T: Clone + Eq + Hash + Send + Sync,
    F: Fn(&T, &T) -> T + Sync + Send,
{
    let cap = limits.lattice_cap;
    let mut seen: HashSet<T> = gens.iter().cloned().collect();
    let mut frontier: Vec<T> = seen.iter().cloned().collect();
    if seen.len() > cap {
        return Err(ResourceError::LatticeCap { cap });
    }
    while !frontier.is_empty() {
        limits.check_deadline()?;
        let joined: Vec<Vec<T>> = map_vec(limits.mode, &frontier, |a| {
            gens.iter().map(|g| join(a, g)).collect()
        });
        let mut next = Vec::new();
        for v in joined.into_iter().flatten() {
            if !seen.contains(&v) {
                seen.insert(v.clone());
                next.push(v);
                if seen.len() > cap {
                    return Err(ResourceError::LatticeCap { cap });
                }
            }
        }
        frontier = next;
    }
    Ok(seen.into_iter().collect())
}
