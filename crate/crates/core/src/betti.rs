use std::collections::BTreeMap;

use crate::error::{Error, ResourceError, Result};
use crate::exec::Limits;
use crate::field::PrimeField;
use crate::ideal::MonomialIdeal;
use crate::koszul::{betti_masks, MaskIdeal, MAX_MASK_VARS};
use crate::monomial::{Monomial, VariableSet};

/// Multigraded Betti numbers `β_{i,m}` of `S/I` over `F_p`.
///
/// Only nonzero entries are stored. `β_{0,1} = 1` for every proper ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    vars: VariableSet,
    entries: BTreeMap<(usize, Monomial), u64>,
    field_char: u64,
}

impl BettiTable {
    pub(crate) fn from_entries(
        vars: VariableSet,
        entries: BTreeMap<(usize, Monomial), u64>,
        field_char: u64,
    ) -> BettiTable {
        BettiTable {
            vars,
            entries,
            field_char,
        }
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn field_char(&self) -> u64 {
        self.field_char
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &Monomial, u64)> + '_ {
        self.entries.iter().map(|((i, m), &r)| (*i, m, r))
    }

    pub fn get(&self, i: usize, m: &Monomial) -> u64 {
        self.entries.get(&(i, m.clone())).copied().unwrap_or(0)
    }

    /// Total Betti number `β_i`.
    pub fn total(&self, i: usize) -> u64 {
        self.entries().filter(|e| e.0 == i).map(|e| e.2).sum()
    }

    /// Largest `i` with a nonzero entry.
    pub fn proj_dim(&self) -> usize {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }
}

/// Betti numbers of `S/I` from the lcm lattice of the polarization, with
/// degrees mapped back to the original variables.
pub fn betti_numbers(ideal: &MonomialIdeal, field: PrimeField, limits: &Limits) -> Result<BettiTable> {
    let n = ideal.nvars();
    let mut entries = BTreeMap::new();
    if ideal.is_unit() {
        return Ok(BettiTable::from_entries(ideal.vars().clone(), entries, field.char()));
    }
    entries.insert((0, Monomial::one(n)), 1);
    if ideal.is_zero() {
        return Ok(BettiTable::from_entries(ideal.vars().clone(), entries, field.char()));
    }
    let pol = ideal.polarization()?;
    let masks = to_masks(&pol.ideal, "lcm lattice homology")?;
    for (i, sigma, rank) in betti_masks(&masks, field, limits)? {
        let mut e = vec![0u32; n];
        for (j, &o) in pol.origin.iter().enumerate() {
            if sigma >> j & 1 == 1 {
                e[o] += 1;
            }
        }
        *entries.entry((i, Monomial::from_exps(e))).or_insert(0) += rank as u64;
    }
    Ok(BettiTable::from_entries(ideal.vars().clone(), entries, field.char()))
}

/// Supports of a squarefree ideal as bitmasks.
pub(crate) fn to_masks(ideal: &MonomialIdeal, what: &'static str) -> Result<MaskIdeal> {
    if !ideal.is_squarefree() {
        return Err(Error::Invalid(format!("{what} needs a squarefree ideal")));
    }
    if ideal.nvars() > MAX_MASK_VARS {
        return Err(ResourceError::TooManyVariables {
            what,
            max: MAX_MASK_VARS,
            got: ideal.nvars(),
        }
        .into());
    }
    let gens = ideal
        .gens()
        .iter()
        .map(|g| g.support_mask().expect("at most 64 variables"))
        .collect();
    Ok(MaskIdeal::new(ideal.nvars(), gens))
}
