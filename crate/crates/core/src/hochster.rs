//! Brute-force oracle for squarefree ideals on at most 16 variables.
//!
//! Betti numbers come from reduced homology of every restriction of the
//! Stanley–Reisner complex; depth comes separately from the homology of
//! links of faces. Linear algebra is a dense elimination written here, so
//! nothing is shared with the lattice engine.

use std::collections::{BTreeMap, HashMap};

use crate::betti::BettiTable;
use crate::depth::{DepthMethod, DepthResult};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

pub const ORACLE_MAX_VARS: usize = 16;

struct Complex {
    /// Every face as a bitmask, including the empty face.
    faces: Vec<u32>,
}

impl Complex {
    fn of(ideal: &MonomialIdeal) -> Result<Complex> {
        let n = ideal.nvars();
        if n > ORACLE_MAX_VARS {
            return Err(Error::ParameterDomain(format!(
                "the oracle handles at most {ORACLE_MAX_VARS} variables, got {n}"
            )));
        }
        if !ideal.is_squarefree() {
            return Err(Error::Invalid("the oracle needs a squarefree ideal".into()));
        }
        let gens: Vec<u32> = ideal
            .gens()
            .iter()
            .map(|g| g.support().fold(0u32, |m, j| m | 1 << j))
            .collect();
        let faces = (0u32..1 << n)
            .filter(|&f| gens.iter().all(|&g| g & !f != 0))
            .collect();
        Ok(Complex { faces })
    }
}

/// Reduced homology ranks `h̃_k` for `k = -1, 0, ...` of the complex whose
/// faces are `faces` (must contain the empty face when nonempty).
fn reduced_homology(field: PrimeField, faces: &[u32]) -> Vec<usize> {
    let top = faces.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0);
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); top + 2];
    for &f in faces {
        by_size[f.count_ones() as usize].push(f);
    }
    let index: Vec<HashMap<u32, usize>> = by_size
        .iter()
        .map(|v| v.iter().enumerate().map(|(i, &f)| (f, i)).collect())
        .collect();
    // rank of ∂ from size s to size s-1
    let boundary_rank = |s: usize| -> usize {
        if s == 0 || by_size[s].is_empty() || by_size[s - 1].is_empty() {
            return 0;
        }
        let mut m = vec![vec![0u64; by_size[s].len()]; by_size[s - 1].len()];
        for (c, &f) in by_size[s].iter().enumerate() {
            let mut sign_neg = false;
            for j in 0..32 {
                if f >> j & 1 == 1 {
                    let r = index[s - 1][&(f & !(1 << j))];
                    m[r][c] = if sign_neg { field.reduce(-1) } else { 1 };
                    sign_neg = !sign_neg;
                }
            }
        }
        dense_rank(field, m)
    };
    let ranks: Vec<usize> = (0..top + 2).map(boundary_rank).collect();
    (0..=top)
        .map(|s| by_size[s].len() - ranks[s] - ranks[s + 1])
        .collect()
}

fn dense_rank(field: PrimeField, mut m: Vec<Vec<u64>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = field.inv(m[rank][c]);
        for x in m[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = field.sub(*x, field.mul(f, y));
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `β_{i,σ}(S/J) = h̃_{|σ|-i-1}(Δ_σ)` over all `σ ⊆ [n]`.
pub fn betti_oracle_hochster(ideal: &MonomialIdeal, field: PrimeField) -> Result<BettiTable> {
    let n = ideal.nvars();
    let mut entries = BTreeMap::new();
    if ideal.is_unit() {
        return Ok(BettiTable::from_entries(ideal.vars().clone(), entries, field.char()));
    }
    let cx = Complex::of(ideal)?;
    for sigma in 0u32..1 << n {
        let restricted: Vec<u32> = cx.faces.iter().copied().filter(|&f| f & !sigma == 0).collect();
        let h = reduced_homology(field, &restricted);
        let m = sigma.count_ones() as usize;
        for (k1, &rank) in h.iter().enumerate() {
            // k = k1 - 1, i = m - k - 1 = m - k1
            if rank > 0 && k1 <= m {
                let exps: Vec<u32> = (0..n).map(|j| sigma >> j & 1).collect();
                entries.insert((m - k1, Monomial::from_exps(exps)), rank as u64);
            }
        }
    }
    Ok(BettiTable::from_entries(ideal.vars().clone(), entries, field.char()))
}

/// Depth from the vanishing of local cohomology,
/// `depth = min { |F| + 1 + k : F ∈ Δ, h̃_k(lk F) ≠ 0 }`,
/// and projective dimension from the oracle Betti table.
pub fn depth_oracle_hochster(ideal: &MonomialIdeal, field: PrimeField) -> Result<DepthResult> {
    let n = ideal.nvars();
    if ideal.is_unit() {
        return Err(Error::Invalid("S/I is zero for the unit ideal".into()));
    }
    let cx = Complex::of(ideal)?;
    let mut depth = usize::MAX;
    for &f in &cx.faces {
        let size = f.count_ones() as usize;
        if size >= depth {
            continue;
        }
        let link: Vec<u32> = cx
            .faces
            .iter()
            .filter(|&&g| g & f == 0)
            .map(|&g| g | f)
            .filter(|u| cx.faces.binary_search(u).is_ok())
            .map(|u| u & !f)
            .collect();
        let h = reduced_homology(field, &link);
        if let Some(k1) = h.iter().position(|&r| r > 0) {
            // k = k1 - 1
            depth = depth.min(size + k1);
        }
    }
    let betti = betti_oracle_hochster(ideal, field)?;
    Ok(DepthResult {
        depth,
        proj_dim: betti.proj_dim(),
        ambient_size: n,
        field_char: field.char(),
        method: DepthMethod::HochsterOracle,
    })
}
