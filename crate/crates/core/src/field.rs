//! Exact rank computations over a prime field `F_p`.

use std::collections::HashMap;

use crate::error::{Error, Result};

pub const DEFAULT_FIELD_CHAR: u64 = 32003;

/// A validated prime below 2^31, so products fit in a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::ParameterDomain(format!(
                "field characteristic must be a prime below 2^31, got {p}"
            )));
        }
        Ok(PrimeField { p })
    }

    pub fn char(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        acc
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField {
            p: DEFAULT_FIELD_CHAR,
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A sparse column: `(row, value)` pairs sorted by row, values nonzero.
pub type SparseCol = Vec<(u32, u64)>;

/// Rank of the matrix whose columns are `cols`, by column reduction on the
/// lowest nonzero row.
pub fn sparse_rank(field: PrimeField, cols: Vec<SparseCol>) -> usize {
    let mut pivots: HashMap<u32, SparseCol> = HashMap::new();
    for mut col in cols {
        while let Some(&(low, v)) = col.last() {
            match pivots.get(&low) {
                // pivot columns are stored with their lowest entry scaled to 1
                Some(piv) => col = axpy(field, &col, piv, v),
                None => {
                    let s = field.inv(v);
                    for e in col.iter_mut() {
                        e.1 = field.mul(e.1, s);
                    }
                    pivots.insert(low, col);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `a - f * b` over the field, both sorted by row.
fn axpy(field: PrimeField, a: &SparseCol, b: &SparseCol, f: u64) -> SparseCol {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ra = a.get(i).map_or(u32::MAX, |x| x.0);
        let rb = b.get(j).map_or(u32::MAX, |x| x.0);
        if ra < rb {
            out.push(a[i]);
            i += 1;
        } else if rb < ra {
            out.push((rb, field.sub(0, field.mul(f, b[j].1))));
            j += 1;
        } else {
            let v = field.sub(a[i].1, field.mul(f, b[j].1));
            if v != 0 {
                out.push((ra, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(32001).is_err());
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // [[1,1],[1,-1]] is singular only in characteristic 2.
        let cols = || vec![vec![(0, 1), (1, 1)], vec![(0, 1), (1, 1)]];
        let f2 = PrimeField::new(2).unwrap();
        let f3 = PrimeField::new(3).unwrap();
        let m = |f: PrimeField| {
            vec![
                vec![(0, 1), (1, 1)],
                vec![(0, 1), (1, f.reduce(-1))],
            ]
        };
        assert_eq!(sparse_rank(f2, m(f2)), 1);
        assert_eq!(sparse_rank(f3, m(f3)), 2);
        assert_eq!(sparse_rank(f3, cols()), 1);
    }

    #[test]
    fn zero_columns_have_rank_zero() {
        assert_eq!(sparse_rank(PrimeField::default(), vec![vec![], vec![]]), 0);
    }
}
