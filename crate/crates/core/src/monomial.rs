use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered, uniquely named variables `x_1..x_m` of `S = K[x_1..x_m]`.
///
/// Cloning is cheap; two sets compare equal when their names agree in order.
#[derive(Clone)]
pub struct VariableSet(Arc<VarsInner>);

struct VarsInner {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VariableSet {
    pub fn new<I, S>(names: I) -> Result<VariableSet>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate variable `{n}`")));
            }
        }
        Ok(VariableSet(Arc::new(VarsInner { names, index })))
    }

    pub fn len(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// A new set with `extra` appended after the existing names.
    pub fn extended<I, S>(&self, extra: I) -> Result<VariableSet>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        VariableSet::new(
            self.names()
                .iter()
                .cloned()
                .chain(extra.into_iter().map(Into::into)),
        )
    }
}

impl PartialEq for VariableSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.names == other.0.names
    }
}

impl Eq for VariableSet {}

impl fmt::Debug for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

/// A monomial as a dense exponent vector over some ambient [`VariableSet`].
///
/// Ordered by total degree, then lexicographically by exponent vector; this
/// is the canonical generator order used everywhere.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            exps: vec![0; nvars].into_boxed_slice(),
        }
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m
    }

    pub fn from_exps(exps: impl Into<Vec<u32>>) -> Monomial {
        Monomial {
            exps: exps.into().into_boxed_slice(),
        }
    }

    /// Product of the listed variables, with multiplicity.
    pub fn from_vars(nvars: usize, vars: &[usize]) -> Monomial {
        let mut m = Monomial::one(nvars);
        for &v in vars {
            m.exps[v] += 1;
        }
        m
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    /// Support as a bitmask; `None` beyond 64 variables.
    pub fn support_mask(&self) -> Option<u64> {
        if self.exps.len() > 64 {
            return None;
        }
        Some(
            self.exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(0u64, |acc, (i, _)| acc | (1 << i)),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, u32::max)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, u32::min)
    }

    /// `self / gcd(self, m)`: the generator of `(self) : m`.
    pub fn colon(&self, m: &Monomial) -> Monomial {
        self.zip_with(m, |a, b| a.saturating_sub(b))
    }

    pub fn pow(&self, t: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&e| e * t).collect(),
        }
    }

    fn zip_with(&self, other: &Monomial, f: impl Fn(u32, u32) -> u32) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Pretty form such as `u1^2*y1_1`, or `1`.
    pub fn display<'a>(&'a self, vars: &'a VariableSet) -> impl fmt::Display + 'a {
        MonomialDisplay { m: self, vars }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{:?}", self.exps)
    }
}

struct MonomialDisplay<'a> {
    m: &'a Monomial,
    vars: &'a VariableSet,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.m.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(self.vars.name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
