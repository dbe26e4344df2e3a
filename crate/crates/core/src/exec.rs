//! Execution controls shared by every engine: resource caps, wall-clock
//! deadline, and the choice between the rayon-backed and the sequential path.
//!
//! All parallel helpers return results in input order, so a computation gives
//! the same answer under either [`ExecMode`].

use std::time::{Duration, Instant};

use crate::error::ResourceError;

/// Environment variable overriding every size cap at once.
pub const CAP_ENV: &str = "TREEDEPTH_CAP";

pub const DEFAULT_LATTICE_CAP: usize = 200_000;
pub const DEFAULT_POSET_CAP: usize = 1 << 20;
pub const DEFAULT_DEGREE_CAP: usize = 1 << 22;
pub const DEFAULT_SEARCH_NODES: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecMode {
    #[default]
    Parallel,
    Sequential,
}

#[derive(Debug, Clone)]
pub struct Limits {
    pub lattice_cap: usize,
    pub poset_cap: usize,
    pub degree_cap: usize,
    pub search_nodes: u64,
    pub deadline: Option<Instant>,
    pub mode: ExecMode,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            lattice_cap: DEFAULT_LATTICE_CAP,
            poset_cap: DEFAULT_POSET_CAP,
            degree_cap: DEFAULT_DEGREE_CAP,
            search_nodes: DEFAULT_SEARCH_NODES,
            deadline: None,
            mode: ExecMode::default(),
        }
    }
}

impl Limits {
    /// Defaults, with every cap replaced by `TREEDEPTH_CAP` when it is set
    /// to a positive integer.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(cap) = std::env::var(CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&c| c > 0)
        {
            limits.lattice_cap = cap;
            limits.poset_cap = cap;
            limits.degree_cap = cap;
        }
        limits
    }

    pub fn with_budget(mut self, budget: Duration) -> Self {
        self.deadline = Some(Instant::now() + budget);
        self
    }

    pub fn with_mode(mut self, mode: ExecMode) -> Self {
        self.mode = mode;
        self
    }

    /// True when these limits are the defaults (up to deadline and mode).
    pub fn caps_are_default(&self) -> bool {
        self.lattice_cap == DEFAULT_LATTICE_CAP
            && self.poset_cap == DEFAULT_POSET_CAP
            && self.degree_cap == DEFAULT_DEGREE_CAP
            && self.search_nodes == DEFAULT_SEARCH_NODES
    }

    #[inline]
    pub fn check_deadline(&self) -> Result<(), ResourceError> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(ResourceError::Timeout),
            _ => Ok(()),
        }
    }
}

/// Maps `f` over `items`, in parallel when the mode and the build allow it.
pub fn map_vec<T, R, F>(mode: ExecMode, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if mode == ExecMode::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
    }
    let _ = mode;
    items.iter().map(f).collect()
}

/// Fallible variant of [`map_vec`]; the first error in input order wins.
pub fn try_map_vec<T, R, E, F>(mode: ExecMode, items: &[T], f: F) -> Result<Vec<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
    F: Fn(&T) -> Result<R, E> + Sync + Send,
{
    map_vec(mode, items, f).into_iter().collect()
}
