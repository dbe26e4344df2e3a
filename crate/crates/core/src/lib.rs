//! Edge ideals of caterpillar and lobster trees: exact depth and Stanley
//! depth of `S/I^t`, closed-form lower bounds, and verification harnesses.

pub mod betti;
pub mod bounds;
pub mod depth;
pub mod error;
pub mod exec;
pub mod field;
pub mod graph;
pub mod grid;
pub mod hochster;
pub mod ideal;
pub mod io;
mod koszul;
pub mod lemmas;
pub mod lattice;
pub mod monomial;
pub mod sdepth;

pub use error::{Error, ResourceError, Result};
pub use exec::{ExecMode, Limits};
pub use graph::{build_caterpillar, build_lobster, graph_stats, Family, Graph, GraphStats};
pub use grid::{run_grid, FamilyKind, GridRow, GridSpec, RowStatus, VerifyReport};
pub use ideal::{edge_ideal, minimalize, MonomialIdeal};
pub use lemmas::{run_lemmas, Fault, LemmaConfig, LemmaReport, Suite};
pub use monomial::{Monomial, VariableSet};
pub use betti::{betti_numbers, BettiTable};
pub use bounds::{
    bound_caterpillar, bound_lobster, bound_prior_forest, compare, BoundReport, Exact,
};
pub use depth::{depth_quotient, depth_quotient_with, DepthMethod, DepthResult, DepthStrategy};
pub use field::{PrimeField, DEFAULT_FIELD_CHAR};
pub use hochster::{betti_oracle_hochster, depth_oracle_hochster};
pub use lattice::{lcm_lattice, LcmLattice};
pub use sdepth::{
    char_poset, check_certificate, sdepth_at_least, sdepth_quotient, verify_certificate, CharPoset,
    Decision, Interval, Refutation, SdepthResult, StanleyCertificate,
};
