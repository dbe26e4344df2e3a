//! Seeded randomized checks of the ideal identities the bounds rest on, and
//! of the structural behaviour of depth and sdepth under free variables and
//! disjoint sums.
//!
//! Every identity is decided by comparing minimal generating sets, so the
//! suites need no external oracle. A fault can be injected to confirm that
//! a broken identity is actually reported.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::depth::depth_quotient;
use crate::error::{Error, Result};
use crate::exec::{try_map_vec, Limits};
use crate::field::PrimeField;
use crate::graph::{Family, Graph};
use crate::ideal::{edge_ideal, MonomialIdeal};
use crate::monomial::{Monomial, VariableSet};
use crate::sdepth::{char_poset, sdepth_at_least, sdepth_quotient, verify_certificate, Decision};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    /// `(I^t : x_i x_j) = I^{t-1}` for a leaf `x_i` with neighbor `x_j`.
    LeafColon,
    /// `(I^t, u_n) = (I^t(P_{n-1,k}), u_n)`.
    SpineTruncation,
    /// `(I^t, v_r) = (I^t(S_{r-1,p}), v_r)`.
    LobsterTruncation,
    /// `((I^t : M), y) = ((J^t : M), y)` with `J` the minor at `y = 0`.
    Restriction,
    /// A fresh free variable raises depth and sdepth by one.
    Adjunction,
    /// Depth adds and sdepth superadds over disjoint variable blocks.
    DisjointSum,
}

impl Suite {
    pub const IDENTITIES: [Suite; 4] = [
        Suite::LeafColon,
        Suite::SpineTruncation,
        Suite::LobsterTruncation,
        Suite::Restriction,
    ];
    pub const STRUCTURAL: [Suite; 2] = [Suite::Adjunction, Suite::DisjointSum];

    pub fn name(self) -> &'static str {
        match self {
            Suite::LeafColon => "leaf_colon",
            Suite::SpineTruncation => "spine_truncation",
            Suite::LobsterTruncation => "lobster_truncation",
            Suite::Restriction => "restriction",
            Suite::Adjunction => "adjunction",
            Suite::DisjointSum => "disjoint_sum",
        }
    }

    fn salt(self) -> u64 {
        match self {
            Suite::LeafColon => 0x11,
            Suite::SpineTruncation => 0x22,
            Suite::LobsterTruncation => 0x33,
            Suite::Restriction => 0x44,
            Suite::Adjunction => 0x55,
            Suite::DisjointSum => 0x66,
        }
    }
}

/// Deliberate corruption used as a negative control.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fault {
    /// Drop one minimal generator from the left-hand ideal.
    DropGenerator,
    /// Report one more than the computed depth on the left-hand side.
    ShiftDepth,
}

/// One sampled instance, serializable so a failure can be replayed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    pub family: Family,
    pub t: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge: Option<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Vec<(String, u32)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other: Option<(Family, u32)>,
}

impl Case {
    fn new(family: Family, t: u32) -> Case {
        Case {
            family,
            t,
            edge: None,
            y: None,
            m: None,
            other: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub case: Case,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    pub passed: usize,
    /// The first failure in sampling order.
    pub counterexample: Option<Counterexample>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.cases
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub seed: u64,
    pub fault: Option<Fault>,
    pub suites: Vec<SuiteReport>,
}

impl LemmaReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::all_passed)
    }
}

#[derive(Debug, Clone)]
pub struct LemmaConfig {
    pub seed: u64,
    pub cases: usize,
    pub suites: Vec<Suite>,
    pub fault: Option<Fault>,
    pub field: PrimeField,
    pub limits: Limits,
}

impl LemmaConfig {
    pub fn new(seed: u64, cases: usize) -> Self {
        LemmaConfig {
            seed,
            cases,
            suites: Suite::IDENTITIES
                .iter()
                .chain(&Suite::STRUCTURAL)
                .copied()
                .collect(),
            fault: None,
            field: PrimeField::default(),
            limits: Limits::default(),
        }
    }
}

pub fn run_lemmas(cfg: &LemmaConfig) -> Result<LemmaReport> {
    if cfg.cases == 0 {
        return Err(Error::ParameterDomain("case count must be positive".into()));
    }
    let suites = cfg
        .suites
        .iter()
        .map(|&s| run_suite(s, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(LemmaReport {
        seed: cfg.seed,
        fault: cfg.fault,
        suites,
    })
}

pub fn run_suite(suite: Suite, cfg: &LemmaConfig) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ suite.salt().wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let cases: Vec<Case> = (0..cfg.cases)
        .map(|_| sample(suite, &mut rng))
        .collect::<Result<_>>()?;
    let outcomes = try_map_vec(cfg.limits.mode, &cases, |c| check_case(suite, c, cfg))?;
    let passed = outcomes.iter().filter(|o| o.is_none()).count();
    let counterexample = cases
        .iter()
        .zip(outcomes)
        .find_map(|(c, o)| o.map(|detail| Counterexample { case: c.clone(), detail }));
    Ok(SuiteReport {
        suite,
        cases: cases.len(),
        passed,
        counterexample,
    })
}

fn caterpillar(rng: &mut ChaCha8Rng, n_min: usize, n_max: usize, k_max: usize) -> Family {
    let n = rng.gen_range(n_min..=n_max);
    let k = rng.gen_range(2..=k_max);
    let l = if n == 1 { k } else { rng.gen_range(1..=k) };
    Family::Caterpillar { n, k, l }
}

fn lobster(rng: &mut ChaCha8Rng, r_min: usize, r_max: usize, p_max: usize) -> Family {
    let r = rng.gen_range(r_min..=r_max);
    let p = rng.gen_range(1..=p_max);
    let q = rng.gen_range(0..=p);
    Family::Lobster { r, p, q }
}

fn any_family(rng: &mut ChaCha8Rng) -> Family {
    if rng.gen_bool(0.5) {
        caterpillar(rng, 1, 4, 3)
    } else {
        lobster(rng, 2, 4, 2)
    }
}

/// Structural cases are computed exactly, so they stay on small trees.
fn small_family(rng: &mut ChaCha8Rng) -> Family {
    if rng.gen_bool(0.5) {
        caterpillar(rng, 1, 3, 3)
    } else {
        lobster(rng, 2, 3, 1)
    }
}

/// Disjoint sums multiply poset sizes, so both blocks stay tiny.
fn tiny_family(rng: &mut ChaCha8Rng) -> Family {
    if rng.gen_bool(0.5) {
        caterpillar(rng, 1, 2, 3)
    } else {
        lobster(rng, 2, 2, 1)
    }
}

fn sample(suite: Suite, rng: &mut ChaCha8Rng) -> Result<Case> {
    Ok(match suite {
        Suite::LeafColon => {
            let family = any_family(rng);
            let g = family.build()?;
            let pendants = g.pendant_edges();
            let &(leaf, nb) = pendants.choose(rng).expect("trees have leaves");
            let mut c = Case::new(family, rng.gen_range(2..=3));
            c.edge = Some((g.vertices()[leaf].clone(), g.vertices()[nb].clone()));
            c
        }
        Suite::SpineTruncation => Case::new(caterpillar(rng, 2, 4, 3), rng.gen_range(1..=3)),
        Suite::LobsterTruncation => Case::new(lobster(rng, 3, 4, 2), rng.gen_range(1..=3)),
        Suite::Restriction => {
            let family = any_family(rng);
            let g = family.build()?;
            let names = g.vertices();
            let y = names.choose(rng).expect("nonempty").clone();
            let mut m: Vec<(String, u32)> = Vec::new();
            for v in names.iter().filter(|v| **v != y) {
                if rng.gen_bool(0.3) {
                    m.push((v.clone(), rng.gen_range(1..=2)));
                }
            }
            let mut c = Case::new(family, rng.gen_range(1..=3));
            c.y = Some(y);
            c.m = Some(m);
            c
        }
        Suite::Adjunction => Case::new(small_family(rng), rng.gen_range(1..=2)),
        Suite::DisjointSum => {
            let mut c = Case::new(tiny_family(rng), rng.gen_range(1..=2));
            c.other = Some((tiny_family(rng), rng.gen_range(1..=2)));
            c
        }
    })
}

fn power_of(g: &Graph, t: u32, limits: &Limits) -> Result<MonomialIdeal> {
    edge_ideal(g).power_with(t, limits.mode)
}

fn inject(fault: Option<Fault>, i: MonomialIdeal) -> Result<MonomialIdeal> {
    match fault {
        Some(Fault::DropGenerator) => {
            let mut gens = i.gens().to_vec();
            if gens.pop().is_none() {
                // the zero ideal has nothing to drop; make it the unit ideal
                return Ok(MonomialIdeal::unit(i.vars().clone()));
            }
            MonomialIdeal::new(i.vars().clone(), gens)
        }
        _ => Ok(i),
    }
}

fn compare_ideals(lhs: &MonomialIdeal, rhs: &MonomialIdeal) -> Option<String> {
    if lhs == rhs {
        return None;
    }
    let show = |i: &MonomialIdeal| {
        i.gens()
            .iter()
            .map(|g| g.display(i.vars()).to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    Some(format!("lhs = ({}) but rhs = ({})", show(lhs), show(rhs)))
}

fn check_case(suite: Suite, c: &Case, cfg: &LemmaConfig) -> Result<Option<String>> {
    let limits = &cfg.limits;
    let g = c.family.build()?;
    match suite {
        Suite::LeafColon => {
            let (leaf, nb) = c.edge.as_ref().expect("sampled with an edge");
            let it = power_of(&g, c.t, limits)?;
            let vars = it.vars();
            let m = Monomial::from_vars(vars.len(), &[vars.require(leaf)?, vars.require(nb)?]);
            let lhs = inject(cfg.fault, it.colon(&m)?)?;
            let rhs = power_of(&g, c.t - 1, limits)?;
            Ok(compare_ideals(&lhs, &rhs))
        }
        Suite::SpineTruncation => {
            let Family::Caterpillar { n, k, .. } = c.family else {
                unreachable!("spine truncation samples caterpillars")
            };
            let un = format!("u{n}");
            let it = power_of(&g, c.t, limits)?;
            let lhs = inject(cfg.fault, it.sum_with_named(&[&un])?)?;
            let shorter = power_of(&Family::Caterpillar { n: n - 1, k, l: k }.build()?, c.t, limits)?;
            let rhs = shorter.embed(it.vars())?.sum_with_named(&[&un])?;
            Ok(compare_ideals(&lhs, &rhs))
        }
        Suite::LobsterTruncation => {
            let Family::Lobster { r, p, .. } = c.family else {
                unreachable!("lobster truncation samples lobsters")
            };
            let vr = format!("v{r}");
            let it = power_of(&g, c.t, limits)?;
            let lhs = inject(cfg.fault, it.sum_with_named(&[&vr])?)?;
            let shorter = power_of(&Family::Lobster { r: r - 1, p, q: p }.build()?, c.t, limits)?;
            let rhs = shorter.embed(it.vars())?.sum_with_named(&[&vr])?;
            Ok(compare_ideals(&lhs, &rhs))
        }
        Suite::Restriction => {
            let y = c.y.as_deref().expect("sampled with y");
            let i = edge_ideal(&g);
            let vars = i.vars().clone();
            let mut exps = vec![0u32; vars.len()];
            for (name, e) in c.m.as_deref().unwrap_or_default() {
                exps[vars.require(name)?] = *e;
            }
            let m = Monomial::from_exps(exps);
            let j = i.restrict(y)?;
            let side = |base: &MonomialIdeal| -> Result<MonomialIdeal> {
                base.power_with(c.t, limits.mode)?.colon(&m)?.sum_with_named(&[y])
            };
            let lhs = inject(cfg.fault, side(&i)?)?;
            let rhs = side(&j)?;
            Ok(compare_ideals(&lhs, &rhs))
        }
        Suite::Adjunction => {
            let it = inject(cfg.fault, power_of(&g, c.t, limits)?)?;
            let wider = it.with_free_vars(["w"])?;
            let (d0, s0) = invariants(&it, cfg)?;
            let (d1, s1) = invariants(&wider, cfg)?;
            let d0 = shifted(cfg.fault, d0);
            Ok((d1 != d0 + 1 || s1 != s0 + 1).then(|| {
                format!("depth {d0} -> {d1}, sdepth {s0} -> {s1} after adding a free variable")
            }))
        }
        Suite::DisjointSum => {
            let (f2, t2) = c.other.expect("sampled with a second block");
            let a = inject(cfg.fault, power_of(&g, c.t, limits)?)?;
            let b = prefixed(&power_of(&f2.build()?, t2, limits)?, "b.")?;
            let sum = a.disjoint_sum(&b)?;
            let (da, sa) = invariants(&a, cfg)?;
            let (db, sb) = invariants(&b, cfg)?;
            let ds = depth_quotient(&sum, cfg.field, &cfg.limits)?.depth;
            let da = shifted(cfg.fault, da);
            if ds != da + db {
                return Ok(Some(format!("depth {da} + {db} but the sum has depth {ds}")));
            }
            // superadditivity only needs the sum to reach sa + sb
            let p = char_poset(&sum, &cfg.limits)?;
            Ok(match sdepth_at_least(&p, sa + sb, &cfg.limits)? {
                Decision::Feasible(cert) if verify_certificate(&p, &cert) => None,
                Decision::Feasible(_) => Some("certificate for the sum failed verification".into()),
                Decision::Infeasible(r) => {
                    Some(format!("sdepth {sa} + {sb} is out of reach for the sum: {r:?}"))
                }
            })
        }
    }
}

fn shifted(fault: Option<Fault>, d: usize) -> usize {
    if fault == Some(Fault::ShiftDepth) {
        d + 1
    } else {
        d
    }
}

/// The same ideal over renamed variables.
fn prefixed(i: &MonomialIdeal, prefix: &str) -> Result<MonomialIdeal> {
    let vars = VariableSet::new(i.vars().names().iter().map(|n| format!("{prefix}{n}")))?;
    MonomialIdeal::new(vars, i.gens().to_vec())
}

fn invariants(i: &MonomialIdeal, cfg: &LemmaConfig) -> Result<(usize, usize)> {
    let d = depth_quotient(i, cfg.field, &cfg.limits)?.depth;
    let s = sdepth_quotient(i, Some(d), &cfg.limits)?.sdepth;
    Ok((d, s))
}
