//! JSON file formats for graphs, ideals, Stanley certificates and Betti
//! tables. Every writer is deterministic: keys come out in a fixed order and
//! collections in canonical order, so equal inputs give byte-identical files.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::betti::BettiTable;
use crate::error::{Error, Result};
use crate::graph::{Family, Graph};
use crate::ideal::MonomialIdeal;
use crate::monomial::{Monomial, VariableSet};
use crate::sdepth::{Interval, StanleyCertificate};

type ExpMap = BTreeMap<String, u32>;

#[derive(Serialize, Deserialize)]
struct GraphFile {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    family: Option<Family>,
}

#[derive(Serialize, Deserialize)]
struct IdealFile {
    vars: Vec<String>,
    gens: Vec<ExpMap>,
}

#[derive(Serialize, Deserialize)]
struct IntervalFile {
    a: ExpMap,
    b: ExpMap,
}

#[derive(Serialize, Deserialize)]
struct CertificateFile {
    vars: Vec<String>,
    g: ExpMap,
    claimed_d: usize,
    intervals: Vec<IntervalFile>,
}

#[derive(Serialize, Deserialize)]
struct BettiEntry {
    i: usize,
    deg: ExpMap,
    rank: u64,
}

fn malformed(what: &str, e: serde_json::Error) -> Error {
    Error::Invalid(format!("malformed {what} JSON: {e}"))
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data always serializes");
    s.push('\n');
    s
}

/// Exponent map with zero entries left out.
fn sparse(vars: &VariableSet, exps: &[u32]) -> ExpMap {
    exps.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(j, &e)| (vars.name(j).to_string(), e))
        .collect()
}

fn dense(vars: &VariableSet, map: &ExpMap) -> Result<Vec<u32>> {
    let mut exps = vec![0u32; vars.len()];
    for (name, &e) in map {
        exps[vars.require(name)?] = e;
    }
    Ok(exps)
}

pub fn graph_to_json(g: &Graph) -> String {
    pretty(&GraphFile {
        vertices: g.vertices().to_vec(),
        edges: g
            .edge_labels()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        family: g.family(),
    })
}

pub fn graph_from_json(s: &str) -> Result<Graph> {
    let f: GraphFile = serde_json::from_str(s).map_err(|e| malformed("graph", e))?;
    Ok(Graph::new(f.vertices, f.edges)?.with_family(f.family))
}

pub fn ideal_to_json(i: &MonomialIdeal) -> String {
    pretty(&IdealFile {
        vars: i.vars().names().to_vec(),
        gens: i.gens().iter().map(|m| sparse(i.vars(), m.exps())).collect(),
    })
}

/// Parses an ideal file; the generators are minimalized on the way in.
pub fn ideal_from_json(s: &str) -> Result<MonomialIdeal> {
    let f: IdealFile = serde_json::from_str(s).map_err(|e| malformed("ideal", e))?;
    let vars = VariableSet::new(f.vars)?;
    let gens = f
        .gens
        .iter()
        .map(|m| dense(&vars, m).map(Monomial::from_exps))
        .collect::<Result<Vec<_>>>()?;
    MonomialIdeal::new(vars, gens)
}

pub fn certificate_to_json(c: &StanleyCertificate) -> String {
    pretty(&CertificateFile {
        vars: c.vars.names().to_vec(),
        g: c.vars
            .names()
            .iter()
            .cloned()
            .zip(c.g.iter().copied())
            .collect(),
        claimed_d: c.claimed_d,
        intervals: c
            .intervals
            .iter()
            .map(|iv| IntervalFile {
                a: sparse(&c.vars, &iv.a),
                b: sparse(&c.vars, &iv.b),
            })
            .collect(),
    })
}

pub fn certificate_from_json(s: &str) -> Result<StanleyCertificate> {
    let f: CertificateFile = serde_json::from_str(s).map_err(|e| malformed("certificate", e))?;
    let vars = VariableSet::new(f.vars)?;
    let g = dense(&vars, &f.g)?;
    let intervals = f
        .intervals
        .iter()
        .map(|iv| {
            Ok(Interval {
                a: dense(&vars, &iv.a)?,
                b: dense(&vars, &iv.b)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StanleyCertificate {
        vars,
        g,
        claimed_d: f.claimed_d,
        intervals,
    })
}

pub fn betti_to_json(b: &BettiTable) -> String {
    let entries: Vec<BettiEntry> = b
        .entries()
        .map(|(i, m, rank)| BettiEntry {
            i,
            deg: sparse(b.vars(), m.exps()),
            rank,
        })
        .collect();
    pretty(&entries)
}
