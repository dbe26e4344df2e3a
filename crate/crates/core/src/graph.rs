//! Caterpillar and lobster tree families plus the graph statistics consumed
//! by the bound formulas.
//!
//! Labels are canonical: spine vertices `u1..un` (caterpillar) or `v1..vr`
//! followed by the center `vc` (lobster), then pendants `y{j}_{i}` /
//! `x{j}_{i}` in `(i, j)` order. The vertex order doubles as the variable
//! order of the edge ideal.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Family {
    Caterpillar { n: usize, k: usize, l: usize },
    Lobster { r: usize, p: usize, q: usize },
}

impl Family {
    pub fn build(self) -> Result<Graph> {
        match self {
            Family::Caterpillar { n, k, l } => build_caterpillar(n, k, l),
            Family::Lobster { r, p, q } => build_lobster(r, p, q),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Family::Caterpillar { .. } => "caterpillar",
            Family::Lobster { .. } => "lobster",
        }
    }
}

/// A simple undirected graph on labelled vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
    family: Option<Family>,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicate edges, duplicate labels and
    /// edges with undeclared endpoints.
    pub fn new(vertices: Vec<String>, edges: Vec<(String, String)>) -> Result<Graph> {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.as_str(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate vertex `{v}`")));
            }
        }
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (a, b) in &edges {
            let ia = *index
                .get(a.as_str())
                .ok_or_else(|| Error::UnknownVariable(a.clone()))?;
            let ib = *index
                .get(b.as_str())
                .ok_or_else(|| Error::UnknownVariable(b.clone()))?;
            if ia == ib {
                return Err(Error::Invalid(format!("loop at `{a}`")));
            }
            if !seen.insert((ia.min(ib), ia.max(ib))) {
                return Err(Error::Invalid(format!("duplicate edge {a}-{b}")));
            }
            out.push((ia, ib));
        }
        Ok(Graph {
            vertices,
            edges: out,
            family: None,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Edges as vertex-index pairs, in construction order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_labels(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges
            .iter()
            .map(|&(a, b)| (self.vertices[a].as_str(), self.vertices[b].as_str()))
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn with_family(mut self, family: Option<Family>) -> Self {
        self.family = family;
        self
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn is_tree(&self) -> bool {
        let stats = graph_stats(self);
        stats.components == 1 && self.edges.len() + 1 == self.vertices.len()
    }

    /// Pendant edges as `(leaf, neighbor)` index pairs.
    pub fn pendant_edges(&self) -> Vec<(usize, usize)> {
        let adj = self.adjacency();
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if adj[a].len() == 1 {
                out.push((a, b));
            }
            if adj[b].len() == 1 {
                out.push((b, a));
            }
        }
        out
    }
}

fn param_err(msg: impl Into<String>) -> Error {
    Error::ParameterDomain(msg.into())
}

/// The caterpillar `P_{n,k,l}`: a path `u1..un` with `k-1` pendants on each
/// `u_i` for `i < n` and `l-1` pendants on `u_n`.
pub fn build_caterpillar(n: usize, k: usize, l: usize) -> Result<Graph> {
    if n < 1 {
        return Err(param_err(format!("caterpillar needs n >= 1, got n = {n}")));
    }
    if k < 2 {
        return Err(param_err(format!("caterpillar needs k >= 2, got k = {k}")));
    }
    if l < 1 || l > k {
        return Err(param_err(format!(
            "caterpillar needs 1 <= l <= k, got l = {l}, k = {k}"
        )));
    }
    if n == 1 && l != k {
        return Err(param_err(format!(
            "caterpillar with n = 1 is the star P_(1,k) and needs l = k, got l = {l}, k = {k}"
        )));
    }
    let mut vertices: Vec<String> = (1..=n).map(|i| format!("u{i}")).collect();
    let mut edges = Vec::new();
    for i in 1..n {
        edges.push((format!("u{i}"), format!("u{}", i + 1)));
    }
    for i in 1..=n {
        let pendants = if i < n { k - 1 } else { l - 1 };
        for j in 1..=pendants {
            let y = format!("y{j}_{i}");
            vertices.push(y.clone());
            edges.push((format!("u{i}"), y));
        }
    }
    Ok(Graph::new(vertices, edges)?.with_family(Some(Family::Caterpillar { n, k, l })))
}

/// The lobster `S_{r,p,q}`: center `vc` joined to spokes `v1..vr`, with `p`
/// pendants on each `v_i` for `i < r` and `q` pendants on `v_r`.
pub fn build_lobster(r: usize, p: usize, q: usize) -> Result<Graph> {
    if r < 2 {
        return Err(param_err(format!("lobster needs r >= 2, got r = {r}")));
    }
    if p < 1 {
        return Err(param_err(format!("lobster needs p >= 1, got p = {p}")));
    }
    if q > p {
        return Err(param_err(format!(
            "lobster needs 0 <= q <= p, got q = {q}, p = {p}"
        )));
    }
    let mut vertices: Vec<String> = (1..=r).map(|i| format!("v{i}")).collect();
    vertices.push("vc".to_string());
    let mut edges: Vec<(String, String)> = (1..=r)
        .map(|i| ("vc".to_string(), format!("v{i}")))
        .collect();
    for i in 1..=r {
        let pendants = if i < r { p } else { q };
        for j in 1..=pendants {
            let x = format!("x{j}_{i}");
            vertices.push(x.clone());
            edges.push((format!("v{i}"), x));
        }
    }
    Ok(Graph::new(vertices, edges)?.with_family(Some(Family::Lobster { r, p, q })))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub diameter: usize,
    pub components: usize,
    pub near_leaves: usize,
    pub leaves: usize,
    pub is_bipartite: bool,
}

/// Diameter (largest eccentricity over all components), component count,
/// leaves, near leaves and bipartiteness of any simple graph.
pub fn graph_stats(g: &Graph) -> GraphStats {
    let adj = g.adjacency();
    let n = adj.len();
    let is_leaf: Vec<bool> = adj.iter().map(|a| a.len() == 1).collect();
    let leaves = is_leaf.iter().filter(|&&b| b).count();
    let near_leaves = (0..n)
        .filter(|&v| !is_leaf[v] && !adj[v].is_empty())
        .filter(|&v| adj[v].iter().filter(|&&w| !is_leaf[w]).count() <= 1)
        .count();

    let mut color = vec![u8::MAX; n];
    let mut components = 0;
    let mut is_bipartite = true;
    for s in 0..n {
        if color[s] != u8::MAX {
            continue;
        }
        components += 1;
        color[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if color[w] == u8::MAX {
                    color[w] = 1 - color[v];
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    is_bipartite = false;
                }
            }
        }
    }

    let mut diameter = 0;
    let mut dist = vec![usize::MAX; n];
    for s in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            diameter = diameter.max(dist[v]);
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }

    GraphStats {
        diameter,
        components: components.max(usize::from(n == 0)),
        near_leaves,
        leaves,
        is_bipartite,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caterpillar_sizes() {
        let g = build_caterpillar(4, 7, 7).unwrap();
        assert_eq!(g.vertices().len(), 28);
        assert!(g.is_tree());
        let g = build_caterpillar(4, 7, 5).unwrap();
        assert_eq!(g.vertices().len(), 3 * 7 + 5);
        assert_eq!(g.edges().len(), 25);
    }

    #[test]
    fn one_block_caterpillar_is_a_star() {
        let g = build_caterpillar(1, 5, 5).unwrap();
        assert_eq!(g.vertices().len(), 5);
        assert!(g.edges().iter().all(|&(a, _)| a == 0));
        assert!(build_caterpillar(1, 5, 3).is_err());
    }

    #[test]
    fn smallest_restricted_caterpillar() {
        let g = build_caterpillar(2, 2, 1).unwrap();
        assert_eq!(g.vertices(), &["u1", "u2", "y1_1"]);
        let labels: Vec<_> = g.edge_labels().collect();
        assert_eq!(labels, vec![("u1", "u2"), ("u1", "y1_1")]);
    }

    #[test]
    fn caterpillar_rejects_bad_parameters() {
        assert!(matches!(build_caterpillar(0, 3, 3), Err(Error::ParameterDomain(_))));
        assert!(matches!(build_caterpillar(3, 1, 1), Err(Error::ParameterDomain(_))));
        assert!(matches!(build_caterpillar(3, 3, 4), Err(Error::ParameterDomain(_))));
        assert!(matches!(build_caterpillar(3, 3, 0), Err(Error::ParameterDomain(_))));
    }

    #[test]
    fn lobster_sizes() {
        let g = build_lobster(8, 4, 4).unwrap();
        assert_eq!(g.vertices().len(), 41);
        assert!(g.is_tree());
        let g = build_lobster(8, 4, 0).unwrap();
        assert_eq!(g.vertices().len(), 9 + 28);
        assert_eq!(g.degree(g.vertex_index("v8").unwrap()), 1);
        let g = build_lobster(2, 1, 1).unwrap();
        assert_eq!(g.vertices().len(), 5);
        assert!(build_lobster(1, 1, 1).is_err());
        assert!(build_lobster(3, 0, 0).is_err());
        assert!(build_lobster(3, 1, 2).is_err());
    }

    #[test]
    fn stats_of_reference_members() {
        let s = graph_stats(&build_caterpillar(50, 10, 10).unwrap());
        assert_eq!((s.diameter, s.near_leaves, s.components), (51, 2, 1));
        let s = graph_stats(&build_lobster(55, 3, 3).unwrap());
        assert_eq!((s.diameter, s.near_leaves), (4, 55));
    }

    #[test]
    fn stats_of_single_edge() {
        let g = Graph::new(vec!["a".into(), "b".into()], vec![("a".into(), "b".into())]).unwrap();
        let s = graph_stats(&g);
        assert_eq!(s.diameter, 1);
        assert_eq!(s.near_leaves, 0);
        assert_eq!(s.components, 1);
        assert_eq!(s.leaves, 2);
        assert!(s.is_bipartite);
    }

    #[test]
    fn stats_detect_odd_cycles_and_components() {
        let v: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let e = vec![
            ("a".into(), "b".into()),
            ("b".into(), "c".into()),
            ("c".into(), "a".into()),
        ];
        let s = graph_stats(&Graph::new(v, e).unwrap());
        assert!(!s.is_bipartite);
        assert_eq!(s.components, 2);
        assert_eq!(s.diameter, 1);
    }

    #[test]
    fn simple_graph_invariants_are_enforced() {
        let v = vec!["a".to_string(), "b".to_string()];
        assert!(Graph::new(v.clone(), vec![("a".into(), "a".into())]).is_err());
        assert!(Graph::new(
            v.clone(),
            vec![("a".into(), "b".into()), ("b".into(), "a".into())]
        )
        .is_err());
        assert!(matches!(
            Graph::new(v, vec![("a".into(), "z".into())]),
            Err(Error::UnknownVariable(_))
        ));
    }
}
