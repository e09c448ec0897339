//! Brute-force ground truth for small instances.
//!
//! Everything here is deliberately naive and shares no code with the fast
//! pipeline beyond the graph type: paths are enumerated by depth-first
//! search, `D` is read off the enumerated shortest paths, dominators come
//! from vertex removal, and max-flow uses plain depth-first augmentation.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::dominators::Digraph;
use crate::flow::{FlowNetwork, INF};
use crate::graph::{Graph, Length, Query, Vertex};

pub const DEFAULT_CAP: usize = 200_000;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum OracleError {
    #[error("more than {0} simple s-t paths; shrink the instance")]
    Truncated(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathEnumeration {
    pub paths: Vec<(Vec<Vertex>, Length)>,
    pub truncated: bool,
}

pub fn enumerate_simple_st_paths(g: &Graph, q: Query, cap: usize) -> PathEnumeration {
    fn dfs(
        g: &Graph,
        t: Vertex,
        cap: usize,
        path: &mut Vec<Vertex>,
        len: Length,
        seen: &mut [bool],
        out: &mut PathEnumeration,
    ) {
        if out.truncated {
            return;
        }
        let v = *path.last().unwrap();
        if v == t {
            if out.paths.len() == cap {
                out.truncated = true;
            } else {
                out.paths.push((path.clone(), len));
            }
            return;
        }
        for &(u, id) in g.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                path.push(u);
                dfs(g, t, cap, path, len + Length::from(g.edge(id).w), seen, out);
                path.pop();
                seen[u] = false;
            }
        }
    }
    let mut out = PathEnumeration {
        paths: Vec::new(),
        truncated: false,
    };
    let mut seen = vec![false; g.n()];
    seen[q.s] = true;
    dfs(g, q.t, cap, &mut vec![q.s], 0, &mut seen, &mut out);
    out
}

/// An enumeration with the facts every other oracle derives from it.
#[derive(Debug, Clone)]
pub struct OracleInstance {
    pub query: Query,
    pub paths: Vec<(Vec<Vertex>, Length)>,
    pub shortest: Length,
    /// Vertices on some shortest s–t path.
    pub d_vertices: BTreeSet<Vertex>,
    /// Arcs `(u, v)` of `D⁺`: positive edges in the direction some shortest
    /// path uses them, zero edges both ways.
    pub d_arcs: BTreeSet<(Vertex, Vertex)>,
    /// `(u, v, w)` with `u < v` for every edge of `D`.
    pub d_edges: BTreeSet<(Vertex, Vertex, u32)>,
}

impl OracleInstance {
    pub fn new(g: &Graph, q: Query) -> Result<Self, OracleError> {
        Self::with_cap(g, q, DEFAULT_CAP)
    }

    pub fn with_cap(g: &Graph, q: Query, cap: usize) -> Result<Self, OracleError> {
        let e = enumerate_simple_st_paths(g, q, cap);
        if e.truncated {
            return Err(OracleError::Truncated(cap));
        }
        let shortest = e
            .paths
            .iter()
            .map(|p| p.1)
            .min()
            .expect("query endpoints are connected");
        let mut d_vertices = BTreeSet::new();
        let mut d_arcs = BTreeSet::new();
        let mut d_edges = BTreeSet::new();
        for (p, len) in &e.paths {
            if *len != shortest {
                continue;
            }
            d_vertices.extend(p.iter().copied());
            for pair in p.windows(2) {
                let (u, v) = (pair[0], pair[1]);
                let w = g.weight(u, v).unwrap();
                d_arcs.insert((u, v));
                if w == 0 {
                    d_arcs.insert((v, u));
                }
                d_edges.insert((u.min(v), u.max(v), w));
            }
        }
        Ok(Self {
            query: q,
            paths: e.paths,
            shortest,
            d_vertices,
            d_arcs,
            d_edges,
        })
    }

    pub fn in_d(&self, u: Vertex, v: Vertex) -> bool {
        self.d_arcs.contains(&(u, v)) || self.d_arcs.contains(&(v, u))
    }

    pub fn next_to_shortest(&self) -> Option<Length> {
        self.paths.iter().map(|p| p.1).filter(|&l| l > self.shortest).min()
    }

    /// Shortest strictly longer path made only of `D` edges.
    pub fn zigzag_min(&self) -> Option<Length> {
        self.paths
            .iter()
            .filter(|(p, l)| *l > self.shortest && p.windows(2).all(|e| self.in_d(e[0], e[1])))
            .map(|p| p.1)
            .min()
    }

    /// Shortest path with at least one edge outside `D`.
    pub fn detour_min(&self) -> Option<Length> {
        self.paths
            .iter()
            .filter(|(p, _)| p.windows(2).any(|e| !self.in_d(e[0], e[1])))
            .map(|p| p.1)
            .min()
    }

    /// Whether some simple s–t path inside `D` goes forward to `x`, backward
    /// to `y` over at least one reversed positive arc, then forward to `t`.
    pub fn valid_backward_pair(&self, g: &Graph, x: Vertex, y: Vertex) -> bool {
        self.backward_pair(g, x, y, false)
    }

    /// As [`Self::valid_backward_pair`], with the backward stretch required
    /// to start and end on a reversed positive arc.
    pub fn strict_backward_pair(&self, g: &Graph, x: Vertex, y: Vertex) -> bool {
        self.backward_pair(g, x, y, true)
    }

    fn backward_pair(&self, g: &Graph, x: Vertex, y: Vertex, strict: bool) -> bool {
        if x == y {
            return false;
        }
        let fwd = |u: Vertex, v: Vertex| self.d_arcs.contains(&(u, v));
        self.paths.iter().any(|(p, _)| {
            let (Some(i), Some(j)) = (p.iter().position(|&v| v == x), p.iter().position(|&v| v == y)) else {
                return false;
            };
            if i >= j || !p.windows(2).all(|e| self.in_d(e[0], e[1])) {
                return false;
            }
            let steps: Vec<(Vertex, Vertex)> = p.windows(2).map(|e| (e[0], e[1])).collect();
            steps[..i].iter().all(|&(u, v)| fwd(u, v))
                && steps[i..j].iter().all(|&(u, v)| fwd(v, u))
                && steps[i..j].iter().any(|&(u, v)| g.weight(u, v).unwrap() > 0)
                && steps[j..].iter().all(|&(u, v)| fwd(u, v))
                && (!strict || (g.weight(x, p[i + 1]).unwrap() > 0 && g.weight(p[j - 1], y).unwrap() > 0))
        })
    }

    /// `D⁺` as a digraph over all graph vertices, without arcs entering `s`
    /// or leaving `t`.
    pub fn dplus(&self, n: usize) -> Digraph {
        let mut present = vec![false; n];
        for &v in &self.d_vertices {
            present[v] = true;
        }
        let mut dg = Digraph::with_present(present);
        for &(u, v) in &self.d_arcs {
            if v != self.query.s && u != self.query.t {
                dg.add_arc(u, v);
            }
        }
        dg
    }
}

pub fn oracle_next_to_shortest(g: &Graph, q: Query) -> Result<Option<Length>, OracleError> {
    Ok(OracleInstance::new(g, q)?.next_to_shortest())
}

pub fn oracle_valid_backward_pair(g: &Graph, q: Query, x: Vertex, y: Vertex) -> Result<bool, OracleError> {
    Ok(OracleInstance::new(g, q)?.valid_backward_pair(g, x, y))
}

/// Single-source distances by repeated relaxation over every edge.
pub fn oracle_distances(g: &Graph, root: Vertex) -> Vec<Length> {
    let mut dist = vec![Length::MAX; g.n()];
    dist[root] = 0;
    let mut changed = true;
    while changed {
        changed = false;
        for e in g.edges() {
            let w = Length::from(e.w);
            for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                if dist[a] != Length::MAX && dist[a] + w < dist[b] {
                    dist[b] = dist[a] + w;
                    changed = true;
                }
            }
        }
    }
    dist
}

/// Simple directed paths `from ⇝ to`, at most `cap` of them.
pub fn directed_paths(dg: &Digraph, from: Vertex, to: Vertex, cap: usize) -> Vec<Vec<Vertex>> {
    fn go(dg: &Digraph, to: Vertex, cap: usize, path: &mut Vec<Vertex>, seen: &mut [bool], out: &mut Vec<Vec<Vertex>>) {
        let v = *path.last().unwrap();
        if v == to {
            out.push(path.clone());
            return;
        }
        for &u in dg.successors(v) {
            if out.len() >= cap {
                return;
            }
            if !seen[u] {
                seen[u] = true;
                path.push(u);
                go(dg, to, cap, path, seen, out);
                path.pop();
                seen[u] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut seen = vec![false; dg.n()];
    seen[from] = true;
    go(dg, to, cap, &mut vec![from], &mut seen, &mut out);
    out
}

fn reaches(dg: &Digraph, root: Vertex, target: Vertex, removed: Option<Vertex>) -> bool {
    if Some(root) == removed {
        return false;
    }
    let mut seen = vec![false; dg.n()];
    let mut stack = vec![root];
    seen[root] = true;
    while let Some(v) = stack.pop() {
        if v == target {
            return true;
        }
        for &u in dg.successors(v) {
            if !seen[u] && Some(u) != removed {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    false
}

/// Immediate dominator of `v` (≠ `root`) by removal tests: the strict
/// dominator that all other strict dominators also dominate.
pub fn oracle_immediate_dominator(dg: &Digraph, root: Vertex, v: Vertex) -> Vertex {
    assert!(
        v != root && reaches(dg, root, v, None),
        "v must be reachable and distinct from root"
    );
    let dom = |a: Vertex, b: Vertex| a == root || a == b || !reaches(dg, root, b, Some(a));
    let strict: Vec<Vertex> = (0..dg.n()).filter(|&u| u != v && dom(u, v)).collect();
    *strict
        .iter()
        .find(|&&c| strict.iter().all(|&o| dom(o, c)))
        .expect("strict dominators form a chain")
}

/// Maximum flow value, with unbounded capacities taken as 2⁴⁰.
pub fn oracle_max_flow(net: &FlowNetwork) -> u64 {
    const BIG: u64 = 1 << 40;
    let widen = |c: u32| if c == INF { BIG } else { u64::from(c) };
    let n = net.len();
    let size = 2 * n;
    let mut cap = vec![vec![0u64; size]; size];
    for i in 0..n {
        cap[2 * i][2 * i + 1] += widen(net.cap[i]);
    }
    for &(a, b, c) in &net.arcs {
        cap[2 * a + 1][2 * b] += widen(c);
    }
    let (src, dst) = (2 * net.source + 1, 2 * net.sink);

    fn augment(cap: &mut [Vec<u64>], u: usize, dst: usize, limit: u64, seen: &mut [bool]) -> u64 {
        if u == dst {
            return limit;
        }
        seen[u] = true;
        for v in 0..cap.len() {
            if !seen[v] && cap[u][v] > 0 {
                let got = augment(cap, v, dst, limit.min(cap[u][v]), seen);
                if got > 0 {
                    cap[u][v] -= got;
                    cap[v][u] += got;
                    return got;
                }
            }
        }
        0
    }

    let mut total = 0;
    loop {
        let mut seen = vec![false; size];
        let got = augment(&mut cap, src, dst, BIG, &mut seen);
        if got == 0 || total >= BIG {
            return total.min(BIG);
        }
        total += got;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::flow::FlowNode;

    #[test]
    fn enumeration_examples() {
        let f = fixtures::chain();
        let e = enumerate_simple_st_paths(&f.graph, f.query(), 10);
        assert_eq!(e.paths, vec![(vec![0, 1, 2], 2)]);

        let f = fixtures::g_tri();
        let mut e = enumerate_simple_st_paths(&f.graph, f.query(), 10);
        e.paths.sort();
        assert_eq!(e.paths, vec![(vec![0, 1, 2], 2), (vec![0, 2], 1)]);
        assert!(!e.truncated);
        assert!(enumerate_simple_st_paths(&f.graph, f.query(), 1).truncated);
    }

    #[test]
    fn next_to_shortest_examples() {
        let f = fixtures::g_tri();
        assert_eq!(oracle_next_to_shortest(&f.graph, f.query()), Ok(Some(2)));
        let f = fixtures::g_quad0();
        assert_eq!(oracle_next_to_shortest(&f.graph, f.query()), Ok(None));
        let f = fixtures::g_t2();
        assert_eq!(oracle_next_to_shortest(&f.graph, f.query()), Ok(Some(5)));
    }

    #[test]
    fn truncation_is_an_error() {
        let f = fixtures::g_tri();
        assert_eq!(
            OracleInstance::with_cap(&f.graph, f.query(), 1).unwrap_err(),
            OracleError::Truncated(1)
        );
    }

    #[test]
    fn dominator_examples() {
        let dg = Digraph::from_arcs(3, [(0, 1), (1, 2)]);
        assert_eq!(oracle_immediate_dominator(&dg, 0, 2), 1);

        let f = fixtures::g_pent();
        let o = OracleInstance::new(&f.graph, f.query()).unwrap();
        assert_eq!(oracle_immediate_dominator(&o.dplus(4), 0, 3), 0);

        let f = fixtures::g_t2();
        let o = OracleInstance::new(&f.graph, f.query()).unwrap();
        assert_eq!(oracle_immediate_dominator(&o.dplus(6), 0, 3), 0);
    }

    #[test]
    fn backward_pair_examples() {
        // s=0 u=1 v=2 t=3
        let f = fixtures::g_pent();
        let o = OracleInstance::new(&f.graph, f.query()).unwrap();
        assert!(o.valid_backward_pair(&f.graph, 2, 1));
        assert!(!o.valid_backward_pair(&f.graph, 1, 2));
        assert!(!o.valid_backward_pair(&f.graph, 1, 1));
    }

    #[test]
    fn split_minima() {
        let f = fixtures::g_pent();
        let o = OracleInstance::new(&f.graph, f.query()).unwrap();
        assert_eq!((o.zigzag_min(), o.detour_min()), (Some(5), None));
        let f = fixtures::g_tri();
        let o = OracleInstance::new(&f.graph, f.query()).unwrap();
        assert_eq!((o.zigzag_min(), o.detour_min()), (None, Some(2)));
    }

    #[test]
    fn max_flow_oracle() {
        let mut net = FlowNetwork::new();
        let a = net.add_node(FlowNode::Vertex(0), 2);
        let b = net.add_node(FlowNode::Vertex(1), 1);
        net.add_arc(net.source, a, INF);
        net.add_arc(a, b, INF);
        net.add_arc(a, net.sink, INF);
        net.add_arc(b, net.sink, INF);
        assert_eq!(oracle_max_flow(&net), 2);
        assert_eq!(oracle_max_flow(&FlowNetwork::new()), 0);
    }
}
