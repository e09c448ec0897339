//! Undirected weighted graphs, the plain-text edge-list format, and seeded
//! random instances.
//!
//! Edges are stored canonically (`u < v`, sorted by `(u, v)`), so two graphs
//! with the same edge set compare equal regardless of input order.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Dense 0-based vertex id.
pub type Vertex = usize;

/// Path lengths accumulate in 64 bits; single edge lengths fit in 32.
pub type Length = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub w: u32,
}

impl Edge {
    /// The endpoint opposite `x`.
    #[inline]
    pub fn other(&self, x: Vertex) -> Vertex {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: negative edge weight")]
    NegativeWeight { line: usize },
    #[error("line {line}: self-loop")]
    SelfLoop { line: usize },
    #[error("line {line}: duplicate edge")]
    DuplicateEdge { line: usize },
    #[error("line {line}: vertex id out of range")]
    VertexOutOfRange { line: usize },
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("infeasible generator parameters: {0}")]
    InvalidParameters(String),
}

/// Simple, connected, undirected graph with nonnegative integer edge lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(Vertex, usize)>>,
}

impl Graph {
    /// Builds a graph from an edge list, checking simplicity and connectivity.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex, u32)>) -> Result<Self, GraphError> {
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for (i, (u, v, w)) in edges.into_iter().enumerate() {
            // Positional "line" numbers for in-memory construction: edge i is line i + 2.
            let line = i + 2;
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { line });
            }
            if u == v {
                return Err(GraphError::SelfLoop { line });
            }
            let (a, b) = (u.min(v), u.max(v));
            if !seen.insert((a, b)) {
                return Err(GraphError::DuplicateEdge { line });
            }
            list.push(Edge { u: a, v: b, w });
        }
        let g = Self::assemble(n, list);
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    fn assemble(n: usize, mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable_by_key(|e| (e.u, e.v));
        let mut adj = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, id));
            adj[e.v].push((e.u, id));
        }
        Self { n, edges, adj }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    /// `(neighbor, edge id)` pairs incident to `v`.
    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, usize)] {
        &self.adj[v]
    }

    /// Edge id joining `u` and `v`, if any.
    pub fn edge_between(&self, u: Vertex, v: Vertex) -> Option<usize> {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].iter().find(|&&(x, _)| x == b).map(|&(_, id)| id)
    }

    pub fn weight(&self, u: Vertex, v: Vertex) -> Option<u32> {
        self.edge_between(u, v).map(|id| self.edges[id].w)
    }

    /// Total length of a vertex sequence, or `None` if two consecutive
    /// vertices are not adjacent.
    pub fn path_length(&self, path: &[Vertex]) -> Option<Length> {
        path.windows(2).map(|p| self.weight(p[0], p[1]).map(Length::from)).sum()
    }

    fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &(u, _) in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count == self.n
    }

    /// Serializes to the edge-list format, edges sorted by `(min, max)`.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 * (self.edges.len() + 1));
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", e.u, e.v, e.w);
        }
        out
    }
}

/// An `(s, t)` query against a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Query {
    pub s: Vertex,
    pub t: Vertex,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QueryError {
    #[error("source and target coincide ({0})")]
    SameEndpoints(Vertex),
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
}

impl Query {
    pub fn new(s: Vertex, t: Vertex) -> Self {
        Self { s, t }
    }

    pub fn validate(&self, g: &Graph) -> Result<(), QueryError> {
        for v in [self.s, self.t] {
            if v >= g.n() {
                return Err(QueryError::OutOfRange { vertex: v, n: g.n() });
            }
        }
        if self.s == self.t {
            return Err(QueryError::SameEndpoints(self.s));
        }
        Ok(())
    }
}

/// Parses the edge-list format: `#` comment lines, a header `n m`, then
/// exactly `m` lines `u v w`. Reported line numbers are 1-based.
pub fn parse_graph(text: &[u8]) -> Result<Graph, GraphError> {
    let text = std::str::from_utf8(text).map_err(|_| GraphError::Malformed {
        line: 0,
        reason: "input is not valid UTF-8".into(),
    })?;

    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty());

    let (hline, header) = lines.next().ok_or_else(|| GraphError::Malformed {
        line: 1,
        reason: "missing header".into(),
    })?;
    let nums = parse_fields(hline, header, 2)?;
    let (n, m) = (to_count(hline, nums[0])?, to_count(hline, nums[1])?);
    if n == 0 {
        return Err(GraphError::Malformed {
            line: hline,
            reason: "vertex count must be positive".into(),
        });
    }

    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    for (line, raw) in lines {
        if edges.len() == m {
            return Err(GraphError::EdgeCount {
                expected: m,
                found: m + 1,
            });
        }
        let f = parse_fields(line, raw, 3)?;
        if f[2] < 0 {
            return Err(GraphError::NegativeWeight { line });
        }
        let w = u32::try_from(f[2]).map_err(|_| GraphError::Malformed {
            line,
            reason: "weight exceeds 32 bits".into(),
        })?;
        let (u, v) = (to_count(line, f[0])?, to_count(line, f[1])?);
        if u >= n || v >= n {
            return Err(GraphError::VertexOutOfRange { line });
        }
        if u == v {
            return Err(GraphError::SelfLoop { line });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(GraphError::DuplicateEdge { line });
        }
        edges.push(Edge {
            u: u.min(v),
            v: u.max(v),
            w,
        });
    }
    if edges.len() != m {
        return Err(GraphError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    let g = Graph::assemble(n, edges);
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    Ok(g)
}

fn parse_fields(line: usize, raw: &str, want: usize) -> Result<Vec<i64>, GraphError> {
    let fields: Vec<&str> = raw.split_whitespace().collect();
    if fields.len() != want {
        return Err(GraphError::Malformed {
            line,
            reason: format!("expected {want} fields, found {}", fields.len()),
        });
    }
    fields
        .iter()
        .map(|f| {
            f.parse::<i64>().map_err(|_| GraphError::Malformed {
                line,
                reason: format!("not an integer: {f:?}"),
            })
        })
        .collect()
}

fn to_count(line: usize, x: i64) -> Result<usize, GraphError> {
    usize::try_from(x).map_err(|_| GraphError::Malformed {
        line,
        reason: format!("negative value {x}"),
    })
}

/// Seeded random connected simple graph: a random spanning tree, then
/// `m - (n - 1)` further edges drawn uniformly from the non-edges. Each weight
/// is 0 with probability `zero_prob`, otherwise uniform in `1..=max_w`.
pub fn random_graph(n: usize, m: usize, max_w: u32, zero_prob: f64, seed: u64) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidParameters("n must be positive".into()));
    }
    let pairs = n * (n - 1) / 2;
    if m + 1 < n || m > pairs {
        return Err(GraphError::InvalidParameters(format!(
            "need n-1 <= m <= n(n-1)/2, got n={n}, m={m}"
        )));
    }
    if !(0.0..=1.0).contains(&zero_prob) {
        return Err(GraphError::InvalidParameters(format!(
            "zero_prob {zero_prob} outside [0, 1]"
        )));
    }
    if max_w == 0 && zero_prob < 1.0 {
        return Err(GraphError::InvalidParameters(
            "max_w must be positive unless every weight is zero".into(),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(&mut rng);

    let mut present = HashSet::with_capacity(m);
    let mut pairs_out = Vec::with_capacity(m);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let (a, b) = (order[i].min(order[j]), order[i].max(order[j]));
        present.insert((a, b));
        pairs_out.push((a, b));
    }

    let extra = m - (n - 1);
    if extra > 0 && 2 * m > pairs {
        // Dense: draw from the explicit list of non-edges.
        let mut candidates: Vec<(Vertex, Vertex)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|p| !present.contains(p))
            .collect();
        let (chosen, _) = candidates.partial_shuffle(&mut rng, extra);
        pairs_out.extend_from_slice(chosen);
    } else {
        while pairs_out.len() < m {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a == b {
                continue;
            }
            let p = (a.min(b), a.max(b));
            if present.insert(p) {
                pairs_out.push(p);
            }
        }
    }

    let edges = pairs_out
        .into_iter()
        .map(|(u, v)| {
            let w = if rng.gen_bool(zero_prob) {
                0
            } else {
                rng.gen_range(1..=max_w)
            };
            Edge { u, v, w }
        })
        .collect();
    Ok(Graph::assemble(n, edges))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_triangle() {
        let g = parse_graph(b"3 3\n0 1 1\n0 2 1\n1 2 1\n").unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        assert_eq!(g.weight(2, 1), Some(1));
    }

    #[test]
    fn comments_are_skipped_and_lines_counted() {
        let g = parse_graph(b"# header\n2 1\n# mid\n1 0 7\n").unwrap();
        assert_eq!(g.edges(), &[Edge { u: 0, v: 1, w: 7 }]);
        assert_eq!(
            parse_graph(b"# c\n2 1\n0 1 -1\n"),
            Err(GraphError::NegativeWeight { line: 3 })
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            parse_graph(b"2 1\n0 1 -4\n"),
            Err(GraphError::NegativeWeight { line: 2 })
        );
        assert_eq!(
            parse_graph(b"3 2\n0 1 1\n0 1 2\n"),
            Err(GraphError::DuplicateEdge { line: 3 })
        );
        assert_eq!(
            parse_graph(b"3 2\n0 1 1\n2 2 1\n"),
            Err(GraphError::SelfLoop { line: 3 })
        );
        assert_eq!(parse_graph(b"4 2\n0 1 1\n2 3 1\n"), Err(GraphError::Disconnected));
        assert_eq!(
            parse_graph(b"3 2\n0 1 1\n0 5 1\n"),
            Err(GraphError::VertexOutOfRange { line: 3 })
        );
        assert_eq!(
            parse_graph(b"3 2\n0 1 1\n"),
            Err(GraphError::EdgeCount { expected: 2, found: 1 })
        );
        assert!(matches!(
            parse_graph(b"3 2\n0 1\n1 2 1\n"),
            Err(GraphError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph(b"2 1\n0 1 x\n"),
            Err(GraphError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph(b"2 1\n0 1 4294967296\n"),
            Err(GraphError::Malformed { line: 2, .. })
        ));
    }

    #[test]
    fn serialization_sorts_edges() {
        let g = Graph::from_edges(3, [(2, 1, 5), (1, 0, 3)]).unwrap();
        assert_eq!(g.to_text(), "3 2\n0 1 3\n1 2 5\n");
    }

    #[test]
    fn generator_is_deterministic() {
        let a = random_graph(20, 40, 5, 0.3, 99).unwrap();
        let b = random_graph(20, 40, 5, 0.3, 99).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert_ne!(a.to_text(), random_graph(20, 40, 5, 0.3, 100).unwrap().to_text());
    }

    #[test]
    fn generator_edge_cases() {
        let tree = random_graph(4, 3, 9, 0.0, 7).unwrap();
        assert_eq!(tree.m(), 3);
        assert!(tree.is_connected());
        let zero = random_graph(6, 10, 9, 1.0, 7).unwrap();
        assert!(zero.edges().iter().all(|e| e.w == 0));
        let full = random_graph(6, 15, 3, 0.5, 1).unwrap();
        assert_eq!(full.m(), 15);
        assert!(random_graph(4, 2, 1, 0.0, 0).is_err());
        assert!(random_graph(4, 7, 1, 0.0, 0).is_err());
    }

    #[test]
    fn query_validation() {
        let g = parse_graph(b"2 1\n0 1 1\n").unwrap();
        assert!(Query::new(0, 1).validate(&g).is_ok());
        assert_eq!(Query::new(1, 1).validate(&g), Err(QueryError::SameEndpoints(1)));
        assert!(Query::new(0, 2).validate(&g).is_err());
    }
}
