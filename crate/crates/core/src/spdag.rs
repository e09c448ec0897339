//! The union `D` of all shortest s–t paths and its orientation `D⁺`.
//!
//! `D′` keeps every vertex with `d_s + d_t = d(s,t)` and every tight edge
//! between such vertices. Vertices of `D′` that hang off a cut vertex, away
//! from both `s` and `t` (knobs), cannot lie on a simple shortest path and
//! are pruned. In `D⁺` positive edges point toward `t` and zero edges are
//! traversable both ways.

use crate::graph::{Graph, Length, Query, Vertex};
use crate::sssp::DistLabels;

/// `D′`: vertex flags and tight edge ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSubgraph {
    pub in_set: Vec<bool>,
    pub edges: Vec<usize>,
}

pub fn build_candidate_subgraph(g: &Graph, labels: &DistLabels) -> CandidateSubgraph {
    let in_set: Vec<bool> = (0..g.n()).map(|v| labels.on_shortest(v)).collect();
    let edges = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| in_set[e.u] && in_set[e.v] && labels.ds[e.u].abs_diff(labels.ds[e.v]) == Length::from(e.w))
        .map(|(id, _)| id)
        .collect();
    CandidateSubgraph { in_set, edges }
}

/// Vertex set of `D`: `D′` minus every knob, iterated to a fixpoint.
pub fn prune_knobs(g: &Graph, cand: &CandidateSubgraph, q: Query) -> Vec<bool> {
    let mut alive = cand.in_set.clone();
    let mut edge_ok = vec![false; g.m()];
    for &id in &cand.edges {
        edge_ok[id] = true;
    }
    loop {
        let removed = knob_round(g, &mut alive, &edge_ok, q);
        if removed == 0 {
            return alive;
        }
    }
}

/// One depth-first search from `s` over the live part of `D′`. A DFS child
/// `c` of `x` with `low[c] >= disc[x]` roots a subtree that `x` cuts off;
/// if `t` is not inside it, the subtree is a knob.
fn knob_round(g: &Graph, alive: &mut [bool], edge_ok: &[bool], q: Query) -> usize {
    const UNSEEN: usize = usize::MAX;
    let n = g.n();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut size = vec![1usize; n];
    let mut by_disc = Vec::new();
    let mut knob_roots = Vec::new();

    // (vertex, edge used to enter it, next neighbor index)
    let mut stack: Vec<(Vertex, usize, usize)> = vec![(q.s, usize::MAX, 0)];
    disc[q.s] = 0;
    low[q.s] = 0;
    by_disc.push(q.s);

    while let Some(frame) = stack.last_mut() {
        let (v, via, idx) = *frame;
        let nbrs = g.neighbors(v);
        if idx < nbrs.len() {
            frame.2 += 1;
            let (u, id) = nbrs[idx];
            if !edge_ok[id] || !alive[u] || id == via {
                continue;
            }
            if disc[u] == UNSEEN {
                disc[u] = by_disc.len();
                low[u] = disc[u];
                by_disc.push(u);
                stack.push((u, id, 0));
            } else {
                low[v] = low[v].min(disc[u]);
            }
        } else {
            stack.pop();
            if let Some(&(p, _, _)) = stack.last() {
                low[p] = low[p].min(low[v]);
                size[p] += size[v];
                if low[v] >= disc[p] {
                    knob_roots.push(v);
                }
            }
        }
    }

    let t_disc = disc[q.t];
    let mut removed = 0;
    for c in knob_roots {
        let range = disc[c]..disc[c] + size[c];
        if t_disc != UNSEEN && range.contains(&t_disc) {
            continue;
        }
        for &v in &by_disc[range] {
            if alive[v] {
                alive[v] = false;
                removed += 1;
            }
        }
    }
    // Anything unreachable from s inside D′ cannot be on an s–t path either.
    for v in 0..n {
        if alive[v] && disc[v] == UNSEEN {
            alive[v] = false;
            removed += 1;
        }
    }
    removed
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: Vertex,
    pub to: Vertex,
    pub w: u32,
}

/// `D` together with its orientation `D⁺`.
#[derive(Debug, Clone)]
pub struct SpDag {
    pub s: Vertex,
    pub t: Vertex,
    pub in_d: Vec<bool>,
    /// Membership of each graph edge in `E(D)`, indexed by edge id.
    pub edge_in_d: Vec<bool>,
    /// Positive edges of `D`, oriented toward `t`.
    pub arcs: Vec<Arc>,
    /// Zero-length edges of `D` as `(min, max)` pairs.
    pub zero_edges: Vec<(Vertex, Vertex)>,
    succ: Vec<Vec<Vertex>>,
    pred: Vec<Vec<Vertex>>,
    zero_adj: Vec<Vec<Vertex>>,
}

impl SpDag {
    /// Full construction: `D′`, knob pruning, orientation.
    pub fn build(g: &Graph, labels: &DistLabels, q: Query) -> Self {
        let cand = build_candidate_subgraph(g, labels);
        let in_d = prune_knobs(g, &cand, q);
        orient_to_dplus(g, &cand, in_d, labels, q)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.in_d.len()
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.in_d[v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n()).filter(|&v| self.in_d[v])
    }

    /// Out-neighbors in `D⁺`: heads of positive arcs plus zero neighbors.
    #[inline]
    pub fn successors(&self, v: Vertex) -> &[Vertex] {
        &self.succ[v]
    }

    /// In-neighbors in `D⁺`.
    #[inline]
    pub fn predecessors(&self, v: Vertex) -> &[Vertex] {
        &self.pred[v]
    }

    #[inline]
    pub fn zero_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.zero_adj[v]
    }
}

/// Orients the edges of `D` (the candidate edges whose endpoints survived
/// pruning): positive edges from smaller to larger `d_s`, zero edges both
/// ways except into `s` and out of `t`.
pub fn orient_to_dplus(g: &Graph, cand: &CandidateSubgraph, in_d: Vec<bool>, labels: &DistLabels, q: Query) -> SpDag {
    let n = g.n();
    let mut edge_in_d = vec![false; g.m()];
    let mut arcs = Vec::new();
    let mut zero_edges = Vec::new();
    let mut succ = vec![Vec::new(); n];
    let mut pred = vec![Vec::new(); n];
    let mut zero_adj = vec![Vec::new(); n];
    for &id in &cand.edges {
        let e = g.edge(id);
        if !(in_d[e.u] && in_d[e.v]) {
            continue;
        }
        edge_in_d[id] = true;
        if e.w == 0 {
            zero_edges.push((e.u, e.v));
            zero_adj[e.u].push(e.v);
            zero_adj[e.v].push(e.u);
            // No simple s–t path enters s or leaves t.
            for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                if b != q.s && a != q.t {
                    succ[a].push(b);
                    pred[b].push(a);
                }
            }
        } else {
            let (from, to) = if labels.ds[e.u] < labels.ds[e.v] {
                (e.u, e.v)
            } else {
                (e.v, e.u)
            };
            arcs.push(Arc { from, to, w: e.w });
            succ[from].push(to);
            pred[to].push(from);
        }
    }
    SpDag {
        s: q.s,
        t: q.t,
        in_d,
        edge_in_d,
        arcs,
        zero_edges,
        succ,
        pred,
        zero_adj,
    }
}
