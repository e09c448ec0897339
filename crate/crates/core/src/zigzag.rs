//! Shortest zigzag paths: simple s–t paths inside `D` that traverse some
//! positive edge against its orientation.
//!
//! A shortest zigzag path has the shape `s ⇝ x`, then backward `x ⇝ y`,
//! then `y ⇝ t`, and costs `d(s,t) + 2·(d_s(x) − d_s(y))`. The search looks
//! for the pair `(x, y)` minimizing `δ = d_s(x) − d_s(y)` across four types
//! determined by dominance between the zero-components `Z(x)` and `Z(y)`:
//!
//! * type I pairs come from a sweep over component pairs satisfying β₁;
//! * types II–IV only need the mutually or one-sidedly immediate-dominating
//!   pairs of the auxiliary DAG, each decided by a small vertex-capacitated
//!   flow on `H_xy`.
//!
//! Witness paths are assembled from disjoint-path flows in `D⁺` and checked
//! before being returned.

use std::collections::VecDeque;

use thiserror::Error;

use crate::flow::{max_flow_at_least, FlowNetwork, FlowNode, FlowOutcome, INF};
use crate::graph::{Length, Vertex};
use crate::paths::{disjoint_dplus_paths, dplus_path_avoiding, for_each_dplus_path, is_simple, join};
use crate::spdag::SpDag;
use crate::sssp::DistLabels;
use crate::zero::{CompId, ZeroStructure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairKind {
    I,
    II,
    III,
    IV,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BackwardCandidate {
    pub x: Vertex,
    pub y: Vertex,
    pub delta: Length,
    pub kind: PairKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZigzagError {
    #[error("no witness path could be assembled for backward length {delta}")]
    RealizationExhausted { delta: Length },
}

/// Prefix paths tried per endpoint pair before giving up on it.
const ENUMERATION_LIMIT: usize = 256;

fn delta_of(zs: &ZeroStructure, cx: CompId, cy: CompId) -> Option<Length> {
    let (dx, dy) = (zs.partition.comp_ds[cx], zs.partition.comp_ds[cy]);
    (dx > dy).then(|| dx - dy)
}

fn is_type1(zs: &ZeroStructure, cx: CompId, cy: CompId) -> bool {
    zs.beta1_aux(cx, cy) && !zs.aux.idom_s.dominates(cy, cx) && !zs.aux.idom_t.dominates(cx, cy)
}

/// All type-I component pairs, sorted by `(δ, c_x, c_y)`.
pub fn type1_pairs(zs: &ZeroStructure) -> Vec<(CompId, CompId, Length)> {
    let k = zs.partition.len();
    let mut out = Vec::new();
    for cx in 0..k {
        for cy in 0..k {
            if let Some(delta) = delta_of(zs, cx, cy) {
                if is_type1(zs, cx, cy) {
                    out.push((cx, cy, delta));
                }
            }
        }
    }
    out.sort_unstable_by_key(|&(cx, cy, d)| (d, cx, cy));
    out
}

/// Minimum-δ type-I pair, with the smallest member of each component as
/// its representative.
pub fn type1_best(zs: &ZeroStructure) -> Option<BackwardCandidate> {
    type1_pairs(zs).first().map(|&(cx, cy, delta)| BackwardCandidate {
        x: zs.partition.members[cx][0],
        y: zs.partition.members[cy][0],
        delta,
        kind: PairKind::I,
    })
}

/// Component pairs that can host an optimal pair of type II, III or IV,
/// sorted by `(δ, kind, c_x, c_y)`.
pub fn candidate_component_pairs(zs: &ZeroStructure) -> Vec<(CompId, CompId, PairKind)> {
    let aux = &zs.aux;
    let mut out = Vec::new();
    let mut push = |cx: CompId, cy: CompId, kind: PairKind| {
        if let Some(delta) = delta_of(zs, cx, cy) {
            if zs.beta1_comp(cx, cy) {
                out.push((delta, kind, cx, cy));
            }
        }
    };
    for cx in 0..zs.partition.len() {
        if let Some(cy) = aux.idom_s.idom(cx) {
            if aux.idom_t.idom(cy) == Some(cx) {
                push(cx, cy, PairKind::II);
            } else if !aux.idom_t.dominates(cx, cy) {
                push(cx, cy, PairKind::III);
            }
        }
    }
    for cy in 0..zs.partition.len() {
        if let Some(cx) = aux.idom_t.idom(cy) {
            if aux.idom_s.idom(cx) != Some(cy) && !aux.idom_s.dominates(cy, cx) {
                push(cx, cy, PairKind::IV);
            }
        }
    }
    out.sort_unstable();
    out.into_iter().map(|(_, kind, cx, cy)| (cx, cy, kind)).collect()
}

/// The flow network `H⁺_xy` for a candidate component pair.
///
/// Vertices strictly between `Z(y)` and `Z(x)` in `≺` plus both components;
/// `D⁺` arcs among them except those inside a component, those entering
/// `Z(y)` and those leaving `Z(x)`. A connected piece touching exactly one
/// vertex of each component becomes a single capacity-1 arc. For type II
/// both components get vertex capacity 2; for type III `Z(y)` vertices get
/// capacity 1 so that two units must start at distinct vertices, and
/// symmetrically for type IV. Direct `Z(y) → Z(x)` arcs carry capacity 1.
pub fn build_candidate_network(d: &SpDag, zs: &ZeroStructure, cx: CompId, cy: CompId, kind: PairKind) -> FlowNetwork {
    let n = d.n();
    const OUT: u8 = 0;
    const MID: u8 = 1;
    const XS: u8 = 2;
    const YS: u8 = 3;
    let mut role = vec![OUT; n];
    let mut verts = Vec::new();
    for v in d.vertices() {
        let c = zs.comp(v);
        let r = if c == cx {
            XS
        } else if c == cy {
            YS
        } else if zs.aux.prec(cy, c) && zs.aux.prec(c, cx) {
            MID
        } else {
            continue;
        };
        role[v] = r;
        verts.push(v);
    }

    let keep = |u: Vertex, v: Vertex| -> bool {
        let (ru, rv) = (role[u], role[v]);
        ru != OUT && rv != OUT && ru != XS && rv != YS
    };

    // Undirected pieces of H_xy.
    let mut piece = vec![usize::MAX; n];
    let mut pieces: Vec<Vec<Vertex>> = Vec::new();
    let mut undirected: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for &v in &verts {
        for &u in d.successors(v) {
            if keep(v, u) {
                undirected[v].push(u);
                undirected[u].push(v);
            }
        }
    }
    for &v in &verts {
        if piece[v] != usize::MAX {
            continue;
        }
        let id = pieces.len();
        piece[v] = id;
        let mut list = vec![v];
        let mut queue = VecDeque::from([v]);
        while let Some(a) = queue.pop_front() {
            for &b in &undirected[a] {
                if piece[b] == usize::MAX {
                    piece[b] = id;
                    list.push(b);
                    queue.push_back(b);
                }
            }
        }
        pieces.push(list);
    }

    let (cap_x, cap_y) = match kind {
        PairKind::III => (2, 1),
        PairKind::IV => (1, 2),
        _ => (2, 2),
    };
    let mut net = FlowNetwork::new();
    let mut node = vec![usize::MAX; n];
    let ensure = |net: &mut FlowNetwork, node: &mut Vec<usize>, v: Vertex| -> usize {
        if node[v] == usize::MAX {
            let cap = match role[v] {
                XS => cap_x,
                YS => cap_y,
                _ => 1,
            };
            node[v] = net.add_node(FlowNode::Vertex(v), cap);
        }
        node[v]
    };

    for list in &pieces {
        let xs: Vec<Vertex> = list.iter().copied().filter(|&v| role[v] == XS).collect();
        let ys: Vec<Vertex> = list.iter().copied().filter(|&v| role[v] == YS).collect();
        if xs.is_empty() || ys.is_empty() {
            continue;
        }
        if xs.len() == 1 && ys.len() == 1 {
            let (u, v) = (xs[0], ys[0]);
            if directed_reach(d, v, u, |a, b| keep(a, b) && piece[b] == piece[v]) {
                let a = ensure(&mut net, &mut node, v);
                let b = ensure(&mut net, &mut node, u);
                net.add_arc(a, b, 1);
            }
            continue;
        }
        for &v in list {
            let a = ensure(&mut net, &mut node, v);
            for &u in d.successors(v) {
                if keep(v, u) {
                    let b = ensure(&mut net, &mut node, u);
                    // Two units over a direct arc would be two identical paths.
                    let cap = if role[v] == YS && role[u] == XS { 1 } else { INF };
                    net.add_arc(a, b, cap);
                }
            }
        }
    }

    let mut terminals: Vec<(usize, Vertex)> = (2..net.len())
        .filter_map(|i| match net.nodes[i] {
            FlowNode::Vertex(v) => Some((i, v)),
            _ => None,
        })
        .collect();
    terminals.sort_unstable_by_key(|&(_, v)| v);
    for (i, v) in terminals {
        match role[v] {
            YS => net.add_arc(net.source, i, INF),
            XS => net.add_arc(i, net.sink, INF),
            _ => {}
        }
    }
    net
}

fn directed_reach(d: &SpDag, from: Vertex, to: Vertex, ok: impl Fn(Vertex, Vertex) -> bool) -> bool {
    let mut seen = vec![false; d.n()];
    seen[from] = true;
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        if v == to {
            return true;
        }
        for &u in d.successors(v) {
            if !seen[u] && ok(v, u) {
                seen[u] = true;
                stack.push(u);
            }
        }
    }
    false
}

/// One flow test performed by the search, kept for auditing.
#[derive(Debug, Clone)]
pub struct FlowRecord {
    pub cx: CompId,
    pub cy: CompId,
    pub kind: PairKind,
    pub k: u32,
    pub network: FlowNetwork,
    pub outcome: FlowOutcome,
}

/// Outcome of the optimal-pair search: the best candidate plus every other
/// accepted candidate at the same δ, as fallbacks for realization.
#[derive(Debug, Clone, Default)]
pub struct PairSearch {
    pub best: Option<BackwardCandidate>,
    pub ties: Vec<BackwardCandidate>,
    pub flows: Vec<FlowRecord>,
}

/// Best backward pair across all four types.
pub fn best_backward_pair(d: &SpDag, zs: &ZeroStructure) -> Option<BackwardCandidate> {
    search_backward_pairs(d, zs).best
}

/// Runs the full search, recording each flow test.
pub fn search_backward_pairs(d: &SpDag, zs: &ZeroStructure) -> PairSearch {
    let members = &zs.partition.members;
    let rep = |cx: CompId, cy: CompId, delta: Length, kind: PairKind| BackwardCandidate {
        x: members[cx][0],
        y: members[cy][0],
        delta,
        kind,
    };

    let t1 = type1_pairs(zs);
    let mut accepted: Vec<BackwardCandidate> = Vec::new();
    let mut incumbent = t1.first().map(|&(_, _, delta)| delta);
    for &(cx, cy, delta) in &t1 {
        if Some(delta) != incumbent {
            break;
        }
        accepted.push(rep(cx, cy, delta, PairKind::I));
    }

    let mut flows = Vec::new();
    for (cx, cy, kind) in candidate_component_pairs(zs) {
        let delta = zs.partition.comp_ds[cx] - zs.partition.comp_ds[cy];
        if incumbent.is_some_and(|best| delta >= best) {
            continue;
        }
        let k = if kind == PairKind::II { 3 } else { 2 };
        let network = build_candidate_network(d, zs, cx, cy, kind);
        let outcome = max_flow_at_least(&network, k);
        let ok = outcome.reached;
        flows.push(FlowRecord {
            cx,
            cy,
            kind,
            k,
            network,
            outcome,
        });
        if ok {
            incumbent = Some(delta);
            accepted = vec![rep(cx, cy, delta, kind)];
        }
    }

    let best = accepted.first().copied();
    PairSearch {
        best,
        ties: accepted,
        flows,
    }
}

/// Tries to join `s ⇝ x`, backward `x ⇝ y`, and `y ⇝ t` into a simple path,
/// with the three pieces taken from `D⁺`.
pub fn realize_pair(d: &SpDag, x: Vertex, y: Vertex) -> Option<Vec<Vertex>> {
    let (s, t) = (d.s, d.t);
    if x == y || x == s || y == t || x == t || y == s {
        return None;
    }
    let n = d.n();
    let none = vec![false; n];
    let assemble = |p1: &[Vertex], p2: &[Vertex], p3: &[Vertex]| -> Option<Vec<Vertex>> {
        let mut back = p2.to_vec();
        back.reverse();
        let path = join(&[p1, &back, p3]);
        is_simple(&path, n).then_some(path)
    };
    let oriented = |paths: Vec<Vec<Vertex>>, start: Vertex| -> (Vec<Vertex>, Vec<Vertex>) {
        let (a, b): (Vec<_>, Vec<_>) = paths.into_iter().partition(|p| p[0] == start);
        (
            a.into_iter().next().unwrap_or_default(),
            b.into_iter().next().unwrap_or_default(),
        )
    };

    // s ⇝ x and y ⇝ x disjoint except at x, then y ⇝ t around them.
    if let Some(paths) = disjoint_dplus_paths(d, &[(s, 1), (y, 1)], &[(x, 2)], &none, 2) {
        let (p1, p2) = oriented(paths, s);
        let mut blocked = vec![false; n];
        for &v in p1.iter().chain(&p2) {
            blocked[v] = true;
        }
        blocked[y] = false;
        if let Some(p3) = dplus_path_avoiding(d, y, t, &blocked) {
            if let Some(path) = assemble(&p1, &p2, &p3) {
                return Some(path);
            }
        }
    }
    // y ⇝ x and y ⇝ t disjoint except at y, then s ⇝ x around them.
    if let Some(paths) = disjoint_dplus_paths(d, &[(y, 2)], &[(x, 1), (t, 1)], &none, 2) {
        let (p2, p3) = {
            let (a, b): (Vec<_>, Vec<_>) = paths.into_iter().partition(|p| p.last() == Some(&x));
            (
                a.into_iter().next().unwrap_or_default(),
                b.into_iter().next().unwrap_or_default(),
            )
        };
        let mut blocked = vec![false; n];
        for &v in p2.iter().chain(&p3) {
            blocked[v] = true;
        }
        blocked[x] = false;
        if let Some(p1) = dplus_path_avoiding(d, s, x, &blocked) {
            if let Some(path) = assemble(&p1, &p2, &p3) {
                return Some(path);
            }
        }
    }

    // Exact given the first piece: fix s ⇝ x, then ask for two paths from y.
    let mut found = None;
    for_each_dplus_path(d, s, x, &none, ENUMERATION_LIMIT, |p1| {
        let mut blocked = vec![false; n];
        for &v in p1 {
            blocked[v] = true;
        }
        if blocked[y] || blocked[t] {
            return false;
        }
        blocked[x] = false;
        let Some(paths) = disjoint_dplus_paths(d, &[(y, 2)], &[(x, 1), (t, 1)], &blocked, 2) else {
            return false;
        };
        let (p2, p3): (Vec<_>, Vec<_>) = paths.into_iter().partition(|p| p.last() == Some(&x));
        found = assemble(p1, &p2[0], &p3[0]);
        found.is_some()
    });
    if found.is_some() {
        return found;
    }
    // Symmetric: fix y ⇝ t, then two paths into x.
    for_each_dplus_path(d, y, t, &none, ENUMERATION_LIMIT, |p3| {
        let mut blocked = vec![false; n];
        for &v in p3 {
            blocked[v] = true;
        }
        if blocked[s] || blocked[x] {
            return false;
        }
        blocked[y] = false;
        let Some(paths) = disjoint_dplus_paths(d, &[(s, 1), (y, 1)], &[(x, 2)], &blocked, 2) else {
            return false;
        };
        let (p1, p2) = oriented(paths, s);
        found = assemble(&p1, &p2, p3);
        found.is_some()
    });
    found
}

/// A realized shortest zigzag path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZigzagPath {
    pub candidate: BackwardCandidate,
    /// The pair actually used by the witness; same components' δ.
    pub x: Vertex,
    pub y: Vertex,
    pub length: Length,
    pub path: Vec<Vertex>,
}

/// Builds a witness for the search result, trying the accepted candidates
/// in order, every member pair of their components, and finally every pair
/// of `D` vertices at the same δ that satisfies β₁.
pub fn realize_zigzag_path(
    d: &SpDag,
    zs: &ZeroStructure,
    labels: &DistLabels,
    search: &PairSearch,
) -> Result<Option<ZigzagPath>, ZigzagError> {
    let Some(best) = search.best else {
        return Ok(None);
    };
    let delta = best.delta;
    let length = labels.dst + 2 * delta;
    let done = |cand: BackwardCandidate, x: Vertex, y: Vertex, path: Vec<Vertex>| ZigzagPath {
        candidate: cand,
        x,
        y,
        length,
        path,
    };

    for cand in &search.ties {
        let (cx, cy) = (zs.comp(cand.x), zs.comp(cand.y));
        for &x in &zs.partition.members[cx] {
            for &y in &zs.partition.members[cy] {
                if let Some(path) = realize_pair(d, x, y) {
                    return Ok(Some(done(*cand, x, y, path)));
                }
            }
        }
    }
    let verts: Vec<Vertex> = d.vertices().collect();
    for &x in &verts {
        for &y in &verts {
            if labels.ds[x] == labels.ds[y] + delta && zs.beta1(x, y) {
                if let Some(path) = realize_pair(d, x, y) {
                    return Ok(Some(done(best, x, y, path)));
                }
            }
        }
    }
    Err(ZigzagError::RealizationExhausted { delta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, Fixture};

    fn build(f: &Fixture) -> (DistLabels, SpDag, ZeroStructure) {
        let labels = DistLabels::compute(&f.graph, f.query());
        let d = SpDag::build(&f.graph, &labels, f.query());
        let zs = ZeroStructure::build(&d, &labels).unwrap();
        (labels, d, zs)
    }

    #[test]
    fn type1_examples() {
        let (_, _, zs) = build(&fixtures::g_pent());
        let best = type1_best(&zs).unwrap();
        assert_eq!((best.x, best.y, best.delta, best.kind), (2, 1, 1, PairKind::I));
        let (_, _, zs) = build(&fixtures::g_quad0());
        assert_eq!(type1_best(&zs), None);
        let (_, _, zs) = build(&fixtures::chain());
        assert_eq!(type1_best(&zs), None);
    }

    #[test]
    fn candidate_pairs_examples() {
        let (_, _, zs) = build(&fixtures::g_t2());
        let (x, y) = (zs.comp(3), zs.comp(1));
        assert_eq!(zs.comp(4), x);
        assert_eq!(zs.comp(2), y);
        assert_eq!(candidate_component_pairs(&zs), vec![(x, y, PairKind::II)]);

        let (_, _, zs) = build(&fixtures::g_t3());
        let (x, y) = (zs.comp(3), zs.comp(1));
        assert_eq!(candidate_component_pairs(&zs), vec![(x, y, PairKind::III)]);

        let (_, _, zs) = build(&fixtures::g_pent());
        assert!(candidate_component_pairs(&zs).is_empty());
    }

    #[test]
    fn type2_network_and_flow() {
        let (_, d, zs) = build(&fixtures::g_t2());
        let (cx, cy) = (zs.comp(3), zs.comp(1));
        let net = build_candidate_network(&d, &zs, cx, cy, PairKind::II);
        let mut verts: Vec<Vertex> = net
            .nodes
            .iter()
            .filter_map(|n| match n {
                FlowNode::Vertex(v) => Some(*v),
                _ => None,
            })
            .collect();
        verts.sort();
        assert_eq!(verts, vec![1, 2, 3, 4]);
        let label = |i: usize| net.nodes[i];
        let mut interior: Vec<_> = net
            .arcs
            .iter()
            .filter(|&&(a, b, _)| a != net.source && b != net.sink)
            .map(|&(a, b, _)| (label(a), label(b)))
            .collect();
        interior.sort();
        use FlowNode::Vertex as V;
        assert_eq!(interior, vec![(V(1), V(3)), (V(1), V(4)), (V(2), V(4))]);

        let out = max_flow_at_least(&net, 3);
        assert!(out.reached);
        assert!(out.rounds <= 3);
        let mut paths = out.paths.clone();
        paths.sort();
        assert_eq!(paths, vec![vec![V(1), V(3)], vec![V(1), V(4)], vec![V(2), V(4)]]);
    }

    #[test]
    fn conduit_is_collapsed() {
        // s=0, y=1, w=2, x=3, t=4 plus a bypass so that 1 and 3 are not dominators
        // of each other's paths in a way that removes the chain from H.
        let g = crate::graph::Graph::from_edges(5, [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (0, 3, 3), (1, 4, 3)])
            .unwrap();
        let q = crate::graph::Query::new(0, 4);
        let labels = DistLabels::compute(&g, q);
        let d = SpDag::build(&g, &labels, q);
        let zs = ZeroStructure::build(&d, &labels).unwrap();
        let net = build_candidate_network(&d, &zs, zs.comp(3), zs.comp(1), PairKind::II);
        let interior: Vec<_> = net
            .arcs
            .iter()
            .filter(|&&(a, b, _)| a != net.source && b != net.sink)
            .collect();
        assert_eq!(interior.len(), 1);
        let &&(a, b, c) = interior.first().unwrap();
        assert_eq!(
            (net.nodes[a], net.nodes[b], c),
            (FlowNode::Vertex(1), FlowNode::Vertex(3), 1)
        );
    }

    #[test]
    fn empty_interior_has_no_flow() {
        let (_, d, zs) = build(&fixtures::g_pent());
        // x=u=1, y=v=2: v does not precede u, so H has no interior and no arcs.
        let net = build_candidate_network(&d, &zs, zs.comp(1), zs.comp(2), PairKind::III);
        assert!(net.arcs.is_empty());
        assert!(!max_flow_at_least(&net, 2).reached);
    }

    #[test]
    fn best_pair_examples() {
        let (_, d, zs) = build(&fixtures::g_pent());
        let best = best_backward_pair(&d, &zs).unwrap();
        assert_eq!((best.kind, best.delta), (PairKind::I, 1));

        let (_, d, zs) = build(&fixtures::g_t2());
        let best = best_backward_pair(&d, &zs).unwrap();
        assert_eq!((best.kind, best.delta), (PairKind::II, 1));

        let (_, d, zs) = build(&fixtures::g_quad0());
        assert_eq!(best_backward_pair(&d, &zs), None);
    }

    #[test]
    fn realized_paths() {
        for f in [fixtures::g_pent(), fixtures::g_t2(), fixtures::g_t3()] {
            let (labels, d, zs) = build(&f);
            let search = search_backward_pairs(&d, &zs);
            let z = realize_zigzag_path(&d, &zs, &labels, &search).unwrap().unwrap();
            assert_eq!(z.length, 5, "{}", f.name);
            assert_eq!(f.graph.path_length(&z.path), Some(5), "{}", f.name);
            assert!(is_simple(&z.path, f.graph.n()));
            assert_eq!((z.path[0], *z.path.last().unwrap()), (f.s, f.t));
            assert!(z
                .path
                .windows(2)
                .all(|e| d.edge_in_d[f.graph.edge_between(e[0], e[1]).unwrap()]));
        }
        let (labels, d, zs) = build(&fixtures::g_pent());
        let z = realize_zigzag_path(&d, &zs, &labels, &search_backward_pairs(&d, &zs))
            .unwrap()
            .unwrap();
        assert_eq!(z.path, vec![0, 2, 1, 3]);
    }
}
