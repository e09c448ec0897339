//! Path-finding helpers used to assemble witness paths: searches that avoid
//! a vertex set, disjoint paths inside `D⁺` via unit flows, and bounded
//! enumeration of simple `D⁺` paths.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::flow::{max_flow_at_least, FlowNetwork, FlowNode, INF};
use crate::graph::{Graph, Length, Vertex};
use crate::spdag::SpDag;

/// Breadth-first `D⁺` path from `from` to `to` that never enters a blocked
/// vertex (the endpoints are exempt).
pub fn dplus_path_avoiding(d: &SpDag, from: Vertex, to: Vertex, blocked: &[bool]) -> Option<Vec<Vertex>> {
    let mut prev = vec![usize::MAX; d.n()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &u in d.successors(v) {
            if prev[u] == usize::MAX && (u == to || !blocked[u]) {
                prev[u] = v;
                queue.push_back(u);
            }
        }
    }
    None
}

/// `k` internally vertex-disjoint `D⁺` paths from the given sources to the
/// given sinks, each terminal with its own capacity; every other vertex has
/// capacity 1. Paths start at a source and stop at the first sink they
/// reach. Blocked vertices are excluded unless they are terminals.
pub fn disjoint_dplus_paths(
    d: &SpDag,
    sources: &[(Vertex, u32)],
    sinks: &[(Vertex, u32)],
    blocked: &[bool],
    k: u32,
) -> Option<Vec<Vec<Vertex>>> {
    let n = d.n();
    let mut net = FlowNetwork::new();
    let mut node = vec![usize::MAX; n];
    let mut is_source = vec![false; n];
    let mut is_sink = vec![false; n];
    for &(v, _) in sources {
        is_source[v] = true;
    }
    for &(v, _) in sinks {
        is_sink[v] = true;
    }
    for v in d.vertices() {
        if blocked[v] && !is_source[v] && !is_sink[v] {
            continue;
        }
        let cap = sources
            .iter()
            .chain(sinks)
            .find(|&&(x, _)| x == v)
            .map_or(1, |&(_, c)| c);
        node[v] = net.add_node(FlowNode::Vertex(v), cap);
    }
    for &(v, _) in sources {
        net.add_arc(net.source, node[v], INF);
    }
    for &(v, _) in sinks {
        net.add_arc(node[v], net.sink, INF);
    }
    for v in d.vertices() {
        if node[v] == usize::MAX || is_sink[v] {
            continue;
        }
        for &u in d.successors(v) {
            if node[u] != usize::MAX && !is_source[u] {
                net.add_arc(node[v], node[u], INF);
            }
        }
    }
    let out = max_flow_at_least(&net, k);
    if !out.reached {
        return None;
    }
    Some(
        out.paths
            .into_iter()
            .map(|p| {
                p.into_iter()
                    .map(|x| match x {
                        FlowNode::Vertex(v) => v,
                        _ => unreachable!("terminals are stripped from decomposed paths"),
                    })
                    .collect()
            })
            .collect(),
    )
}

/// Calls `visit` on simple `D⁺` paths from `from` to `to` avoiding blocked
/// vertices, in depth-first order, until it returns `true` or `limit`
/// paths have been produced. Returns whether `visit` accepted one.
pub fn for_each_dplus_path(
    d: &SpDag,
    from: Vertex,
    to: Vertex,
    blocked: &[bool],
    limit: usize,
    mut visit: impl FnMut(&[Vertex]) -> bool,
) -> bool {
    // Prune vertices that cannot reach `to` without blocked vertices.
    let mut reaches = vec![false; d.n()];
    reaches[to] = true;
    let mut queue = VecDeque::from([to]);
    while let Some(v) = queue.pop_front() {
        for &u in d.predecessors(v) {
            if !reaches[u] && !blocked[u] {
                reaches[u] = true;
                queue.push_back(u);
            }
        }
    }
    if !reaches[from] && from != to {
        return false;
    }

    let mut on_path = vec![false; d.n()];
    let mut path = vec![from];
    let mut iters = vec![0usize];
    on_path[from] = true;
    let mut produced = 0;
    while let Some(&v) = path.last() {
        if v == to {
            produced += 1;
            if visit(&path) {
                return true;
            }
            if produced >= limit {
                return false;
            }
            on_path[v] = false;
            path.pop();
            iters.pop();
            continue;
        }
        let i = iters.last_mut().unwrap();
        if let Some(&u) = d.successors(v).get(*i) {
            *i += 1;
            if !on_path[u] && reaches[u] && (u == to || !blocked[u]) {
                on_path[u] = true;
                path.push(u);
                iters.push(0);
            }
        } else {
            on_path[v] = false;
            path.pop();
            iters.pop();
        }
    }
    false
}

/// Dijkstra in `g` from `from` to `to` that never enters a blocked vertex.
pub fn shortest_path_avoiding(g: &Graph, from: Vertex, to: Vertex, blocked: &[bool]) -> Option<(Length, Vec<Vertex>)> {
    let n = g.n();
    let mut dist = vec![Length::MAX; n];
    let mut prev = vec![usize::MAX; n];
    let mut heap = BinaryHeap::new();
    dist[from] = 0;
    heap.push(Reverse((0, from)));
    while let Some(Reverse((dv, v))) = heap.pop() {
        if dv > dist[v] {
            continue;
        }
        if v == to {
            break;
        }
        for &(u, id) in g.neighbors(v) {
            if blocked[u] && u != to {
                continue;
            }
            let nd = dv + Length::from(g.edge(id).w);
            if nd < dist[u] {
                dist[u] = nd;
                prev[u] = v;
                heap.push(Reverse((nd, u)));
            }
        }
    }
    if dist[to] == Length::MAX {
        return None;
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    Some((dist[to], path))
}

/// Concatenates path pieces that share their junction vertices.
pub fn join(pieces: &[&[Vertex]]) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = Vec::new();
    for piece in pieces {
        if let (Some(&last), Some(&first)) = (out.last(), piece.first()) {
            debug_assert_eq!(last, first);
            out.extend_from_slice(&piece[1..]);
        } else {
            out.extend_from_slice(piece);
        }
    }
    out
}

pub fn is_simple(path: &[Vertex], n: usize) -> bool {
    let mut seen = vec![false; n];
    path.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
}
