//! Single-source shortest distances and a deterministic shortest-path tree.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::{Graph, Length, Query, Vertex};

/// Binary-heap Dijkstra from `root`. The graph is connected, so every entry
/// is finite.
pub fn dijkstra(g: &Graph, root: Vertex) -> Vec<Length> {
    let mut dist = vec![Length::MAX; g.n()];
    let mut heap = BinaryHeap::new();
    dist[root] = 0;
    heap.push(Reverse((0, root)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        for &(u, id) in g.neighbors(v) {
            let nd = d + Length::from(g.edge(id).w);
            if nd < dist[u] {
                dist[u] = nd;
                heap.push(Reverse((nd, u)));
            }
        }
    }
    dist
}

/// Distances from `s` and to `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistLabels {
    pub ds: Vec<Length>,
    pub dt: Vec<Length>,
    pub dst: Length,
}

impl DistLabels {
    pub fn compute(g: &Graph, q: Query) -> Self {
        let ds = dijkstra(g, q.s);
        let dt = dijkstra(g, q.t);
        let dst = ds[q.t];
        Self { ds, dt, dst }
    }

    /// `d_s(v) + d_t(v) == d(s, t)`.
    #[inline]
    pub fn on_shortest(&self, v: Vertex) -> bool {
        self.ds[v] + self.dt[v] == self.dst
    }
}

/// Shortest-path tree as a parent array; the root's parent is `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpTree {
    pub root: Vertex,
    pub parent: Vec<Option<Vertex>>,
    /// Vertices in attachment order; every parent precedes its children.
    pub order: Vec<Vertex>,
}

impl SpTree {
    /// Vertices of the tree path from the root to `v`, root first.
    pub fn path_from_root(&self, v: Vertex) -> Vec<Vertex> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }
}

/// Builds a shortest-path tree from exact distances.
///
/// Vertices are attached in `(dist, id)` order once some neighbor that is a
/// feasible parent (`dist[v] == dist[p] + w`) is already in the tree; the
/// parent is the smallest-id such neighbor. Restricting to attached parents
/// keeps zero-length cycles from producing a parent cycle.
pub fn shortest_path_tree(g: &Graph, dist: &[Length], root: Vertex) -> SpTree {
    let n = g.n();
    let mut parent = vec![None; n];
    let mut attached = vec![false; n];
    let mut queued = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((dist[root], root)));
    queued[root] = true;

    while let Some(Reverse((_, v))) = heap.pop() {
        if v != root {
            parent[v] = g
                .neighbors(v)
                .iter()
                .filter(|&&(p, id)| attached[p] && dist[p] + Length::from(g.edge(id).w) == dist[v])
                .map(|&(p, _)| p)
                .min();
            debug_assert!(parent[v].is_some());
        }
        attached[v] = true;
        order.push(v);
        for &(u, id) in g.neighbors(v) {
            if !queued[u] && dist[v] + Length::from(g.edge(id).w) == dist[u] {
                queued[u] = true;
                heap.push(Reverse((dist[u], u)));
            }
        }
    }
    SpTree { root, parent, order }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn triangle_distances_and_tree() {
        let f = fixtures::g_tri();
        assert_eq!(dijkstra(&f.graph, f.s), vec![0, 1, 1]);
        let tree = shortest_path_tree(&f.graph, &dijkstra(&f.graph, f.s), f.s);
        assert_eq!(tree.parent, vec![None, Some(0), Some(0)]);
    }

    #[test]
    fn pentagon_distances() {
        let f = fixtures::g_pent();
        // s=0, u=1, v=2, t=3
        assert_eq!(dijkstra(&f.graph, f.s), vec![0, 1, 2, 3]);
    }

    #[test]
    fn chain_tree() {
        let f = fixtures::chain();
        let tree = shortest_path_tree(&f.graph, &dijkstra(&f.graph, f.s), f.s);
        assert_eq!(tree.parent, vec![None, Some(0), Some(1)]);
        assert_eq!(tree.path_from_root(2), vec![0, 1, 2]);
    }

    #[test]
    fn min_id_tie_break() {
        let f = fixtures::g_quad0();
        let tree = shortest_path_tree(&f.graph, &dijkstra(&f.graph, f.s), f.s);
        // s=0, a=1, b=2, t=3
        assert_eq!(tree.parent[3], Some(1));
        assert_eq!(tree.parent[2], Some(0));
    }

    #[test]
    fn zero_cycle_gives_a_tree() {
        // 1 and 2 are joined by a zero edge and each reachable from the root
        // only through a higher-id vertex.
        let g = Graph::from_edges(5, [(0, 3, 1), (0, 4, 1), (3, 2, 0), (4, 1, 0), (1, 2, 0)]).unwrap();
        let dist = dijkstra(&g, 0);
        let tree = shortest_path_tree(&g, &dist, 0);
        for (v, &dv) in dist.iter().enumerate().skip(1) {
            let path = tree.path_from_root(v);
            assert_eq!(path[0], 0);
            assert_eq!(g.path_length(&path), Some(dv));
        }
    }
}
