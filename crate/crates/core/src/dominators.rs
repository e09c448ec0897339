//! Immediate dominators via the Lengauer–Tarjan semidominator method with
//! path compression.
//!
//! Sink-side dominators (every `u ⇝ t` path contains `v`) are the ordinary
//! dominators of the arc-reversed digraph rooted at `t`.

use thiserror::Error;

use crate::graph::Vertex;

/// Adjacency-list digraph over `0..n`; only vertices flagged `present`
/// take part in dominator computations.
#[derive(Debug, Clone, Default)]
pub struct Digraph {
    succ: Vec<Vec<Vertex>>,
    pred: Vec<Vec<Vertex>>,
    present: Vec<bool>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Self {
            succ: vec![Vec::new(); n],
            pred: vec![Vec::new(); n],
            present: vec![true; n],
        }
    }

    pub fn with_present(present: Vec<bool>) -> Self {
        let n = present.len();
        Self {
            succ: vec![Vec::new(); n],
            pred: vec![Vec::new(); n],
            present,
        }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let mut g = Self::new(n);
        for (u, v) in arcs {
            g.add_arc(u, v);
        }
        g
    }

    pub fn add_arc(&mut self, u: Vertex, v: Vertex) {
        self.succ[u].push(v);
        self.pred[v].push(u);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.succ.len()
    }

    #[inline]
    pub fn is_present(&self, v: Vertex) -> bool {
        self.present[v]
    }

    #[inline]
    pub fn successors(&self, v: Vertex) -> &[Vertex] {
        &self.succ[v]
    }

    #[inline]
    pub fn predecessors(&self, v: Vertex) -> &[Vertex] {
        &self.pred[v]
    }

    pub fn reversed(&self) -> Self {
        Self {
            succ: self.pred.clone(),
            pred: self.succ.clone(),
            present: self.present.clone(),
        }
    }

    /// Vertices reachable from `root` while never entering `blocked`.
    pub fn reachable_avoiding(&self, root: Vertex, blocked: Option<Vertex>) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        if Some(root) == blocked {
            return seen;
        }
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &u in &self.succ[v] {
                if !seen[u] && Some(u) != blocked {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Dominators of paths leaving the source.
    FromSource,
    /// Dominators of paths entering the sink.
    ToSink,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Host {
    SpDag,
    Aux,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DomError {
    #[error("vertex {0} is not reachable from the root")]
    Unreachable(Vertex),
}

/// Dominator tree with preorder intervals for O(1) ancestor tests.
#[derive(Debug, Clone)]
pub struct DomTree {
    pub root: Vertex,
    pub side: Side,
    pub host: Host,
    idom: Vec<Option<Vertex>>,
    enter: Vec<u32>,
    exit: Vec<u32>,
}

impl DomTree {
    #[inline]
    pub fn idom(&self, v: Vertex) -> Option<Vertex> {
        self.idom[v]
    }

    pub fn idoms(&self) -> &[Option<Vertex>] {
        &self.idom
    }

    /// `a` dominates `b` (reflexive).
    #[inline]
    pub fn dominates(&self, a: Vertex, b: Vertex) -> bool {
        self.enter[a] <= self.enter[b] && self.exit[b] <= self.exit[a] && self.exit[b] != 0
    }

    /// Is `{a, b}` an edge of the dominator tree?
    #[inline]
    pub fn is_tree_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.idom[a] == Some(b) || self.idom[b] == Some(a)
    }

    fn with_intervals(root: Vertex, side: Side, host: Host, idom: Vec<Option<Vertex>>) -> Self {
        let n = idom.len();
        let mut children = vec![Vec::new(); n];
        for (v, p) in idom.iter().enumerate() {
            if let Some(p) = *p {
                children[p].push(v);
            }
        }
        let mut enter = vec![0u32; n];
        let mut exit = vec![0u32; n];
        let mut clock = 1u32;
        let mut stack = vec![(root, 0usize)];
        enter[root] = clock;
        while let Some((v, i)) = stack.last_mut() {
            if let Some(&c) = children[*v].get(*i) {
                *i += 1;
                clock += 1;
                enter[c] = clock;
                stack.push((c, 0));
            } else {
                exit[*v] = clock;
                stack.pop();
            }
        }
        Self {
            root,
            side,
            host,
            idom,
            enter,
            exit,
        }
    }
}

/// Immediate dominators of every present vertex of `g` with respect to
/// `root`. Vertices that are absent get `None`; a present vertex that is
/// unreachable is an error.
pub fn immediate_dominators(g: &Digraph, root: Vertex, side: Side, host: Host) -> Result<DomTree, DomError> {
    const NONE: usize = usize::MAX;
    let n = g.n();

    // Iterative DFS numbering, 0-based preorder.
    let mut pre = vec![NONE; n];
    let mut vertex = Vec::with_capacity(n);
    let mut parent = Vec::with_capacity(n);
    let mut stack = vec![(root, 0usize)];
    pre[root] = 0;
    vertex.push(root);
    parent.push(0);
    while let Some((v, i)) = stack.last_mut() {
        let succ = g.successors(*v);
        if let Some(&u) = succ.get(*i) {
            *i += 1;
            if pre[u] == NONE && g.is_present(u) {
                pre[u] = vertex.len();
                parent.push(pre[*v]);
                vertex.push(u);
                stack.push((u, 0));
            }
        } else {
            stack.pop();
        }
    }
    if let Some(v) = (0..n).find(|&v| g.is_present(v) && pre[v] == NONE) {
        return Err(DomError::Unreachable(v));
    }

    let k = vertex.len();
    let mut semi: Vec<usize> = (0..k).collect();
    let mut label: Vec<usize> = (0..k).collect();
    let mut ancestor = vec![NONE; k];
    let mut idom = vec![0usize; k];
    let mut bucket: Vec<Vec<usize>> = vec![Vec::new(); k];

    for w in (1..k).rev() {
        for &pv in g.predecessors(vertex[w]) {
            let v = pre[pv];
            if v == NONE {
                continue;
            }
            let u = eval(v, &mut ancestor, &mut label, &semi);
            if semi[u] < semi[w] {
                semi[w] = semi[u];
            }
        }
        bucket[semi[w]].push(w);
        let p = parent[w];
        ancestor[w] = p;
        for v in std::mem::take(&mut bucket[p]) {
            let u = eval(v, &mut ancestor, &mut label, &semi);
            idom[v] = if semi[u] < semi[v] { u } else { p };
        }
    }
    for w in 1..k {
        if idom[w] != semi[w] {
            idom[w] = idom[idom[w]];
        }
    }

    let mut out = vec![None; n];
    for w in 1..k {
        out[vertex[w]] = Some(vertex[idom[w]]);
    }
    Ok(DomTree::with_intervals(root, side, host, out))
}

fn eval(v: usize, ancestor: &mut [usize], label: &mut [usize], semi: &[usize]) -> usize {
    const NONE: usize = usize::MAX;
    if ancestor[v] == NONE {
        return v;
    }
    // Collect the path to the forest root, then compress it top-down.
    let mut path = vec![v];
    let mut u = v;
    while ancestor[ancestor[u]] != NONE {
        u = ancestor[u];
        path.push(u);
    }
    for &x in path.iter().rev().skip(1) {
        let a = ancestor[x];
        if semi[label[a]] < semi[label[x]] {
            label[x] = label[a];
        }
        ancestor[x] = ancestor[a];
    }
    label[v]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idoms(arcs: &[(usize, usize)], n: usize, root: usize) -> Vec<Option<usize>> {
        immediate_dominators(
            &Digraph::from_arcs(n, arcs.iter().copied()),
            root,
            Side::FromSource,
            Host::SpDag,
        )
        .unwrap()
        .idoms()
        .to_vec()
    }

    #[test]
    fn chain() {
        assert_eq!(idoms(&[(0, 1), (1, 2)], 3, 0), vec![None, Some(0), Some(1)]);
    }

    #[test]
    fn pentagon_both_sides() {
        // s=0 u=1 v=2 t=3
        let g = Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 3), (0, 2), (1, 3)]);
        let ds = immediate_dominators(&g, 0, Side::FromSource, Host::SpDag).unwrap();
        assert_eq!(ds.idoms(), &[None, Some(0), Some(0), Some(0)]);
        let dt = immediate_dominators(&g.reversed(), 3, Side::ToSink, Host::SpDag).unwrap();
        assert_eq!(dt.idoms(), &[Some(3), Some(3), Some(3), None]);
    }

    #[test]
    fn classic_lengauer_tarjan_example() {
        // R=0 A=1 B=2 C=3 D=4 E=5 F=6 G=7 H=8 I=9 J=10 K=11 L=12
        let arcs = [
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 4),
            (2, 1),
            (2, 4),
            (2, 5),
            (3, 6),
            (3, 7),
            (4, 12),
            (5, 8),
            (6, 9),
            (7, 9),
            (7, 10),
            (8, 5),
            (8, 11),
            (9, 11),
            (10, 9),
            (11, 9),
            (11, 0),
            (12, 8),
        ];
        let got = idoms(&arcs, 13, 0);
        let want = [
            None,
            Some(0),
            Some(0),
            Some(0),
            Some(0),
            Some(0),
            Some(3),
            Some(3),
            Some(0),
            Some(0),
            Some(7),
            Some(0),
            Some(4),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn bidirectional_pairs() {
        // 0 -> 1 <-> 2 -> 3, plus 0 -> 2
        let g = Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 1), (2, 3), (0, 2)]);
        let d = immediate_dominators(&g, 0, Side::FromSource, Host::SpDag).unwrap();
        assert_eq!(d.idoms(), &[None, Some(0), Some(0), Some(2)]);
        assert!(d.dominates(0, 3) && d.dominates(2, 3) && !d.dominates(1, 3));
        assert!(d.is_tree_edge(2, 3) && !d.is_tree_edge(1, 2));
    }

    #[test]
    fn unreachable_is_error() {
        let g = Digraph::from_arcs(3, [(0, 1)]);
        assert_eq!(
            immediate_dominators(&g, 0, Side::FromSource, Host::SpDag).unwrap_err(),
            DomError::Unreachable(2)
        );
        let mut present = vec![true, true, false];
        present[2] = false;
        let mut h = Digraph::with_present(present);
        h.add_arc(0, 1);
        assert!(immediate_dominators(&h, 0, Side::FromSource, Host::SpDag).is_ok());
    }
}
