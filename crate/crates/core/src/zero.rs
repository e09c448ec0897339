//! Zero-components of `D⁺` and the auxiliary DAG obtained by shrinking them.
//!
//! A zero-component is a connected component of the zero edges of `D` after
//! deleting every zero edge that belongs to the s- or t-dominator tree of
//! `D⁺`. Shrinking the components and orienting the surviving inter-component
//! zero edges toward `t` yields an acyclic digraph whose reachability order
//! (`≺`) drives the backward-pair search.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::dominators::Digraph;
use crate::dominators::{immediate_dominators, DomError, DomTree, Host, Side};
use crate::graph::{Length, Vertex};
use crate::spdag::SpDag;
use crate::sssp::DistLabels;

pub type CompId = usize;

pub const NO_COMP: CompId = usize::MAX;

#[derive(Debug, Clone)]
pub struct ZeroPartition {
    /// Component of each vertex of `D`; `NO_COMP` outside `D`.
    pub comp: Vec<CompId>,
    pub members: Vec<Vec<Vertex>>,
    pub comp_ds: Vec<Length>,
}

impl ZeroPartition {
    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn of(&self, v: Vertex) -> CompId {
        self.comp[v]
    }
}

/// Partition of `V(D)` into zero-components. Components are numbered in
/// order of their smallest vertex.
pub fn zero_components(spdag: &SpDag, labels: &DistLabels, ts: &DomTree, tt: &DomTree) -> ZeroPartition {
    let n = spdag.n();
    let mut comp = vec![NO_COMP; n];
    let mut members = Vec::new();
    let mut comp_ds = Vec::new();
    let mut queue = VecDeque::new();
    for root in spdag.vertices() {
        if comp[root] != NO_COMP {
            continue;
        }
        let id = members.len();
        comp[root] = id;
        queue.push_back(root);
        let mut list = Vec::new();
        while let Some(v) = queue.pop_front() {
            list.push(v);
            for &u in spdag.zero_neighbors(v) {
                if comp[u] == NO_COMP && !ts.is_tree_edge(u, v) && !tt.is_tree_edge(u, v) {
                    comp[u] = id;
                    queue.push_back(u);
                }
            }
        }
        list.sort_unstable();
        members.push(list);
        comp_ds.push(labels.ds[root]);
    }
    ZeroPartition { comp, members, comp_ds }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AuxError {
    #[error("zero edge {0}-{1} is not a dominator-tree edge in a consistent direction")]
    Orientation(Vertex, Vertex),
    #[error("auxiliary digraph contains a cycle")]
    Cycle,
    #[error(transparent)]
    Dominators(#[from] DomError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuxArc {
    pub from: CompId,
    pub to: CompId,
    pub w: Length,
}

/// Fixed-size bit set backed by 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(bits: usize) -> Self {
        Self {
            words: vec![0; bits.div_ceil(64)],
        }
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }
}

/// The auxiliary DAG `𝒵` with reachability and both dominator trees.
#[derive(Debug, Clone)]
pub struct AuxDag {
    pub s: CompId,
    pub t: CompId,
    pub arcs: Vec<AuxArc>,
    pub topo: Vec<CompId>,
    pub idom_s: DomTree,
    pub idom_t: DomTree,
    succ: Vec<Vec<usize>>,
    reach: Vec<BitSet>,
}

impl AuxDag {
    #[inline]
    pub fn len(&self) -> usize {
        self.succ.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    /// Arc indices leaving `c`.
    pub fn out_arcs(&self, c: CompId) -> impl Iterator<Item = &AuxArc> {
        self.succ[c].iter().map(move |&i| &self.arcs[i])
    }

    /// `a ≺ b`: distinct and `b` reachable from `a`.
    #[inline]
    pub fn prec(&self, a: CompId, b: CompId) -> bool {
        a != b && self.reach[a].contains(b)
    }
}

pub fn build_aux_dag(spdag: &SpDag, zp: &ZeroPartition, ts: &DomTree, tt: &DomTree) -> Result<AuxDag, AuxError> {
    let k = zp.len();
    let mut weight: HashMap<(CompId, CompId), Length> = HashMap::new();
    let mut add = |a: CompId, b: CompId, w: Length| {
        weight.entry((a, b)).and_modify(|x| *x = (*x).min(w)).or_insert(w);
    };
    for arc in &spdag.arcs {
        add(zp.of(arc.from), zp.of(arc.to), Length::from(arc.w));
    }
    for &(u, v) in &spdag.zero_edges {
        let (cu, cv) = (zp.of(u), zp.of(v));
        if cu == cv {
            continue;
        }
        let forward = ts.idom(v) == Some(u) || tt.idom(u) == Some(v);
        let backward = ts.idom(u) == Some(v) || tt.idom(v) == Some(u);
        match (forward, backward) {
            (true, false) => add(cu, cv, 0),
            (false, true) => add(cv, cu, 0),
            _ => return Err(AuxError::Orientation(u, v)),
        }
    }

    let mut arcs: Vec<AuxArc> = weight
        .into_iter()
        .map(|((from, to), w)| AuxArc { from, to, w })
        .collect();
    arcs.sort_unstable_by_key(|a| (a.from, a.to));
    let mut succ = vec![Vec::new(); k];
    let mut indeg = vec![0usize; k];
    let mut digraph = Digraph::new(k);
    for (i, a) in arcs.iter().enumerate() {
        succ[a.from].push(i);
        indeg[a.to] += 1;
        digraph.add_arc(a.from, a.to);
    }

    // Kahn's algorithm, smallest id first among ready nodes for determinism.
    let mut ready: std::collections::BTreeSet<CompId> = (0..k).filter(|&c| indeg[c] == 0).collect();
    let mut topo = Vec::with_capacity(k);
    while let Some(c) = ready.pop_first() {
        topo.push(c);
        for &i in &succ[c] {
            let to = arcs[i].to;
            indeg[to] -= 1;
            if indeg[to] == 0 {
                ready.insert(to);
            }
        }
    }
    if topo.len() != k {
        return Err(AuxError::Cycle);
    }

    let mut reach = vec![BitSet::new(k); k];
    for &c in topo.iter().rev() {
        let mut set = BitSet::new(k);
        for &i in &succ[c] {
            let to = arcs[i].to;
            set.insert(to);
            set.union_with(&reach[to]);
        }
        reach[c] = set;
    }

    let (s, t) = (zp.of(spdag.s), zp.of(spdag.t));
    let idom_s = immediate_dominators(&digraph, s, Side::FromSource, Host::Aux)?;
    let idom_t = immediate_dominators(&digraph.reversed(), t, Side::ToSink, Host::Aux)?;
    Ok(AuxDag {
        s,
        t,
        arcs,
        topo,
        idom_s,
        idom_t,
        succ,
        reach,
    })
}

/// Everything derived from `D⁺` that the zigzag search needs.
#[derive(Debug, Clone)]
pub struct ZeroStructure {
    pub ts: DomTree,
    pub tt: DomTree,
    pub partition: ZeroPartition,
    pub aux: AuxDag,
    /// Component of `I_s(v)` for the members of each component.
    comp_is: Vec<Option<CompId>>,
    /// Component of `I_t(v)` for the members of each component.
    comp_it: Vec<Option<CompId>>,
}

/// The digraph `D⁺` with zero edges as opposite arc pairs.
pub fn dplus_digraph(spdag: &SpDag) -> Digraph {
    let mut g = Digraph::with_present(spdag.in_d.clone());
    for v in spdag.vertices() {
        for &u in spdag.successors(v) {
            g.add_arc(v, u);
        }
    }
    g
}

/// s- and t-dominator trees of `D⁺`.
pub fn dplus_dominators(spdag: &SpDag) -> Result<(DomTree, DomTree), DomError> {
    let g = dplus_digraph(spdag);
    let ts = immediate_dominators(&g, spdag.s, Side::FromSource, Host::SpDag)?;
    let tt = immediate_dominators(&g.reversed(), spdag.t, Side::ToSink, Host::SpDag)?;
    Ok((ts, tt))
}

impl ZeroStructure {
    pub fn build(spdag: &SpDag, labels: &DistLabels) -> Result<Self, AuxError> {
        let (ts, tt) = dplus_dominators(spdag)?;
        let partition = zero_components(spdag, labels, &ts, &tt);
        let aux = build_aux_dag(spdag, &partition, &ts, &tt)?;
        let comp_is = partition
            .members
            .iter()
            .map(|m| ts.idom(m[0]).map(|p| partition.of(p)))
            .collect();
        let comp_it = partition
            .members
            .iter()
            .map(|m| tt.idom(m[0]).map(|p| partition.of(p)))
            .collect();
        Ok(Self {
            ts,
            tt,
            partition,
            aux,
            comp_is,
            comp_it,
        })
    }

    #[inline]
    pub fn comp(&self, v: Vertex) -> CompId {
        self.partition.of(v)
    }

    /// `v ≺ u` on vertices via their components.
    #[inline]
    pub fn prec(&self, a: Vertex, b: Vertex) -> bool {
        self.aux.prec(self.comp(a), self.comp(b))
    }

    /// β₁ on components: `I_s(x) ≺ y ≺ x ≺ I_t(y)`, where the dominators
    /// are those of `D⁺` mapped to their components.
    pub fn beta1_comp(&self, cx: CompId, cy: CompId) -> bool {
        let (Some(isx), Some(ity)) = (self.comp_is[cx], self.comp_it[cy]) else {
            return false;
        };
        self.aux.prec(isx, cy) && self.aux.prec(cy, cx) && self.aux.prec(cx, ity)
    }

    /// β₁ evaluated entirely inside `𝒵`, with its own dominator trees.
    pub fn beta1_aux(&self, cx: CompId, cy: CompId) -> bool {
        let (Some(isx), Some(ity)) = (self.aux.idom_s.idom(cx), self.aux.idom_t.idom(cy)) else {
            return false;
        };
        self.aux.prec(isx, cy) && self.aux.prec(cy, cx) && self.aux.prec(cx, ity)
    }

    pub fn beta1(&self, x: Vertex, y: Vertex) -> bool {
        self.beta1_comp(self.comp(x), self.comp(y))
    }
}
