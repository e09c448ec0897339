//! Shortest detour paths: simple s–t paths using at least one edge outside
//! `E(D)`.
//!
//! With `T` a shortest-path tree from `s` and `F = T − E(D)`, every vertex
//! hangs below a root `r_v ∈ V(D)`. A detour path must cross an edge
//! `(x, y) ∉ E(T) ∪ E(D)` joining two different subtrees of `F`, and the
//! best detour costs `min f(x, y) = d_s(x) + w(x, y) + d_t(y)` over those
//! edges, both orientations scored.

use thiserror::Error;

use crate::graph::{Graph, Length, Vertex};
use crate::paths::{disjoint_dplus_paths, for_each_dplus_path, is_simple, join, shortest_path_avoiding};
use crate::spdag::SpDag;
use crate::sssp::{DistLabels, SpTree};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestRoots {
    pub r: Vec<Vertex>,
    pub dangler: Vec<bool>,
}

pub fn forest_roots(g: &Graph, tree: &SpTree, d: &SpDag, labels: &DistLabels) -> ForestRoots {
    let n = g.n();
    let mut r = vec![usize::MAX; n];
    for &v in &tree.order {
        r[v] = match tree.parent[v] {
            None => v,
            Some(p) => {
                let id = g.edge_between(p, v).expect("tree edges exist in the graph");
                if d.edge_in_d[id] {
                    v
                } else {
                    r[p]
                }
            }
        };
    }
    let dangler = (0..n)
        .map(|v| labels.dt[v] == (labels.ds[v] - labels.ds[r[v]]) + labels.dt[r[v]])
        .collect();
    ForestRoots { r, dangler }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DetourEdge {
    pub x: Vertex,
    pub y: Vertex,
    pub w: u32,
    pub value: Length,
}

/// Tree-edge flags indexed by edge id.
fn tree_edges(g: &Graph, tree: &SpTree) -> Vec<bool> {
    let mut flags = vec![false; g.m()];
    for (v, p) in tree.parent.iter().enumerate() {
        if let Some(p) = *p {
            flags[g.edge_between(p, v).expect("tree edges exist in the graph")] = true;
        }
    }
    flags
}

/// Both orientations of every edge outside `E(T) ∪ E(D)` whose endpoints
/// have different forest roots.
pub fn tilde_edges(g: &Graph, tree: &SpTree, d: &SpDag, roots: &ForestRoots, labels: &DistLabels) -> Vec<DetourEdge> {
    let in_tree = tree_edges(g, tree);
    let f = |x: Vertex, y: Vertex, w: u32| DetourEdge {
        x,
        y,
        w,
        value: labels.ds[x] + Length::from(w) + labels.dt[y],
    };
    g.edges()
        .iter()
        .enumerate()
        .filter(|&(id, e)| !in_tree[id] && !d.edge_in_d[id] && roots.r[e.u] != roots.r[e.v])
        .flat_map(|(_, e)| [f(e.u, e.v, e.w), f(e.v, e.u, e.w)])
        .collect()
}

/// Minimum `f`, ties broken by `(x, y)`.
pub fn detour_min(edges: &[DetourEdge]) -> Option<DetourEdge> {
    edges.iter().copied().min_by_key(|e| (e.value, e.x, e.y))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DetourError {
    #[error("no witness path could be assembled for detour edge {x}-{y}")]
    RealizationExhausted { x: Vertex, y: Vertex },
}

/// Inputs shared by the realization attempts.
pub struct DetourContext<'a> {
    pub g: &'a Graph,
    pub labels: &'a DistLabels,
    pub d: &'a SpDag,
    pub tree: &'a SpTree,
    pub roots: &'a ForestRoots,
}

/// Shortest `from ⇝ t` path in `G` avoiding `blocked`, provided it is as
/// short as an unrestricted one.
fn tight_suffix(cx: &DetourContext, from: Vertex, blocked: &[bool]) -> Option<Vec<Vertex>> {
    let (len, path) = shortest_path_avoiding(cx.g, from, cx.d.t, blocked)?;
    (len == cx.labels.dt[from]).then_some(path)
}

fn mask(n: usize, verts: &[Vertex]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in verts {
        m[v] = true;
    }
    m
}

/// Tree path `s ⇝ a` followed by the edge to `b` and a shortest `b ⇝ t`
/// path around the prefix.
fn via_tree_prefix(cx: &DetourContext, a: Vertex, b: Vertex) -> Option<Vec<Vertex>> {
    let prefix = cx.tree.path_from_root(a);
    let blocked = mask(cx.g.n(), &prefix);
    if blocked[b] {
        return None;
    }
    let suffix = tight_suffix(cx, b, &blocked)?;
    let mut path = prefix;
    path.extend_from_slice(&suffix);
    Some(path)
}

/// Both endpoints are danglers: disjoint `s ⇝ r_b` and `r_a ⇝ t` inside
/// `D⁺`, joined through the tree stems below `r_b` and `r_a`. The result
/// traverses the edge as `b → a`.
fn via_two_roots(cx: &DetourContext, a: Vertex, b: Vertex) -> Option<Vec<Vertex>> {
    let (ra, rb) = (cx.roots.r[a], cx.roots.r[b]);
    let (s, t) = (cx.d.s, cx.d.t);
    let n = cx.g.n();
    let to_rb: Vec<Vertex>;
    let from_ra: Vec<Vertex>;
    if rb == s && ra == t {
        to_rb = vec![s];
        from_ra = vec![t];
    } else if rb == s {
        to_rb = vec![s];
        from_ra = crate::paths::dplus_path_avoiding(cx.d, ra, t, &mask(n, &[s]))?;
    } else if ra == t {
        from_ra = vec![t];
        to_rb = crate::paths::dplus_path_avoiding(cx.d, s, rb, &mask(n, &[t]))?;
    } else {
        let paths = disjoint_dplus_paths(cx.d, &[(s, 1), (ra, 1)], &[(rb, 1), (t, 1)], &vec![false; n], 2)?;
        let mut a_path = None;
        let mut b_path = None;
        for p in paths {
            if p[0] == s && p.last() == Some(&rb) {
                b_path = Some(p);
            } else if p[0] == ra && p.last() == Some(&t) {
                a_path = Some(p);
            }
        }
        to_rb = b_path?;
        from_ra = a_path?;
    }
    let stem_b = cx.tree.path_from_root(b);
    let stem_b = &stem_b[stem_b.iter().position(|&v| v == rb)?..];
    let mut stem_a = cx.tree.path_from_root(a);
    stem_a.drain(..stem_a.iter().position(|&v| v == ra)?);
    stem_a.reverse();
    let mut path = join(&[&to_rb, stem_b]);
    path.extend_from_slice(&join(&[&stem_a, &from_ra]));
    Some(path)
}

/// `a` is a dangler and `b` is not: tree path to `b`, the edge, the stem up
/// to `r_a`, then a shortest `r_a ⇝ t` path avoiding the tree path to `b`.
fn via_dangler_stem(cx: &DetourContext, a: Vertex, b: Vertex) -> Option<Vec<Vertex>> {
    let ra = cx.roots.r[a];
    let prefix = cx.tree.path_from_root(b);
    let mut stem = cx.tree.path_from_root(a);
    stem.drain(..stem.iter().position(|&v| v == ra)?);
    stem.reverse();
    let mut used = prefix.clone();
    used.extend_from_slice(&stem);
    let mut blocked = mask(cx.g.n(), &used);
    blocked[ra] = false;
    if prefix.contains(&ra) {
        return None;
    }
    let suffix = tight_suffix(cx, ra, &blocked)?;
    Some(join(&[&prefix, &stem, &suffix]))
}

/// Any shortest `s ⇝ a` path made of tight edges, then the edge, then a
/// shortest `b ⇝ t` path around it. Bounded.
fn via_enumerated_prefix(cx: &DetourContext, a: Vertex, b: Vertex) -> Option<Vec<Vertex>> {
    let g = cx.g;
    let ds = &cx.labels.ds;
    let n = g.n();
    let mut on_path = vec![false; n];
    let mut path = vec![cx.d.s];
    let mut iters = vec![0usize];
    on_path[cx.d.s] = true;
    let mut tries = 0;
    while let Some(&v) = path.last() {
        if v == a {
            tries += 1;
            if !on_path[b] {
                if let Some(suffix) = tight_suffix(cx, b, &on_path) {
                    let mut out = path.clone();
                    out.extend_from_slice(&suffix);
                    return Some(out);
                }
            }
            if tries >= 256 {
                return None;
            }
            on_path[v] = false;
            path.pop();
            iters.pop();
            continue;
        }
        let i = iters.last_mut().unwrap();
        if let Some(&(u, id)) = g.neighbors(v).get(*i) {
            *i += 1;
            let tight = ds[v] + Length::from(g.edge(id).w) == ds[u] && ds[u] <= ds[a];
            if tight && !on_path[u] {
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
    None
}

/// Simple s–t path of length exactly `f` through the minimizing edge.
pub fn realize_detour_path(cx: &DetourContext, best: DetourEdge) -> Result<Vec<Vertex>, DetourError> {
    let (x, y) = (best.x, best.y);
    let target = best.value;
    let f = |a: Vertex, b: Vertex| cx.labels.ds[a] + Length::from(best.w) + cx.labels.dt[b];
    let ok = |p: &Vec<Vertex>| {
        p.first() == Some(&cx.d.s)
            && p.last() == Some(&cx.d.t)
            && is_simple(p, cx.g.n())
            && cx.g.path_length(p) == Some(target)
    };
    let dangler = &cx.roots.dangler;

    // Orientations achieving the minimum: (first, second) means the path
    // reaches `first` from s and leaves through `second` toward t.
    let mut orientations = vec![(x, y)];
    if f(y, x) == target {
        orientations.push((y, x));
    }
    for &(a, b) in &orientations {
        if let Some(p) = via_tree_prefix(cx, a, b).filter(ok) {
            return Ok(p);
        }
    }
    for &(a, b) in &orientations {
        // via_two_roots(a, b) walks b → a, so it realizes f(b, a).
        if dangler[a] && dangler[b] {
            for (p, q) in [(b, a), (a, b)] {
                if let Some(path) = via_two_roots(cx, p, q).filter(ok) {
                    return Ok(path);
                }
            }
        }
        if dangler[a] && !dangler[b] {
            if let Some(path) = via_dangler_stem(cx, a, b).filter(ok) {
                return Ok(path);
            }
        }
        if dangler[b] && !dangler[a] {
            if let Some(path) = via_dangler_stem(cx, b, a).filter(ok) {
                return Ok(path);
            }
        }
    }
    for &(a, b) in &orientations {
        if let Some(p) = via_enumerated_prefix(cx, a, b).filter(ok) {
            return Ok(p);
        }
    }
    // Last resort inside D⁺ between the two roots, stems attached.
    let (rx, ry) = (cx.roots.r[x], cx.roots.r[y]);
    let mut found = None;
    for (a, b, ra, rb) in [(x, y, rx, ry), (y, x, ry, rx)] {
        for_each_dplus_path(cx.d, cx.d.s, ra, &vec![false; cx.g.n()], 64, |p| {
            let mut stem = cx.tree.path_from_root(a);
            let Some(i) = stem.iter().position(|&v| v == ra) else {
                return false;
            };
            stem.drain(..i);
            let mut prefix = p.to_vec();
            prefix.extend_from_slice(&stem[1..]);
            let blocked = mask(cx.g.n(), &prefix);
            if blocked[b] {
                return false;
            }
            let _ = rb;
            if let Some(suffix) = tight_suffix(cx, b, &blocked) {
                let mut out = prefix;
                out.extend_from_slice(&suffix);
                if ok(&out) {
                    found = Some(out);
                    return true;
                }
            }
            false
        });
        if found.is_some() {
            break;
        }
    }
    found.ok_or(DetourError::RealizationExhausted { x, y })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetourPath {
    pub edge: DetourEdge,
    pub length: Length,
    pub path: Vec<Vertex>,
}

pub fn shortest_detour(cx: &DetourContext) -> Result<Option<DetourPath>, DetourError> {
    let edges = tilde_edges(cx.g, cx.tree, cx.d, cx.roots, cx.labels);
    let Some(best) = detour_min(&edges) else {
        return Ok(None);
    };
    let path = realize_detour_path(cx, best)?;
    Ok(Some(DetourPath {
        edge: best,
        length: best.value,
        path,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, Fixture};
    use crate::sssp::shortest_path_tree;

    struct Built {
        f: Fixture,
        labels: DistLabels,
        d: SpDag,
        tree: SpTree,
        roots: ForestRoots,
    }

    fn build(f: Fixture) -> Built {
        let labels = DistLabels::compute(&f.graph, f.query());
        let d = SpDag::build(&f.graph, &labels, f.query());
        let tree = shortest_path_tree(&f.graph, &labels.ds, f.s);
        let roots = forest_roots(&f.graph, &tree, &d, &labels);
        Built {
            f,
            labels,
            d,
            tree,
            roots,
        }
    }

    impl Built {
        fn cx(&self) -> DetourContext<'_> {
            DetourContext {
                g: &self.f.graph,
                labels: &self.labels,
                d: &self.d,
                tree: &self.tree,
                roots: &self.roots,
            }
        }
        fn tilde(&self) -> Vec<(Vertex, Vertex, Length)> {
            tilde_edges(&self.f.graph, &self.tree, &self.d, &self.roots, &self.labels)
                .into_iter()
                .map(|e| (e.x, e.y, e.value))
                .collect()
        }
    }

    #[test]
    fn roots_and_danglers() {
        let b = build(fixtures::g_tri());
        assert_eq!(b.roots.r, vec![0, 0, 2]);
        assert_eq!(b.roots.dangler, vec![true, false, true]);

        let b = build(fixtures::g_quad0());
        assert_eq!(b.roots.r, vec![0, 1, 2, 3]);
        assert!(b.roots.dangler.iter().all(|&x| x));
    }

    #[test]
    fn tilde_edge_examples() {
        assert_eq!(build(fixtures::g_tri()).tilde(), vec![(1, 2, 2), (2, 1, 3)]);
        assert!(build(fixtures::g_quad0()).tilde().is_empty());
        assert!(build(fixtures::g_pent()).tilde().is_empty());
    }

    #[test]
    fn minimum_examples() {
        let b = build(fixtures::g_tri());
        let best = detour_min(&tilde_edges(&b.f.graph, &b.tree, &b.d, &b.roots, &b.labels)).unwrap();
        assert_eq!((best.x, best.y, best.value), (1, 2, 2));

        let b = build(fixtures::g_out());
        let best = detour_min(&tilde_edges(&b.f.graph, &b.tree, &b.d, &b.roots, &b.labels)).unwrap();
        // s=0 a=1 b=2 t=3: edge (b, t)
        assert_eq!((best.x, best.y, best.value), (2, 3, 3));

        assert_eq!(detour_min(&[]), None);
    }

    #[test]
    fn shortest_detour_examples() {
        let got = shortest_detour(&build(fixtures::g_tri()).cx()).unwrap().unwrap();
        assert_eq!((got.length, got.path), (2, vec![0, 1, 2]));
        let got = shortest_detour(&build(fixtures::g_out()).cx()).unwrap().unwrap();
        assert_eq!((got.length, got.path), (3, vec![0, 1, 2, 3]));
        assert_eq!(shortest_detour(&build(fixtures::g_quad0()).cx()).unwrap(), None);
        assert_eq!(shortest_detour(&build(fixtures::pendant()).cx()).unwrap(), None);
    }
}
