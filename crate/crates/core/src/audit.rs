//! Cross-checks of the pipeline against the brute-force oracle, shared by
//! the integration tests, the acceptance suite and `ntsp solve --check`.
//!
//! Every check returns `Err` with a readable description of the first
//! violation it finds.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::flow::max_flow_at_least;
use crate::flow::{FlowNode, INF};
use crate::graph::{random_graph, Graph, Length, Query, Vertex};
use crate::oracle::{directed_paths, oracle_distances, oracle_immediate_dominator, oracle_max_flow, OracleInstance};
use crate::solver::{Instance, NtspResult, PathKind, Status};
use crate::zigzag::{build_candidate_network, candidate_component_pairs, FlowRecord, PairKind, PairSearch};

/// A connected random instance with `n ∈ [4, 9]`, `m ≤ 18`, weights in
/// `0..=3`, and random distinct endpoints.
pub fn corpus_instance(seed: u64, zero_prob: f64) -> (Graph, Query) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(4..=9);
    let m = rng.gen_range(n - 1..=(n * (n - 1) / 2).min(18));
    let g = random_graph(n, m, 3, zero_prob, rng.gen()).expect("corpus parameters are valid");
    let s = rng.gen_range(0..n);
    let t = (s + rng.gen_range(1..n)) % n;
    (g, Query::new(s, t))
}

/// Direction of one step along a path, by `d_s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Up,
    Flat,
    Down,
}

fn steps(path: &[Vertex], ds: &[Length]) -> Vec<Step> {
    path.windows(2)
        .map(|e| match ds[e[0]].cmp(&ds[e[1]]) {
            std::cmp::Ordering::Less => Step::Up,
            std::cmp::Ordering::Equal => Step::Flat,
            std::cmp::Ordering::Greater => Step::Down,
        })
        .collect()
}

/// Number of maximal runs of `true` in the sequence.
fn runs(flags: impl IntoIterator<Item = bool>) -> usize {
    let mut count = 0;
    let mut prev = false;
    for f in flags {
        if f && !prev {
            count += 1;
        }
        prev = f;
    }
    count
}

/// Length, status and witness of `r` against the oracle, including the
/// shape of the witness.
pub fn check_result(g: &Graph, q: Query, o: &OracleInstance, r: &NtspResult) -> Result<(), String> {
    if r.shortest != o.shortest {
        return Err(format!("shortest {} but oracle {}", r.shortest, o.shortest));
    }
    let want = o.next_to_shortest();
    if r.length != want {
        return Err(format!("length {:?} but oracle {want:?}", r.length));
    }
    if (r.status == Status::None) != want.is_none() {
        return Err(format!("status {:?} but oracle {want:?}", r.status));
    }
    let Some(path) = &r.path else {
        return if r.status == Status::None {
            Ok(())
        } else {
            Err("found without a path".into())
        };
    };
    let mut seen = vec![false; g.n()];
    if !path
        .iter()
        .all(|&v| v < g.n() && !std::mem::replace(&mut seen[v], true))
    {
        return Err(format!("witness {path:?} is not simple"));
    }
    if path.first() != Some(&q.s) || path.last() != Some(&q.t) {
        return Err(format!("witness {path:?} has wrong endpoints"));
    }
    if g.path_length(path) != r.length {
        return Err(format!("witness {path:?} has length {:?}", g.path_length(path)));
    }
    if r.length.is_some_and(|l| l <= o.shortest) {
        return Err("witness is not longer than a shortest path".into());
    }
    let ds = oracle_distances(g, q.s);
    let dir = steps(path, &ds);
    let off_d: Vec<bool> = path.windows(2).map(|e| !o.in_d(e[0], e[1])).collect();
    match r.kind {
        Some(PathKind::Zigzag) => {
            if off_d.iter().any(|&x| x) {
                return Err(format!("zigzag witness {path:?} leaves D"));
            }
            // Ignoring flat steps, the profile must read up* down+ up*.
            let moving: Vec<Step> = dir.into_iter().filter(|&s| s != Step::Flat).collect();
            if runs(moving.iter().map(|&s| s == Step::Down)) != 1 {
                return Err(format!("zigzag witness {path:?} needs exactly one backward stretch"));
            }
        }
        Some(PathKind::Detour) => {
            if runs(off_d.iter().copied()) != 1 {
                return Err(format!("detour witness {path:?} needs exactly one off-D stretch"));
            }
            if dir.iter().zip(&off_d).any(|(&s, &off)| !off && s == Step::Down) {
                return Err(format!("detour witness {path:?} goes backward inside D"));
            }
        }
        None => return Err("found without a kind".into()),
    }
    Ok(())
}

/// Names of the structural checks, in report order.
pub const STRUCTURE_CHECKS: [&str; 10] = [
    "d-membership",
    "dominators",
    "zero-components",
    "zero-dominators",
    "aux-dag",
    "beta1-necessity",
    "beta1-necessity-strict",
    "beta1-order",
    "rigidity",
    "optimal-pair",
];

/// First violation per check name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Violations(pub Vec<(&'static str, String)>);

impl Violations {
    fn push(&mut self, name: &'static str, msg: String) {
        if !self.0.iter().any(|(n, _)| *n == name) {
            self.0.push((name, msg));
        }
    }

    pub fn has(&self, name: &str) -> bool {
        self.0.iter().any(|(n, _)| *n == name)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Structural facts about `D⁺`, its dominators, the zero-components, `𝒵`
/// and β₁, each against an independent brute-force computation.
///
/// `beta1-necessity` uses the literal valid-pair definition, where the
/// backward stretch may begin or end on zero edges; `beta1-necessity-strict`
/// only considers stretches that begin and end on a reversed positive arc.
pub fn check_structure(g: &Graph, q: Query, o: &OracleInstance, inst: &Instance, search: &PairSearch) -> Violations {
    let n = g.n();
    let d = &inst.dag;
    let zs = &inst.zero;
    let mut out = Violations::default();

    let verts: Vec<Vertex> = d.vertices().collect();
    if verts != o.d_vertices.iter().copied().collect::<Vec<_>>() {
        out.push(
            "d-membership",
            format!("vertices {verts:?} vs oracle {:?}", o.d_vertices),
        );
        return out;
    }
    let mut edges: Vec<(Vertex, Vertex, u32)> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(id, _)| d.edge_in_d[id])
        .map(|(_, e)| (e.u.min(e.v), e.u.max(e.v), e.w))
        .collect();
    edges.sort_unstable();
    if edges != o.d_edges.iter().copied().collect::<Vec<_>>() {
        out.push("d-membership", format!("edges {edges:?} vs oracle {:?}", o.d_edges));
        return out;
    }

    let dg = o.dplus(n);
    let rev = dg.reversed();
    let mut is = vec![None; n];
    let mut it = vec![None; n];
    for &v in &verts {
        if v != q.s {
            is[v] = Some(oracle_immediate_dominator(&dg, q.s, v));
        }
        if v != q.t {
            it[v] = Some(oracle_immediate_dominator(&rev, q.t, v));
        }
        if zs.ts.idom(v) != is[v] || zs.tt.idom(v) != it[v] {
            let msg = format!(
                "vertex {v}: ({:?}, {:?}) vs oracle ({:?}, {:?})",
                zs.ts.idom(v),
                zs.tt.idom(v),
                is[v],
                it[v]
            );
            out.push("dominators", msg);
        }
    }

    // Zero-components against 0*-paths: zero-edge paths containing none of
    // the immediate dominators of their endpoints.
    let zero_adj = |v: Vertex| {
        g.neighbors(v)
            .iter()
            .filter(move |&&(u, id)| g.edge(id).w == 0 && o.in_d(v, u))
            .map(|&(u, _)| u)
    };
    let zero_star = |u: Vertex, v: Vertex| -> bool {
        let avoid = [is[u], is[v], it[u], it[v]];
        let blocked = |x: Vertex| avoid.contains(&Some(x));
        if blocked(u) || blocked(v) {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![u];
        seen[u] = true;
        while let Some(a) = stack.pop() {
            if a == v {
                return true;
            }
            for b in zero_adj(a) {
                if !seen[b] && !blocked(b) {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        false
    };
    let ds = oracle_distances(g, q.s);
    for &u in &verts {
        for &v in &verts {
            if u < v && (zs.comp(u) == zs.comp(v)) != zero_star(u, v) {
                out.push(
                    "zero-components",
                    format!("pair ({u}, {v}) disagrees with 0*-path test"),
                );
            }
        }
    }
    for (c, members) in zs.partition.members.iter().enumerate() {
        for &v in members {
            if ds[v] != zs.partition.comp_ds[c] {
                out.push("zero-components", format!("component {c} has mixed d_s"));
            }
            if is[v] != is[members[0]] || it[v] != it[members[0]] {
                out.push(
                    "zero-dominators",
                    format!("component {c} members disagree on dominators"),
                );
            }
        }
    }

    // 𝒵: acyclic, rigid arcs, zero arcs hang on a dominator edge.
    let aux = &zs.aux;
    if aux.topo.len() != aux.len() {
        out.push("aux-dag", "not acyclic".into());
    } else {
        let mut pos = vec![0; aux.len()];
        for (i, &c) in aux.topo.iter().enumerate() {
            pos[c] = i;
        }
        let cd = &zs.partition.comp_ds;
        for a in &aux.arcs {
            if pos[a.from] >= pos[a.to] {
                out.push("aux-dag", format!("arc {a:?} against topological order"));
            }
            if cd[a.to] - cd[a.from] != a.w {
                out.push("aux-dag", format!("arc {a:?} is not tight"));
            }
            if a.w == 0 && aux.idom_s.idom(a.to) != Some(a.from) && aux.idom_t.idom(a.from) != Some(a.to) {
                out.push("aux-dag", format!("zero arc {a:?} is not a dominator edge"));
            }
        }
    }

    let mut best_valid: Option<Length> = None;
    for &x in &verts {
        for &y in &verts {
            if o.valid_backward_pair(g, x, y) {
                if !zs.beta1(x, y) {
                    out.push("beta1-necessity", format!("valid pair ({x}, {y}) has β₁ false"));
                }
                if o.strict_backward_pair(g, x, y) && !zs.beta1(x, y) {
                    out.push("beta1-necessity-strict", format!("valid pair ({x}, {y}) has β₁ false"));
                }
                let delta = ds[x] - ds[y];
                best_valid = Some(best_valid.map_or(delta, |b| b.min(delta)));
            }
            if zs.beta1(x, y) && ds[y] >= ds[x] {
                out.push("beta1-order", format!("β₁({x}, {y}) with d_s({y}) ≥ d_s({x})"));
            }
        }
    }

    // Every D⁺ arc is tight, so any directed path telescopes; confirm on
    // enumerated s-rooted paths as well.
    for &(u, v) in &o.d_arcs {
        if ds[u] + Length::from(g.weight(u, v).unwrap()) != ds[v] {
            out.push("rigidity", format!("arc ({u}, {v}) is not tight"));
        }
    }
    for &v in &verts {
        for p in directed_paths(&dg, q.s, v, 64) {
            if g.path_length(&p) != Some(ds[v]) {
                out.push("rigidity", format!("D⁺ path {p:?} has the wrong length"));
            }
        }
    }

    let got = search.best.map(|c| c.delta);
    if got != best_valid {
        out.push("optimal-pair", format!("search δ {got:?} vs oracle {best_valid:?}"));
    }
    out
}

/// For up to `limit` vertex pairs of `D⁺ − {s, t}`, disjoint `s ⇝ x` and
/// `y ⇝ t` paths exist, or disjoint `s ⇝ y` and `x ⇝ t` paths.
pub fn check_two_paths(g: &Graph, q: Query, o: &OracleInstance, limit: usize) -> Result<(), String> {
    let dg = o.dplus(g.n());
    let inner: Vec<Vertex> = o.d_vertices.iter().copied().filter(|&v| v != q.s && v != q.t).collect();
    let disjoint = |a: &[Vertex], b: &[Vertex]| a.iter().all(|v| !b.contains(v));
    let pair_ok = |x: Vertex, y: Vertex| {
        let from_s = directed_paths(&dg, q.s, x, 256);
        let to_t = directed_paths(&dg, y, q.t, 256);
        from_s.iter().any(|p| to_t.iter().any(|r| disjoint(p, r)))
    };
    let mut checked = 0;
    for (i, &x) in inner.iter().enumerate() {
        for &y in &inner[i + 1..] {
            if checked == limit {
                return Ok(());
            }
            checked += 1;
            if !pair_ok(x, y) && !pair_ok(y, x) {
                return Err(format!("two-paths: no disjoint pair for ({x}, {y})"));
            }
        }
    }
    Ok(())
}

/// Every flow test the search ran: round count within `min(k, 3)`, value
/// and verdict agreeing with the oracle max-flow, and a decomposition into
/// real paths that honors the capacities. Returns the number of networks.
pub fn check_flows(records: &[FlowRecord]) -> Result<usize, String> {
    for rec in records {
        let net = &rec.network;
        let out = &rec.outcome;
        if out.rounds > rec.k as usize || out.rounds > 3 {
            return Err(format!("{} augmentation rounds for k = {}", out.rounds, rec.k));
        }
        let best = oracle_max_flow(net).min(u64::from(rec.k));
        if u64::from(out.value) != best || out.reached != (best >= u64::from(rec.k)) {
            return Err(format!("flow value {} vs oracle {best} (k = {})", out.value, rec.k));
        }
        if out.paths.len() != out.value as usize {
            return Err("decomposition size differs from flow value".into());
        }
        let index = |node: FlowNode| net.nodes.iter().position(|&x| x == node).unwrap();
        let has_arc = |a: usize, b: usize| net.arcs.iter().any(|&(p, q, c)| p == a && q == b && c > 0);
        let mut used = vec![0u32; net.len()];
        let mut arc_used = std::collections::HashMap::new();
        for p in &out.paths {
            let mut prev = net.source;
            for &node in p {
                let i = index(node);
                if !has_arc(prev, i) {
                    return Err(format!("decomposed path {p:?} uses a missing arc"));
                }
                *arc_used.entry((prev, i)).or_insert(0u32) += 1;
                used[i] += 1;
                prev = i;
            }
            if !has_arc(prev, net.sink) {
                return Err(format!("decomposed path {p:?} does not reach the sink"));
            }
        }
        for (i, &u) in used.iter().enumerate() {
            if net.cap[i] != INF && u > net.cap[i] {
                return Err(format!("node {:?} over capacity", net.nodes[i]));
            }
        }
        for (&(a, b), &u) in &arc_used {
            let cap: u64 = net
                .arcs
                .iter()
                .filter(|&&(p, q, _)| p == a && q == b)
                .map(|&(_, _, c)| u64::from(c))
                .sum();
            if u64::from(u) > cap {
                return Err(format!("arc {a}->{b} over capacity"));
            }
        }
    }
    Ok(records.len())
}

/// Flow tests for every candidate component pair, without incumbent
/// pruning.
pub fn all_candidate_flows(inst: &Instance) -> Vec<FlowRecord> {
    candidate_component_pairs(&inst.zero)
        .into_iter()
        .map(|(cx, cy, kind)| {
            let k = if kind == PairKind::II { 3 } else { 2 };
            let network = build_candidate_network(&inst.dag, &inst.zero, cx, cy, kind);
            let outcome = max_flow_at_least(&network, k);
            FlowRecord {
                cx,
                cy,
                kind,
                k,
                network,
                outcome,
            }
        })
        .collect()
}

/// Solve plus every check above for one instance.
pub fn audit_instance(g: &Graph, q: Query) -> Result<AuditReport, String> {
    let o = OracleInstance::new(g, q).map_err(|e| e.to_string())?;
    let inst = Instance::build(g, q).map_err(|e| e.to_string())?;
    let search = inst.pair_search();
    let result = inst.solve().map_err(|e| e.to_string())?;
    Ok(AuditReport {
        result_check: check_result(g, q, &o, &result),
        structure: check_structure(g, q, &o, &inst, &search),
        flows: check_flows(&search.flows),
        kinds: search.flows.iter().map(|f| f.kind).collect(),
        result,
    })
}

#[derive(Debug, Clone)]
pub struct AuditReport {
    pub result: NtspResult,
    pub result_check: Result<(), String>,
    pub structure: Violations,
    pub flows: Result<usize, String>,
    pub kinds: Vec<PairKind>,
}
