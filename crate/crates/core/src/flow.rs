//! Vertex-capacitated flow networks and a bounded augmenting-path test.
//!
//! Vertex capacities are realized by splitting every node into an in-copy
//! and an out-copy joined by an arc carrying the node's capacity. Since the
//! callers only ask whether the flow reaches a small `k`, infinite
//! capacities are clamped to `k`.

use std::collections::VecDeque;

use crate::graph::Vertex;

/// Capacity value standing for "unbounded".
pub const INF: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FlowNode {
    Source,
    Sink,
    Vertex(Vertex),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    pub nodes: Vec<FlowNode>,
    /// Vertex capacity per node.
    pub cap: Vec<u32>,
    /// `(tail, head, capacity)` over node indices.
    pub arcs: Vec<(usize, usize, u32)>,
    pub source: usize,
    pub sink: usize,
}

impl FlowNetwork {
    /// An empty network holding only the source and the sink.
    pub fn new() -> Self {
        Self {
            nodes: vec![FlowNode::Source, FlowNode::Sink],
            cap: vec![INF, INF],
            arcs: Vec::new(),
            source: 0,
            sink: 1,
        }
    }

    pub fn add_node(&mut self, node: FlowNode, cap: u32) -> usize {
        self.nodes.push(node);
        self.cap.push(cap);
        self.nodes.len() - 1
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        self.arcs.push((from, to, cap));
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

impl Default for FlowNetwork {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowOutcome {
    pub reached: bool,
    /// Flow value found, at most `k`.
    pub value: u32,
    /// Number of breadth-first augmentations performed.
    pub rounds: usize,
    /// Source-to-sink paths (as network nodes, terminals excluded), one per
    /// unit of flow.
    pub paths: Vec<Vec<FlowNode>>,
}

struct Residual {
    head: Vec<usize>,
    cap: Vec<u32>,
    adj: Vec<Vec<usize>>,
}

impl Residual {
    fn with_nodes(n: usize) -> Self {
        Self {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    fn link(&mut self, u: usize, v: usize, c: u32) {
        self.adj[u].push(self.head.len());
        self.head.push(v);
        self.cap.push(c);
        self.adj[v].push(self.head.len());
        self.head.push(u);
        self.cap.push(0);
    }
}

/// Runs at most `k` breadth-first augmentations and reports whether the
/// maximum flow from source to sink is at least `k`.
pub fn max_flow_at_least(net: &FlowNetwork, k: u32) -> FlowOutcome {
    let clamp = |c: u32| c.min(k);
    let n = net.nodes.len();
    let (vin, vout) = (|i: usize| 2 * i, |i: usize| 2 * i + 1);
    let mut r = Residual::with_nodes(2 * n);
    let mut split_arc = Vec::with_capacity(n);
    for (i, &c) in net.cap.iter().enumerate() {
        split_arc.push(r.head.len());
        r.link(vin(i), vout(i), clamp(c));
    }
    let mut arc_edge = Vec::with_capacity(net.arcs.len());
    for &(a, b, c) in &net.arcs {
        arc_edge.push(r.head.len());
        r.link(vout(a), vin(b), clamp(c));
    }

    let (src, dst) = (vout(net.source), vin(net.sink));
    let mut value = 0u32;
    let mut rounds = 0usize;
    let mut via = vec![usize::MAX; 2 * n];
    while value < k {
        via.fill(usize::MAX);
        let mut queue = VecDeque::from([src]);
        let mut found = false;
        'bfs: while let Some(u) = queue.pop_front() {
            for &e in &r.adj[u] {
                let v = r.head[e];
                if r.cap[e] > 0 && v != src && via[v] == usize::MAX {
                    via[v] = e;
                    if v == dst {
                        found = true;
                        break 'bfs;
                    }
                    queue.push_back(v);
                }
            }
        }
        if !found {
            break;
        }
        rounds += 1;
        let mut push = k - value;
        let mut v = dst;
        while v != src {
            let e = via[v];
            push = push.min(r.cap[e]);
            v = r.head[e ^ 1];
        }
        let mut v = dst;
        while v != src {
            let e = via[v];
            r.cap[e] -= push;
            r.cap[e ^ 1] += push;
            v = r.head[e ^ 1];
        }
        value += push;
    }

    let reached = value >= k;
    let paths = if value > 0 {
        decompose(net, &r, &arc_edge, value)
    } else {
        Vec::new()
    };
    FlowOutcome {
        reached,
        value,
        rounds,
        paths,
    }
}

/// Splits the flow into `value` unit paths, cancelling any cycles met on
/// the way.
fn decompose(net: &FlowNetwork, r: &Residual, arc_edge: &[usize], value: u32) -> Vec<Vec<FlowNode>> {
    let n = net.nodes.len();
    // Flow on a forward residual edge equals the capacity of its twin.
    let mut flow: Vec<u32> = arc_edge.iter().map(|&e| r.cap[e ^ 1]).collect();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(a, _, _)) in net.arcs.iter().enumerate() {
        out[a].push(i);
    }

    let mut paths = Vec::new();
    for _ in 0..value {
        let mut stack: Vec<usize> = Vec::new();
        let mut arcs_taken: Vec<usize> = Vec::new();
        let mut pos = vec![usize::MAX; n];
        let mut u = net.source;
        pos[u] = 0;
        stack.push(u);
        while u != net.sink {
            let Some(&i) = out[u].iter().find(|&&i| flow[i] > 0) else {
                break;
            };
            let v = net.arcs[i].1;
            if pos[v] != usize::MAX {
                // Cycle: drop one unit around it and back up to `v`.
                flow[i] -= 1;
                for &j in &arcs_taken[pos[v]..] {
                    flow[j] -= 1;
                }
                for &w in &stack[pos[v] + 1..] {
                    pos[w] = usize::MAX;
                }
                stack.truncate(pos[v] + 1);
                arcs_taken.truncate(pos[v]);
                u = v;
                continue;
            }
            pos[v] = stack.len();
            stack.push(v);
            arcs_taken.push(i);
            u = v;
        }
        if u != net.sink {
            break;
        }
        for &i in &arcs_taken {
            flow[i] -= 1;
        }
        paths.push(stack[1..stack.len() - 1].iter().map(|&i| net.nodes[i]).collect());
    }
    paths
}
