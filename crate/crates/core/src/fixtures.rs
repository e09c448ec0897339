//! Small named instances used throughout the tests and the acceptance suite.
//!
//! Vertex ids follow the letter order given in each constructor's comment.

use crate::graph::{Graph, Query, Vertex};

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub graph: Graph,
    pub s: Vertex,
    pub t: Vertex,
}

impl Fixture {
    fn new(name: &'static str, n: usize, edges: &[(Vertex, Vertex, u32)], s: Vertex, t: Vertex) -> Self {
        let graph = Graph::from_edges(n, edges.iter().copied()).expect("fixture graphs are valid");
        Self { name, graph, s, t }
    }

    pub fn query(&self) -> Query {
        Query::new(self.s, self.t)
    }
}

/// s=0, a=1, t=2.
pub fn g_tri() -> Fixture {
    Fixture::new("g_tri", 3, &[(0, 2, 1), (0, 1, 1), (1, 2, 1)], 0, 2)
}

/// s=0, u=1, v=2, t=3.
pub fn g_pent() -> Fixture {
    Fixture::new(
        "g_pent",
        4,
        &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 2, 2), (1, 3, 2)],
        0,
        3,
    )
}

/// s=0, a=1, b=2, t=3.
pub fn g_quad0() -> Fixture {
    Fixture::new(
        "g_quad0",
        4,
        &[(0, 1, 1), (1, 3, 1), (0, 2, 1), (2, 3, 1), (1, 2, 0)],
        0,
        3,
    )
}

/// s=0, a=1, t=2, k=3.
pub fn g_knob() -> Fixture {
    Fixture::new("g_knob", 4, &[(0, 1, 1), (1, 2, 1), (1, 3, 0)], 0, 2)
}

/// s=0, u=1, t=2.
pub fn chain() -> Fixture {
    Fixture::new("chain", 3, &[(0, 1, 1), (1, 2, 1)], 0, 2)
}

/// s=0, a=1, t=2.
pub fn g_z() -> Fixture {
    Fixture::new("g_z", 3, &[(0, 1, 0), (1, 2, 1), (0, 2, 1)], 0, 2)
}

/// s=0, a=1, b=2, t=3.
pub fn g_out() -> Fixture {
    Fixture::new("g_out", 4, &[(0, 1, 1), (1, 3, 1), (1, 2, 1), (2, 3, 1)], 0, 3)
}

const T_II: [(Vertex, Vertex, u32); 9] = [
    (0, 1, 1),
    (0, 2, 1),
    (1, 2, 0),
    (1, 3, 1),
    (2, 4, 1),
    (1, 4, 1),
    (3, 4, 0),
    (3, 5, 1),
    (4, 5, 1),
];

/// s=0, y1=1, y2=2, x1=3, x2=4, t=5.
pub fn g_t2() -> Fixture {
    Fixture::new("g_tII", 6, &T_II, 0, 5)
}

/// `g_t2` plus the edge y2–t of length 2.
pub fn g_t3() -> Fixture {
    let mut edges = T_II.to_vec();
    edges.push((2, 5, 2));
    Fixture::new("g_tIII", 6, &edges, 0, 5)
}

/// s=0, t=1, p=2.
pub fn pendant() -> Fixture {
    Fixture::new("pendant", 3, &[(0, 1, 1), (1, 2, 1)], 0, 1)
}

pub fn all() -> Vec<Fixture> {
    vec![
        g_tri(),
        g_pent(),
        g_quad0(),
        g_knob(),
        chain(),
        g_z(),
        g_out(),
        g_t2(),
        g_t3(),
        pendant(),
    ]
}
