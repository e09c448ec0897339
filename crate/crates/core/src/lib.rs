//! Next-to-shortest s–t paths in undirected graphs with nonnegative integer
//! edge lengths.
//!
//! A next-to-shortest path is a simple s–t path of minimum length among those
//! strictly longer than `d(s,t)`. The solver splits the problem in two:
//!
//! * [`detour`]: the best simple path leaving the shortest-path union `D`;
//! * [`zigzag`]: the best simple path inside `D` that walks some positive
//!   edge backward.
//!
//! Both rest on [`spdag`] (`D` and its orientation `D⁺`), [`dominators`] and
//! [`zero`] (zero-components and the auxiliary DAG). [`oracle`] holds the
//! brute-force reference used by the tests.

pub mod audit;
pub mod detour;
pub mod dominators;
pub mod fixtures;
pub mod flow;
pub mod graph;
pub mod oracle;
pub mod paths;
pub mod solver;
pub mod spdag;
pub mod sssp;
pub mod zero;
pub mod zigzag;

pub use graph::{parse_graph, random_graph, Graph, GraphError, Length, Query, QueryError, Vertex};
pub use solver::{next_to_shortest, NtspResult, PathKind, SolveError, Status};
