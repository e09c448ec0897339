//! End-to-end next-to-shortest path computation.

use thiserror::Error;

use crate::detour::{
    detour_min, forest_roots, shortest_detour, tilde_edges, DetourContext, DetourEdge, DetourError, ForestRoots,
};
use crate::graph::{Graph, Length, Query, QueryError, Vertex};
use crate::spdag::SpDag;
use crate::sssp::{shortest_path_tree, DistLabels, SpTree};
use crate::zero::{dplus_dominators, zero_components, AuxError, ZeroPartition, ZeroStructure};
use crate::zigzag::{realize_zigzag_path, search_backward_pairs, PairSearch, ZigzagError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Found,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathKind {
    Zigzag,
    Detour,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NtspResult {
    pub status: Status,
    pub kind: Option<PathKind>,
    pub shortest: Length,
    pub length: Option<Length>,
    pub path: Option<Vec<Vertex>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error(transparent)]
    Aux(#[from] AuxError),
    #[error(transparent)]
    Zigzag(#[from] ZigzagError),
    #[error(transparent)]
    Detour(#[from] DetourError),
}

/// Every intermediate structure of one solve.
#[derive(Debug, Clone)]
pub struct Instance<'g> {
    pub graph: &'g Graph,
    pub query: Query,
    pub labels: DistLabels,
    pub dag: SpDag,
    pub zero: ZeroStructure,
    pub tree: SpTree,
    pub roots: ForestRoots,
}

impl<'g> Instance<'g> {
    pub fn build(graph: &'g Graph, query: Query) -> Result<Self, SolveError> {
        query.validate(graph)?;
        let labels = DistLabels::compute(graph, query);
        let dag = SpDag::build(graph, &labels, query);
        let zero = ZeroStructure::build(&dag, &labels)?;
        let tree = shortest_path_tree(graph, &labels.ds, query.s);
        let roots = forest_roots(graph, &tree, &dag, &labels);
        Ok(Self {
            graph,
            query,
            labels,
            dag,
            zero,
            tree,
            roots,
        })
    }

    pub fn detour_context(&self) -> DetourContext<'_> {
        DetourContext {
            g: self.graph,
            labels: &self.labels,
            d: &self.dag,
            tree: &self.tree,
            roots: &self.roots,
        }
    }

    pub fn pair_search(&self) -> PairSearch {
        search_backward_pairs(&self.dag, &self.zero)
    }

    pub fn solve(&self) -> Result<NtspResult, SolveError> {
        let search = self.pair_search();
        let zigzag = realize_zigzag_path(&self.dag, &self.zero, &self.labels, &search)?;
        let detour = shortest_detour(&self.detour_context())?;
        let shortest = self.labels.dst;
        let found = |kind, length, path| NtspResult {
            status: Status::Found,
            kind: Some(kind),
            shortest,
            length: Some(length),
            path: Some(path),
        };
        Ok(match (zigzag, detour) {
            (None, None) => NtspResult {
                status: Status::None,
                kind: None,
                shortest,
                length: None,
                path: None,
            },
            (Some(z), Some(dt)) if z.length < dt.length => found(PathKind::Zigzag, z.length, z.path),
            (Some(z), None) => found(PathKind::Zigzag, z.length, z.path),
            (_, Some(dt)) => found(PathKind::Detour, dt.length, dt.path),
        })
    }
}

pub fn next_to_shortest(g: &Graph, q: Query) -> Result<NtspResult, SolveError> {
    Instance::build(g, q)?.solve()
}

/// The linear part of the pipeline, given distance labels: `D`, its
/// dominators, zero-components, and the detour minimum. Used for timing.
#[derive(Debug, Clone)]
pub struct LinearStages {
    pub dag: SpDag,
    pub partition: ZeroPartition,
    pub detour: Option<DetourEdge>,
}

pub fn linear_stages(g: &Graph, q: Query, labels: &DistLabels) -> Result<LinearStages, SolveError> {
    let dag = SpDag::build(g, labels, q);
    let (ts, tt) = dplus_dominators(&dag).map_err(AuxError::from)?;
    let partition = zero_components(&dag, labels, &ts, &tt);
    let tree = shortest_path_tree(g, &labels.ds, q.s);
    let roots = forest_roots(g, &tree, &dag, labels);
    let detour = detour_min(&tilde_edges(g, &tree, &dag, &roots, labels));
    Ok(LinearStages { dag, partition, detour })
}
