//! Starting-node heuristics for Cuthill-McKee: minimum degree (MIND),
//! George-Liu (GL) and the bi-criteria node finder (BNF).
//!
//! GL walks towards a pseudo-peripheral node: it repeatedly roots a level
//! structure at the minimum-degree node of the current deepest level and
//! keeps going while the eccentricity grows. BNF performs the same walk but
//! remembers the width of every level structure it builds and returns the
//! visited node of smallest width. Both operate on a single connected
//! component; disconnected graphs are handled by the caller.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{AdjacencyGraph, BfsWorkspace, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FinderError {
    #[error("component is empty")]
    EmptyComponent,
    #[error("start node {0} is not in the component")]
    StartOutsideComponent(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// How GL and BNF pick the node their walk starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum StartPolicy {
    /// Smallest id among the minimum-degree nodes of the component.
    #[default]
    MinDegreeDeterministic,
    ExplicitNode {
        node: usize,
    },
    /// Uniform draw from the component using a ChaCha8 generator.
    SeededRandom {
        seed: u64,
    },
}

/// One level structure built during a walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub node: usize,
    pub eccentricity: usize,
    pub width: usize,
}

/// Nodes visited by a GL/BNF walk, in visiting order, and the chosen node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinderTrace {
    pub visited: Vec<TraceEntry>,
    pub result: usize,
    pub bfs_count: usize,
}

impl FinderTrace {
    pub fn roots(&self) -> Vec<usize> {
        self.visited.iter().map(|e| e.node).collect()
    }

    pub fn min_width(&self) -> usize {
        self.visited.iter().map(|e| e.width).min().unwrap_or(0)
    }
}

pub fn resolve_start(
    g: &AdjacencyGraph,
    component: &[usize],
    policy: StartPolicy,
) -> Result<usize, FinderError> {
    if component.is_empty() {
        return Err(FinderError::EmptyComponent);
    }
    match policy {
        StartPolicy::MinDegreeDeterministic => mind_find(g, component),
        StartPolicy::ExplicitNode { node } => {
            if component.contains(&node) {
                Ok(node)
            } else {
                Err(FinderError::StartOutsideComponent(node))
            }
        }
        StartPolicy::SeededRandom { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(component[rng.random_range(0..component.len())])
        }
    }
}

/// Smallest-id node of minimum degree in `component`.
pub fn mind_find(g: &AdjacencyGraph, component: &[usize]) -> Result<usize, FinderError> {
    for &v in component {
        g.check_node(v)?;
    }
    component
        .iter()
        .copied()
        .min_by_key(|&v| (g.degree(v), v))
        .ok_or(FinderError::EmptyComponent)
}

fn min_degree_node(g: &AdjacencyGraph, level: &[usize]) -> usize {
    level
        .iter()
        .copied()
        .min_by_key(|&v| (g.degree(v), v))
        .expect("levels are never empty")
}

/// Runs the George-Liu walk from `start`, reporting each level structure's
/// (node, eccentricity, width) to `visit`. Returns the last node rooted.
fn george_liu_walk(
    g: &AdjacencyGraph,
    start: usize,
    ws: &mut BfsWorkspace,
    mut visit: impl FnMut(TraceEntry),
) -> Result<usize, FinderError> {
    let mut current = ws.level_structure(g, start)?;
    visit(TraceEntry {
        node: start,
        eccentricity: current.depth(),
        width: current.width(),
    });
    if current.depth() == 0 {
        // A single-node component: the deepest level is the root itself.
        return Ok(start);
    }
    loop {
        let candidate = min_degree_node(g, current.last_level());
        let next = ws.level_structure(g, candidate)?;
        visit(TraceEntry {
            node: candidate,
            eccentricity: next.depth(),
            width: next.width(),
        });
        if next.depth() > current.depth() {
            current = next;
        } else {
            return Ok(candidate);
        }
    }
}

/// George-Liu pseudo-peripheral node finder.
pub fn gl_find(
    g: &AdjacencyGraph,
    component: &[usize],
    policy: StartPolicy,
) -> Result<FinderTrace, FinderError> {
    let start = resolve_start(g, component, policy)?;
    let mut ws = BfsWorkspace::new(g.n());
    let mut visited = Vec::new();
    let result = george_liu_walk(g, start, &mut ws, |e| visited.push(e))?;
    Ok(FinderTrace {
        bfs_count: visited.len(),
        visited,
        result,
    })
}

/// Bi-criteria node finder: the GL walk, returning the visited node of
/// minimum width. On equal widths the later node wins, so BNF agrees with
/// GL whenever the last node is among the narrowest.
pub fn bnf_find(
    g: &AdjacencyGraph,
    component: &[usize],
    policy: StartPolicy,
) -> Result<FinderTrace, FinderError> {
    let start = resolve_start(g, component, policy)?;
    let mut ws = BfsWorkspace::new(g.n());
    let mut visited = Vec::new();
    let mut record_width = usize::MAX;
    let mut recorded = start;
    george_liu_walk(g, start, &mut ws, |e| {
        if e.width <= record_width {
            record_width = e.width;
            recorded = e.node;
        }
        visited.push(e);
    })?;
    Ok(FinderTrace {
        bfs_count: visited.len(),
        visited,
        result: recorded,
    })
}

/// Result-only variants for timing loops: same walk, no trace allocation.
pub(crate) fn gl_result(
    g: &AdjacencyGraph,
    start: usize,
    ws: &mut BfsWorkspace,
) -> Result<usize, FinderError> {
    george_liu_walk(g, start, ws, |_| {})
}

pub(crate) fn bnf_result(
    g: &AdjacencyGraph,
    start: usize,
    ws: &mut BfsWorkspace,
) -> Result<usize, FinderError> {
    let mut record_width = usize::MAX;
    let mut recorded = start;
    george_liu_walk(g, start, ws, |e| {
        if e.width <= record_width {
            record_width = e.width;
            recorded = e.node;
        }
    })?;
    Ok(recorded)
}
