//! Cuthill-McKee orderings, symmetric permutation, and the three
//! reordering pipelines (RCM++, GL_RCM, MIND_RCM).

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finders::{self, FinderError, StartPolicy};
use crate::graph::{connected_components, AdjacencyGraph, BfsWorkspace, ComponentSet};
use crate::matrix::{MatrixError, SparseSymMatrix};
use crate::metrics;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReorderError {
    #[error("not a permutation of 0..{n}")]
    NotAPermutation { n: usize },
    #[error("permutation has length {perm}, matrix has dimension {matrix}")]
    DimensionMismatch { perm: usize, matrix: usize },
    #[error("component {component} has no start node")]
    MissingStart { component: usize },
    #[error("start node {node} is out of range or shares a component with another start")]
    MisplacedStart { node: usize },
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
    #[error(transparent)]
    Finder(#[from] FinderError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A relabelling of 0..n: `new_of_old[v]` is the new index of original `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Permutation {
    new_of_old: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            new_of_old: (0..n).collect(),
        }
    }

    pub fn from_new_of_old(new_of_old: Vec<usize>) -> Result<Self, ReorderError> {
        let n = new_of_old.len();
        let mut seen = vec![false; n];
        for &p in &new_of_old {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(ReorderError::NotAPermutation { n });
            }
        }
        Ok(Permutation { new_of_old })
    }

    /// Builds the permutation that places `order[k]` at position `k`.
    pub fn from_order(order: &[usize]) -> Result<Self, ReorderError> {
        let n = order.len();
        let mut new_of_old = vec![usize::MAX; n];
        for (pos, &old) in order.iter().enumerate() {
            if old >= n || new_of_old[old] != usize::MAX {
                return Err(ReorderError::NotAPermutation { n });
            }
            new_of_old[old] = pos;
        }
        Ok(Permutation { new_of_old })
    }

    pub fn len(&self) -> usize {
        self.new_of_old.len()
    }

    pub fn is_empty(&self) -> bool {
        self.new_of_old.is_empty()
    }

    pub fn new_of_old(&self) -> &[usize] {
        &self.new_of_old
    }

    /// Original index placed at each new position.
    pub fn order(&self) -> Vec<usize> {
        let mut order = vec![0; self.len()];
        for (old, &new) in self.new_of_old.iter().enumerate() {
            order[new] = old;
        }
        order
    }
}

/// Reverses the position of every node: new' = n - 1 - new.
pub fn reverse(p: &Permutation) -> Permutation {
    let n = p.len();
    Permutation {
        new_of_old: p.new_of_old.iter().map(|&q| n - 1 - q).collect(),
    }
}

/// Cuthill-McKee ordering with one given start node per component.
///
/// Components are numbered consecutively, smallest member first. Inside a
/// component every dequeued node appends its unvisited neighbors sorted by
/// (degree, id).
pub fn cuthill_mckee(g: &AdjacencyGraph, starts: &[usize]) -> Result<Permutation, ReorderError> {
    let components = connected_components(g);
    cuthill_mckee_with(g, &components, starts)
}

pub(crate) fn cuthill_mckee_with(
    g: &AdjacencyGraph,
    components: &ComponentSet,
    starts: &[usize],
) -> Result<Permutation, ReorderError> {
    let n = g.n();
    let mut start_of = vec![usize::MAX; components.len()];
    for &s in starts {
        if s >= n {
            return Err(ReorderError::MisplacedStart { node: s });
        }
        let c = components.component_of(s);
        if start_of[c] != usize::MAX {
            return Err(ReorderError::MisplacedStart { node: s });
        }
        start_of[c] = s;
    }
    if let Some(component) = start_of.iter().position(|&s| s == usize::MAX) {
        return Err(ReorderError::MissingStart { component });
    }

    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    let mut queue = VecDeque::new();
    let mut fresh = Vec::new();
    for &start in &start_of {
        visited[start] = true;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            fresh.clear();
            fresh.extend(g.neighbors(u).iter().copied().filter(|&w| !visited[w]));
            fresh.sort_unstable_by_key(|&w| (g.degree(w), w));
            for &w in &fresh {
                visited[w] = true;
                queue.push_back(w);
            }
        }
    }
    Permutation::from_order(&order)
}

/// P·A·Pᵀ: entry (i, j) moves to (p[i], p[j]).
pub fn apply_permutation(
    m: &SparseSymMatrix,
    p: &Permutation,
) -> Result<SparseSymMatrix, ReorderError> {
    let n = m.n();
    if p.len() != n {
        return Err(ReorderError::DimensionMismatch {
            perm: p.len(),
            matrix: n,
        });
    }
    let new = p.new_of_old();
    let order = p.order();
    let mut row_start = Vec::with_capacity(n + 1);
    let mut col_index = Vec::with_capacity(m.nnz());
    let mut values = m.values().map(|_| Vec::with_capacity(m.nnz()));
    let mut scratch: Vec<(usize, f64)> = Vec::new();
    row_start.push(0);
    for &old in &order {
        scratch.clear();
        match m.row_values(old) {
            Some(vals) => scratch.extend(m.row(old).iter().zip(vals).map(|(&c, &v)| (new[c], v))),
            None => scratch.extend(m.row(old).iter().map(|&c| (new[c], 0.0))),
        }
        scratch.sort_unstable_by_key(|&(c, _)| c);
        col_index.extend(scratch.iter().map(|&(c, _)| c));
        if let Some(values) = values.as_mut() {
            values.extend(scratch.iter().map(|&(_, v)| v));
        }
        row_start.push(col_index.len());
    }
    Ok(SparseSymMatrix::from_parts(
        n, row_start, col_index, values,
    )?)
}

/// Starting-node heuristic used by a pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Finder {
    Bnf,
    Gl,
    Mind,
}

/// End-to-end reordering algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "RCM++")]
    RcmPlusPlus,
    #[serde(rename = "GL_RCM")]
    GlRcm,
    #[serde(rename = "MIND_RCM")]
    MindRcm,
    #[serde(rename = "none")]
    None,
}

impl Algorithm {
    pub const REORDERING: [Algorithm; 3] =
        [Algorithm::RcmPlusPlus, Algorithm::GlRcm, Algorithm::MindRcm];

    pub fn finder(self) -> Option<Finder> {
        match self {
            Algorithm::RcmPlusPlus => Some(Finder::Bnf),
            Algorithm::GlRcm => Some(Finder::Gl),
            Algorithm::MindRcm => Some(Finder::Mind),
            Algorithm::None => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::RcmPlusPlus => "RCM++",
            Algorithm::GlRcm => "GL_RCM",
            Algorithm::MindRcm => "MIND_RCM",
            Algorithm::None => "none",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = ReorderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "rcm++" | "rcmpp" | "bnf" | "bnf_rcm" => Ok(Algorithm::RcmPlusPlus),
            "gl" | "gl_rcm" | "gl-rcm" => Ok(Algorithm::GlRcm),
            "mind" | "mind_rcm" | "mind-rcm" => Ok(Algorithm::MindRcm),
            "none" | "identity" => Ok(Algorithm::None),
            _ => Err(ReorderError::UnknownAlgorithm(s.to_string())),
        }
    }
}

/// Before/after quality of one reordering plus stage timings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReorderReport {
    pub algorithm: Algorithm,
    pub start_nodes: Vec<usize>,
    pub bandwidth_before: usize,
    pub bandwidth_after: usize,
    pub profile_before: usize,
    pub profile_after: usize,
    pub finder_time_ns: u64,
    pub ordering_time_ns: u64,
}

/// Picks one start node per component with the given heuristic.
///
/// An explicit start node seeds only its own component; the other
/// components start from their minimum-degree node.
pub fn find_start_nodes(
    g: &AdjacencyGraph,
    components: &ComponentSet,
    finder: Finder,
    policy: StartPolicy,
) -> Result<Vec<usize>, ReorderError> {
    if let StartPolicy::ExplicitNode { node } = policy {
        g.check_node(node).map_err(FinderError::from)?;
    }
    let mut ws = BfsWorkspace::new(g.n());
    components
        .iter()
        .map(|component| {
            let policy = match policy {
                StartPolicy::ExplicitNode { node } if component.binary_search(&node).is_err() => {
                    StartPolicy::MinDegreeDeterministic
                }
                p => p,
            };
            let node = match finder {
                Finder::Mind => finders::mind_find(g, component)?,
                Finder::Gl => {
                    let start = finders::resolve_start(g, component, policy)?;
                    finders::gl_result(g, start, &mut ws)?
                }
                Finder::Bnf => {
                    let start = finders::resolve_start(g, component, policy)?;
                    finders::bnf_result(g, start, &mut ws)?
                }
            };
            Ok(node)
        })
        .collect()
}

/// Graph, finder, Cuthill-McKee and reversal in one call.
pub fn rcm_pipeline(
    m: &SparseSymMatrix,
    algorithm: Algorithm,
    policy: StartPolicy,
) -> Result<(Permutation, ReorderReport), ReorderError> {
    let g = AdjacencyGraph::from_matrix(m);
    let components = connected_components(&g);

    let (perm, start_nodes, finder_time_ns, ordering_time_ns) = match algorithm.finder() {
        None => (Permutation::identity(m.n()), Vec::new(), 0, 0),
        Some(finder) => {
            let t0 = Instant::now();
            let starts = find_start_nodes(&g, &components, finder, policy)?;
            let finder_time = elapsed_ns(t0);
            let t1 = Instant::now();
            let perm = reverse(&cuthill_mckee_with(&g, &components, &starts)?);
            (perm, starts, finder_time, elapsed_ns(t1))
        }
    };

    let permuted = apply_permutation(m, &perm)?;
    let report = ReorderReport {
        algorithm,
        start_nodes,
        bandwidth_before: metrics::bandwidth(m),
        bandwidth_after: metrics::bandwidth(&permuted),
        profile_before: metrics::profile(m),
        profile_after: metrics::profile(&permuted),
        finder_time_ns,
        ordering_time_ns,
    };
    debug_assert_eq!(
        report.bandwidth_after,
        metrics::permuted_bandwidth(m, &perm)
    );
    debug_assert_eq!(report.profile_after, metrics::permuted_profile(m, &perm));
    Ok((perm, report))
}

pub(crate) fn elapsed_ns(t: Instant) -> u64 {
    u64::try_from(t.elapsed().as_nanos()).unwrap_or(u64::MAX)
}
