//! Undirected adjacency graphs and rooted level structures.

use thiserror::Error;

use crate::matrix::SparseSymMatrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("node {node} is out of range for a graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
}

/// Off-diagonal structure of a symmetric matrix as an undirected graph.
///
/// Neighbor lists are ascending and never contain the node itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyGraph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl AdjacencyGraph {
    /// One node per row; edge (i, j) for every stored off-diagonal entry.
    pub fn from_matrix(m: &SparseSymMatrix) -> Self {
        let n = m.n();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(m.nnz());
        offsets.push(0);
        for row in 0..n {
            targets.extend(m.row(row).iter().copied().filter(|&c| c != row));
            offsets.push(targets.len());
        }
        AdjacencyGraph { offsets, targets }
    }

    /// Builds a graph from an undirected edge list. Self-loops and repeated
    /// edges are dropped.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut lists: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            for node in [u, v] {
                if node >= n {
                    return Err(GraphError::NodeOutOfRange { node, n });
                }
            }
            if u != v {
                lists[u].push(v);
                lists[v].push(u);
            }
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for mut list in lists {
            list.sort_unstable();
            list.dedup();
            targets.extend(list);
            offsets.push(targets.len());
        }
        Ok(AdjacencyGraph { offsets, targets })
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.degree(v)).collect()
    }

    pub(crate) fn check_node(&self, node: usize) -> Result<(), GraphError> {
        if node < self.n() {
            Ok(())
        } else {
            Err(GraphError::NodeOutOfRange { node, n: self.n() })
        }
    }
}

/// BFS distance classes from a root node.
///
/// Levels are stored back to back in `nodes`; level `i` occupies
/// `nodes[level_start[i]..level_start[i + 1]]` and is sorted by node id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelStructure {
    root: usize,
    nodes: Vec<usize>,
    level_start: Vec<usize>,
    width: usize,
}

impl LevelStructure {
    pub fn root(&self) -> usize {
        self.root
    }

    /// Index of the last level, which is the eccentricity of the root.
    pub fn depth(&self) -> usize {
        self.level_start.len() - 2
    }

    /// Largest level size.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn level_count(&self) -> usize {
        self.level_start.len() - 1
    }

    pub fn level(&self, i: usize) -> &[usize] {
        &self.nodes[self.level_start[i]..self.level_start[i + 1]]
    }

    pub fn levels(&self) -> impl Iterator<Item = &[usize]> + '_ {
        (0..self.level_count()).map(move |i| self.level(i))
    }

    /// Deepest level.
    pub fn last_level(&self) -> &[usize] {
        self.level(self.depth())
    }

    /// All nodes reached, level by level.
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn to_vecs(&self) -> Vec<Vec<usize>> {
        self.levels().map(<[usize]>::to_vec).collect()
    }
}

/// Scratch space for repeated breadth-first searches on one graph.
///
/// Visit marks use a generation counter, so a search costs time
/// proportional to the component it explores rather than to `n`.
#[derive(Debug, Clone)]
pub struct BfsWorkspace {
    mark: Vec<u32>,
    stamp: u32,
}

impl BfsWorkspace {
    pub fn new(n: usize) -> Self {
        BfsWorkspace {
            mark: vec![0; n],
            stamp: 0,
        }
    }

    fn next_stamp(&mut self) -> u32 {
        if self.stamp == u32::MAX {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.stamp = 0;
        }
        self.stamp += 1;
        self.stamp
    }

    pub fn level_structure(
        &mut self,
        g: &AdjacencyGraph,
        root: usize,
    ) -> Result<LevelStructure, GraphError> {
        g.check_node(root)?;
        if self.mark.len() != g.n() {
            self.mark = vec![0; g.n()];
            self.stamp = 0;
        }
        let stamp = self.next_stamp();
        self.mark[root] = stamp;

        let mut nodes = vec![root];
        let mut level_start = vec![0, 1];
        let mut width = 1;
        let mut begin = 0;
        loop {
            let end = nodes.len();
            for k in begin..end {
                let u = nodes[k];
                for &w in g.neighbors(u) {
                    if self.mark[w] != stamp {
                        self.mark[w] = stamp;
                        nodes.push(w);
                    }
                }
            }
            if nodes.len() == end {
                break;
            }
            nodes[end..].sort_unstable();
            width = width.max(nodes.len() - end);
            level_start.push(nodes.len());
            begin = end;
        }
        Ok(LevelStructure {
            root,
            nodes,
            level_start,
            width,
        })
    }
}

/// Level structure rooted at `root`.
pub fn bfs_level_structure(g: &AdjacencyGraph, root: usize) -> Result<LevelStructure, GraphError> {
    BfsWorkspace::new(g.n()).level_structure(g, root)
}

/// Connected components, each sorted ascending, ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSet {
    components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
}

impl ComponentSet {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn get(&self, i: usize) -> &[usize] {
        &self.components[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> + '_ {
        self.components.iter().map(Vec::as_slice)
    }

    /// Index of the component containing `v`.
    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    pub fn into_vecs(self) -> Vec<Vec<usize>> {
        self.components
    }
}

pub fn connected_components(g: &AdjacencyGraph) -> ComponentSet {
    let n = g.n();
    let mut component_of = vec![usize::MAX; n];
    let mut components = Vec::new();
    let mut stack = Vec::new();
    for seed in 0..n {
        if component_of[seed] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![seed];
        component_of[seed] = id;
        stack.push(seed);
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if component_of[w] == usize::MAX {
                    component_of[w] = id;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        components.push(members);
    }
    ComponentSet {
        components,
        component_of,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> AdjacencyGraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        AdjacencyGraph::from_edges(n, &edges).unwrap()
    }

    fn star() -> AdjacencyGraph {
        AdjacencyGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap()
    }

    #[test]
    fn tridiagonal_becomes_path() {
        let m = SparseSymMatrix::from_triplets(
            3,
            &[
                (0, 0, 1.),
                (0, 1, 1.),
                (1, 0, 1.),
                (1, 1, 1.),
                (1, 2, 1.),
                (2, 1, 1.),
                (2, 2, 1.),
            ],
            false,
        )
        .unwrap();
        let g = AdjacencyGraph::from_matrix(&m);
        assert_eq!(g.degrees(), vec![1, 2, 1]);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn identity_has_isolated_nodes() {
        let g = AdjacencyGraph::from_matrix(&SparseSymMatrix::identity(4));
        assert_eq!(g.degrees(), vec![0; 4]);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn arrow_matrix_is_star() {
        let mut t = Vec::new();
        for j in 0..5 {
            t.push((0, j, 1.0));
            if j > 0 {
                t.push((j, 0, 1.0));
                t.push((j, j, 1.0));
            }
        }
        let g = AdjacencyGraph::from_matrix(&SparseSymMatrix::from_triplets(5, &t, true).unwrap());
        assert_eq!(g.degrees(), vec![4, 1, 1, 1, 1]);
        assert_eq!(g, star());
    }

    #[test]
    fn levels_of_path() {
        let ls = bfs_level_structure(&path(5), 0).unwrap();
        assert_eq!(
            ls.to_vecs(),
            vec![vec![0], vec![1], vec![2], vec![3], vec![4]]
        );
        assert_eq!((ls.depth(), ls.width()), (4, 1));

        let ls = bfs_level_structure(&path(5), 2).unwrap();
        assert_eq!(ls.to_vecs(), vec![vec![2], vec![1, 3], vec![0, 4]]);
        assert_eq!((ls.depth(), ls.width()), (2, 2));
    }

    #[test]
    fn levels_of_star_from_leaf() {
        let ls = bfs_level_structure(&star(), 1).unwrap();
        assert_eq!(ls.to_vecs(), vec![vec![1], vec![0], vec![2, 3, 4]]);
        assert_eq!((ls.depth(), ls.width()), (2, 3));
    }

    #[test]
    fn isolated_root() {
        let g = AdjacencyGraph::from_edges(3, &[(1, 2)]).unwrap();
        let ls = bfs_level_structure(&g, 0).unwrap();
        assert_eq!((ls.depth(), ls.width()), (0, 1));
        assert_eq!(ls.nodes(), &[0]);
    }

    #[test]
    fn root_out_of_range() {
        assert_eq!(
            bfs_level_structure(&path(3), 3),
            Err(GraphError::NodeOutOfRange { node: 3, n: 3 })
        );
    }

    #[test]
    fn workspace_reuse_matches_fresh() {
        let g = path(7);
        let mut ws = BfsWorkspace::new(7);
        for root in [3, 0, 6, 3] {
            assert_eq!(
                ws.level_structure(&g, root).unwrap(),
                bfs_level_structure(&g, root).unwrap()
            );
        }
    }

    #[test]
    fn components() {
        let g = AdjacencyGraph::from_matrix(&SparseSymMatrix::identity(3));
        assert_eq!(
            connected_components(&g).into_vecs(),
            vec![vec![0], vec![1], vec![2]]
        );
        assert_eq!(connected_components(&path(5)).len(), 1);

        let g = AdjacencyGraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (5, 4), (4, 3), (3, 5)])
            .unwrap();
        let cs = connected_components(&g);
        assert_eq!(cs.clone().into_vecs(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(cs.component_of(4), 1);
    }

    #[test]
    fn components_ordered_by_smallest_member() {
        let g = AdjacencyGraph::from_edges(5, &[(4, 0), (3, 1)]).unwrap();
        assert_eq!(
            connected_components(&g).into_vecs(),
            vec![vec![0, 4], vec![1, 3], vec![2]]
        );
    }
}
