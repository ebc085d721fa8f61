//! Deterministic synthetic test matrices.
//!
//! Each generator returns an undirected edge list; [`spd_from_edges`] and
//! [`indefinite_from_edges`] turn it into a symmetric matrix. Everything is
//! seeded so the corpus is identical on every machine.

use std::fs::File;
use std::io::{self, BufWriter};
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rcmpp::{write_matrix_market, SparseSymMatrix};

pub type Edges = Vec<(usize, usize)>;

#[derive(Debug, Clone)]
pub struct NamedMatrix {
    pub name: String,
    pub matrix: SparseSymMatrix,
}

/// 5-point grid, row-major numbering.
pub fn grid2d(rows: usize, cols: usize) -> Edges {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    edges
}

/// Grid split into triangles by one diagonal per cell.
pub fn tri_mesh(rows: usize, cols: usize) -> Edges {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = grid2d(rows, cols);
    for r in 0..rows.saturating_sub(1) {
        for c in 0..cols.saturating_sub(1) {
            edges.push((id(r, c), id(r + 1, c + 1)));
        }
    }
    edges
}

/// 7-point grid on an a x b x c box.
pub fn grid3d(a: usize, b: usize, c: usize) -> Edges {
    let id = |i: usize, j: usize, k: usize| (i * b + j) * c + k;
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            for k in 0..c {
                if i + 1 < a {
                    edges.push((id(i, j, k), id(i + 1, j, k)));
                }
                if j + 1 < b {
                    edges.push((id(i, j, k), id(i, j + 1, k)));
                }
                if k + 1 < c {
                    edges.push((id(i, j, k), id(i, j, k + 1)));
                }
            }
        }
    }
    edges
}

fn random_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|_| (rng.random::<f64>(), rng.random::<f64>()))
        .collect()
}

fn dist2(p: (f64, f64), q: (f64, f64)) -> f64 {
    (p.0 - q.0).powi(2) + (p.1 - q.1).powi(2)
}

/// Each random point in the unit square linked to its k nearest neighbours.
pub fn knn_graph(n: usize, k: usize, seed: u64) -> Edges {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = random_points(&mut rng, n);
    let mut edges = Vec::new();
    let mut by_dist: Vec<(f64, usize)> = Vec::with_capacity(n);
    for i in 0..n {
        by_dist.clear();
        by_dist.extend(
            (0..n)
                .filter(|&j| j != i)
                .map(|j| (dist2(pts[i], pts[j]), j)),
        );
        by_dist.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        edges.extend(by_dist.iter().take(k).map(|&(_, j)| (i.min(j), i.max(j))));
    }
    dedup(edges)
}

/// Sparse tree-like network: each point joins its nearest predecessor, and
/// about one in seven also joins its second nearest, giving a few loops.
pub fn power_network(n: usize, seed: u64) -> Edges {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = random_points(&mut rng, n);
    let mut edges = Vec::new();
    for i in 1..n {
        let mut near: Vec<(f64, usize)> = (0..i).map(|j| (dist2(pts[i], pts[j]), j)).collect();
        near.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        edges.push((near[0].1, i));
        if near.len() > 1 && rng.random_range(0..7) == 0 {
            edges.push((near[1].1, i));
        }
    }
    dedup(edges)
}

/// Disjoint union; the second graph's nodes follow the first's.
pub fn disjoint_union(n1: usize, e1: &[(usize, usize)], e2: &[(usize, usize)]) -> Edges {
    e1.iter()
        .copied()
        .chain(e2.iter().map(|&(u, v)| (u + n1, v + n1)))
        .collect()
}

/// Relabels nodes by a seeded random permutation.
pub fn scramble(n: usize, edges: &[(usize, usize)], seed: u64) -> Edges {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(&mut rng);
    edges.iter().map(|&(u, v)| (label[u], label[v])).collect()
}

fn dedup(mut edges: Edges) -> Edges {
    for e in edges.iter_mut() {
        *e = (e.0.min(e.1), e.0.max(e.1));
    }
    edges.sort_unstable();
    edges.dedup();
    edges.retain(|&(u, v)| u != v);
    edges
}

fn with_diagonal(
    n: usize,
    edges: &[(usize, usize)],
    diag: impl Fn(usize) -> f64,
    off: f64,
) -> SparseSymMatrix {
    let edges = dedup(edges.to_vec());
    let mut degree = vec![0usize; n];
    let mut t = Vec::with_capacity(n + 2 * edges.len());
    for &(u, v) in &edges {
        degree[u] += 1;
        degree[v] += 1;
        t.push((u, v, off));
        t.push((v, u, off));
    }
    t.extend((0..n).map(|i| (i, i, diag(degree[i]))));
    SparseSymMatrix::from_triplets(n, &t, true).expect("generated pattern is symmetric")
}

/// Graph Laplacian shifted by 0.5 on the diagonal: strictly diagonally
/// dominant, hence positive definite.
pub fn spd_from_edges(n: usize, edges: &[(usize, usize)]) -> SparseSymMatrix {
    with_diagonal(n, edges, |d| d as f64 + 0.5, -1.0)
}

/// Unit diagonal with -1 couplings; indefinite once any node has degree 2.
pub fn indefinite_from_edges(n: usize, edges: &[(usize, usize)]) -> SparseSymMatrix {
    with_diagonal(n, edges, |_| 1.0, -1.0)
}

fn spd(name: &str, n: usize, edges: Edges) -> NamedMatrix {
    NamedMatrix {
        name: name.to_string(),
        matrix: spd_from_edges(n, &edges),
    }
}

/// The fixed corpus used by the acceptance suite and `gen_corpus`.
///
/// Sizes run from a few dozen to about two thousand rows. Grids and meshes
/// are scrambled unless the name says `natural`; point-cloud graphs are
/// numbered in random point order already.
pub fn desk_corpus() -> Vec<NamedMatrix> {
    let mut out = vec![
        spd("grid2d_6x6", 36, scramble(36, &grid2d(6, 6), 1)),
        spd("power_39", 39, power_network(39, 2)),
        spd("tri_5x8", 40, scramble(40, &tri_mesh(5, 8), 3)),
        spd("knn_48_k3", 48, knn_graph(48, 3, 4)),
        NamedMatrix {
            name: "indefinite_grid_12x12".to_string(),
            matrix: indefinite_from_edges(144, &scramble(144, &grid2d(12, 12), 5)),
        },
        spd("knn_250_k4", 250, knn_graph(250, 4, 6)),
        spd("grid2d_20x15", 300, scramble(300, &grid2d(20, 15), 7)),
        spd("power_300", 300, power_network(300, 8)),
        spd("tri_18x18", 324, scramble(324, &tri_mesh(18, 18), 9)),
        spd("grid3d_7x7x7", 343, scramble(343, &grid3d(7, 7, 7), 10)),
        spd("knn_600_k5", 600, knn_graph(600, 5, 12)),
        spd("power_662", 662, power_network(662, 13)),
        spd("tri_25x30", 750, scramble(750, &tri_mesh(25, 30), 14)),
        spd("grid2d_30x30", 900, scramble(900, &grid2d(30, 30), 15)),
        spd("knn_1000_k4", 1000, knn_graph(1000, 4, 16)),
        spd("power_1138", 1138, power_network(1138, 17)),
        spd("grid2d_natural_40x30", 1200, grid2d(40, 30)),
        spd("tri_35x35", 1225, scramble(1225, &tri_mesh(35, 35), 18)),
        spd(
            "grid3d_11x11x11",
            1331,
            scramble(1331, &grid3d(11, 11, 11), 19),
        ),
        spd("knn_1500_k6", 1500, knn_graph(1500, 6, 20)),
        spd("power_2000", 2000, power_network(2000, 21)),
        spd("grid2d_45x45", 2025, scramble(2025, &grid2d(45, 45), 22)),
    ];
    // Three components of different shapes plus two isolated nodes.
    let a = grid2d(10, 10);
    let b = power_network(150, 23);
    let ab = disjoint_union(100, &a, &b);
    let c = knn_graph(200, 4, 24);
    let abc = disjoint_union(250, &ab, &c);
    out.push(spd("multi_component_452", 452, scramble(452, &abc, 25)));

    out.sort_by(|x, y| {
        (x.matrix.n(), x.matrix.nnz(), &x.name).cmp(&(y.matrix.n(), y.matrix.nnz(), &y.name))
    });
    out
}

/// Writes each matrix as `<name>.mtx` under `dir`.
pub fn write_corpus(dir: &Path, corpus: &[NamedMatrix]) -> io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    corpus
        .iter()
        .map(|m| {
            let path = dir.join(format!("{}.mtx", m.name));
            let mut w = BufWriter::new(File::create(&path)?);
            write_matrix_market(&m.matrix, &mut w)?;
            Ok(path)
        })
        .collect()
}
