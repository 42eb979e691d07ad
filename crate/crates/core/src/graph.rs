//! Immutable simple undirected graphs and breadth-first distances.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::generators::{Family, VertexLabel};

/// Hop count used for vertices a BFS never reaches.
pub const UNREACHABLE: u32 = u32::MAX;

/// A simple undirected graph on the vertex ids `0..order`.
///
/// Adjacency lists are sorted and symmetric. Generated family graphs also
/// carry a structured label per vertex and the family descriptor they were
/// built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    labels: Option<Vec<VertexLabel>>,
    family: Option<Family>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, repeated
    /// edges (in either orientation) and out-of-range endpoints.
    pub fn from_edges(order: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); order];
        for (u, v) in edges {
            if u >= order || v >= order {
                return Err(Error::domain(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{order}"
                )));
            }
            if u == v {
                return Err(Error::domain(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if let Some(w) = nbrs.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::domain(format!("duplicate edge ({u}, {})", w[0])));
            }
        }
        Ok(Graph {
            adjacency,
            labels: None,
            family: None,
        })
    }

    pub(crate) fn with_labels(mut self, labels: Vec<VertexLabel>, family: Family) -> Self {
        debug_assert_eq!(labels.len(), self.order());
        self.labels = Some(labels);
        self.family = Some(family);
        self
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref()
    }

    pub fn label(&self, u: usize) -> Option<VertexLabel> {
        self.labels.as_ref().and_then(|l| l.get(u).copied())
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn is_connected(&self) -> bool {
        self.order() == 0 || bfs_unchecked(self, 0).iter().all(|&d| d != UNREACHABLE)
    }

    fn check_vertex(&self, u: usize) -> Result<()> {
        if u < self.order() {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "vertex {u} out of range for a graph of order {}",
                self.order()
            )))
        }
    }
}

fn bfs_unchecked(g: &Graph, src: usize) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; g.order()];
    let mut queue = VecDeque::with_capacity(g.order());
    dist[src] = 0;
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        let next = dist[u] + 1;
        for &v in g.neighbors(u) {
            if dist[v] == UNREACHABLE {
                dist[v] = next;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Hop counts from `src` to every vertex; unreachable vertices get
/// [`UNREACHABLE`].
pub fn bfs_distances(g: &Graph, src: usize) -> Result<Vec<u32>> {
    g.check_vertex(src)?;
    Ok(bfs_unchecked(g, src))
}

/// Dense all-pairs geodesic distances of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    order: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.d[u * self.order + v]
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u32] {
        &self.d[u * self.order..(u + 1) * self.order]
    }

    pub fn diameter(&self) -> u32 {
        self.d.iter().copied().max().unwrap_or(0)
    }

    pub fn eccentricity(&self, u: usize) -> u32 {
        self.row(u).iter().copied().max().unwrap_or(0)
    }
}

/// All-pairs shortest paths by one BFS per vertex, rows computed in parallel.
///
/// A disconnected graph is an error naming one unreachable pair.
pub fn apsp(g: &Graph) -> Result<DistanceMatrix> {
    let n = g.order();
    let rows: Vec<Vec<u32>> = (0..n).into_par_iter().map(|u| bfs_unchecked(g, u)).collect();
    if let Some(row) = rows.first() {
        if let Some(v) = row.iter().position(|&d| d == UNREACHABLE) {
            return Err(Error::Disconnected { from: 0, unreached: v });
        }
    }
    let mut d = Vec::with_capacity(n * n);
    for row in rows {
        d.extend_from_slice(&row);
    }
    Ok(DistanceMatrix { order: n, d })
}
