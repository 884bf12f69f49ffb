// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Undirected simple connected graphs with hop-distance queries.
//!
//! Distances come from one of three backends, chosen at construction:
//! a dense all-pairs table for graphs up to the configured ceiling, a
//! rooted-tree index for larger trees, and memoized per-source BFS rows
//! for everything else.

use std::collections::VecDeque;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::tree::RootedTree;

/// Graphs with at most this many vertices get an eager all-pairs table.
pub const DEFAULT_DENSE_CEILING: usize = 20_000;

const UNREACHED: u32 = u32::MAX;

#[derive(Debug)]
enum Distances {
    Dense { n: usize, table: Vec<u16> },
    Tree,
    Lazy(Vec<OnceLock<Box<[u32]>>>),
}

/// An undirected, connected, simple graph on vertices `0..n`.
#[derive(Debug)]
pub struct Graph {
    n: usize,
    /// Canonical edge list: each pair has `u < v`, sorted lexicographically.
    edges: Vec<(usize, usize)>,
    /// Per-vertex `(neighbor, edge id)` sorted by neighbor.
    adj: Vec<Vec<(usize, usize)>>,
    rooted: OnceLock<Option<RootedTree>>,
    dist: Distances,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::with_dense_ceiling(n, edges, DEFAULT_DENSE_CEILING)
    }

    /// Builds a graph, materializing all-pairs distances only when
    /// `n <= ceiling`.
    pub fn with_dense_ceiling(n: usize, edges: &[(usize, usize)], ceiling: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut canon = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in canon.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        for list in &mut adj {
            list.sort_unstable();
        }

        let mut graph = Graph {
            n,
            edges: canon,
            adj,
            rooted: OnceLock::new(),
            dist: Distances::Tree,
        };
        let row0 = graph.bfs_row(0);
        if row0.iter().any(|&d| d == UNREACHED) {
            return Err(Error::Disconnected);
        }

        let ceiling = ceiling.min(u16::MAX as usize);
        graph.dist = if n <= ceiling {
            let mut table = vec![0u16; n * n];
            for s in 0..n {
                let row = if s == 0 { row0.clone() } else { graph.bfs_row(s) };
                for (t, d) in row.iter().enumerate() {
                    table[s * n + t] = *d as u16;
                }
            }
            Distances::Dense { n, table }
        } else if graph.is_tree() {
            Distances::Tree
        } else {
            let rows: Vec<OnceLock<Box<[u32]>>> = (0..n).map(|_| OnceLock::new()).collect();
            let _ = rows[0].set(row0);
            Distances::Lazy(rows)
        };
        Ok(graph)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Canonically ordered edges (`u < v`, lexicographic).
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(u, _)| u)
    }

    pub(crate) fn adjacency(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Position of `{u, v}` in [`Graph::edges`], if it is an edge.
    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        let list = &self.adj[u];
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n
    }

    /// The tree rooted at vertex 0, or `None` when the graph has cycles.
    pub fn rooted_tree(&self) -> Option<&RootedTree> {
        self.rooted
            .get_or_init(|| self.is_tree().then(|| RootedTree::new(self)))
            .as_ref()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Hop distance between `u` and `v`. Panics on out-of-range vertices.
    pub fn dist(&self, u: usize, v: usize) -> usize {
        match &self.dist {
            Distances::Dense { n, table } => table[u * n + v] as usize,
            Distances::Tree => self
                .rooted_tree()
                .expect("tree backend on a tree")
                .dist(u, v),
            Distances::Lazy(rows) => rows[u].get_or_init(|| self.bfs_row(u))[v] as usize,
        }
    }

    /// True when distances come from an eager table.
    pub fn has_dense_distances(&self) -> bool {
        matches!(self.dist, Distances::Dense { .. })
    }

    /// A shortest `u`-`v` path. BFS scans neighbors in ascending order and
    /// keeps the first discoverer as parent, so the result is deterministic.
    pub fn shortest_path(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Ok(vec![u]);
        }
        let mut parent = vec![usize::MAX; self.n];
        parent[u] = u;
        let mut queue = VecDeque::from([u]);
        'search: while let Some(x) = queue.pop_front() {
            for y in self.neighbors(x) {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    if y == v {
                        break 'search;
                    }
                    queue.push_back(y);
                }
            }
        }
        let mut path = vec![v];
        let mut x = v;
        while x != u {
            x = parent[x];
            path.push(x);
        }
        path.reverse();
        Ok(path)
    }

    /// The unique `u`-`v` path of a tree.
    pub fn tree_path(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let tree = self.rooted_tree().ok_or(Error::NotATree)?;
        Ok(tree.path(u, v))
    }

    fn bfs_row(&self, s: usize) -> Box<[u32]> {
        let mut row = vec![UNREACHED; self.n].into_boxed_slice();
        row[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let d = row[x] + 1;
            for &(y, _) in &self.adj[x] {
                if row[y] == UNREACHED {
                    row[y] = d;
                    queue.push_back(y);
                }
            }
        }
        row
    }
}
