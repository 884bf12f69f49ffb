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

//! Rooted view of a tree: parent pointers, DFS intervals and binary
//! lifting for lowest-common-ancestor distance queries.

use crate::graph::Graph;

#[derive(Debug, Clone)]
pub struct RootedTree {
    parent: Vec<usize>,
    depth: Vec<usize>,
    tin: Vec<usize>,
    tout: Vec<usize>,
    /// Children of each vertex, ascending by `tin`.
    children: Vec<Vec<usize>>,
    /// `up[k][v]` is the `2^k`-th ancestor of `v` (the root maps to itself).
    up: Vec<Vec<usize>>,
}

impl RootedTree {
    /// Roots `graph` (which must be a tree) at vertex 0.
    pub fn new(graph: &Graph) -> Self {
        let n = graph.n();
        let mut parent = vec![0; n];
        let mut depth = vec![0; n];
        let mut tin = vec![0; n];
        let mut tout = vec![0; n];
        let mut children = vec![Vec::new(); n];
        let mut clock = 0;
        // (vertex, next neighbor index)
        let mut stack = vec![(0usize, 0usize)];
        tin[0] = clock;
        clock += 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            let nbrs = graph.adjacency(v);
            if *next < nbrs.len() {
                let c = nbrs[*next].0;
                *next += 1;
                if c == parent[v] && v != 0 {
                    continue;
                }
                parent[c] = v;
                depth[c] = depth[v] + 1;
                tin[c] = clock;
                clock += 1;
                children[v].push(c);
                stack.push((c, 0));
            } else {
                tout[v] = clock;
                stack.pop();
            }
        }

        let levels = usize::BITS as usize - n.leading_zeros() as usize;
        let mut up = vec![parent.clone()];
        for k in 1..levels.max(1) {
            let prev = &up[k - 1];
            let next: Vec<usize> = (0..n).map(|v| prev[prev[v]]).collect();
            up.push(next);
        }
        RootedTree {
            parent,
            depth,
            tin,
            tout,
            children,
            up,
        }
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        (v != 0).then(|| self.parent[v])
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// True when `v` lies in the subtree rooted at `u` (including `u`).
    pub fn in_subtree(&self, u: usize, v: usize) -> bool {
        self.tin[u] <= self.tin[v] && self.tin[v] < self.tout[u]
    }

    pub fn lca(&self, mut u: usize, mut v: usize) -> usize {
        if self.depth[u] < self.depth[v] {
            std::mem::swap(&mut u, &mut v);
        }
        let mut diff = self.depth[u] - self.depth[v];
        let mut k = 0;
        while diff > 0 {
            if diff & 1 == 1 {
                u = self.up[k][u];
            }
            diff >>= 1;
            k += 1;
        }
        if u == v {
            return u;
        }
        for k in (0..self.up.len()).rev() {
            if self.up[k][u] != self.up[k][v] {
                u = self.up[k][u];
                v = self.up[k][v];
            }
        }
        self.parent[u]
    }

    pub fn dist(&self, u: usize, v: usize) -> usize {
        self.depth[u] + self.depth[v] - 2 * self.depth[self.lca(u, v)]
    }

    /// The neighbor of `from` on the path towards `to`, or `None` when
    /// they coincide.
    pub fn next_hop(&self, from: usize, to: usize) -> Option<usize> {
        if from == to {
            return None;
        }
        if self.in_subtree(from, to) {
            let kids = &self.children[from];
            // Last child whose tin is <= tin[to].
            let i = kids.partition_point(|&c| self.tin[c] <= self.tin[to]);
            Some(kids[i - 1])
        } else {
            Some(self.parent[from])
        }
    }

    /// The unique `u`-`v` path.
    pub fn path(&self, u: usize, v: usize) -> Vec<usize> {
        let a = self.lca(u, v);
        let mut left = Vec::with_capacity(self.depth[u] - self.depth[a] + 1);
        let mut x = u;
        while x != a {
            left.push(x);
            x = self.parent[x];
        }
        left.push(a);
        let mut right = Vec::with_capacity(self.depth[v] - self.depth[a]);
        let mut y = v;
        while y != a {
            right.push(y);
            y = self.parent[y];
        }
        left.extend(right.into_iter().rev());
        left
    }

    /// Distance from `x` to the `a`-`b` path.
    pub fn dist_to_path(&self, x: usize, a: usize, b: usize) -> usize {
        (self.dist(x, a) + self.dist(x, b) - self.dist(a, b)) / 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Graph {
        //        0
        //      /   \
        //     1     4
        //    / \     \
        //   2   3     5 - 6
        Graph::new(7, &[(0, 1), (1, 2), (1, 3), (0, 4), (4, 5), (5, 6)]).unwrap()
    }

    #[test]
    fn distances_match_bfs_table() {
        let g = sample();
        let t = RootedTree::new(&g);
        for u in 0..7 {
            for v in 0..7 {
                assert_eq!(t.dist(u, v), g.dist(u, v), "({u},{v})");
            }
        }
    }

    #[test]
    fn next_hop_walks_the_path() {
        let g = sample();
        let t = RootedTree::new(&g);
        for u in 0..7 {
            for v in 0..7 {
                let p = t.path(u, v);
                assert_eq!(p.len(), g.dist(u, v) + 1);
                let mut x = u;
                for &y in &p[1..] {
                    assert_eq!(t.next_hop(x, v), Some(y));
                    x = y;
                }
                assert_eq!(t.next_hop(v, v), None);
            }
        }
    }

    #[test]
    fn distance_to_path() {
        let t = RootedTree::new(&sample());
        assert_eq!(t.dist_to_path(3, 2, 6), 1);
        assert_eq!(t.dist_to_path(6, 2, 3), 4);
        assert_eq!(t.dist_to_path(0, 2, 6), 0);
    }
}
