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

//! Tokens, instances, configurations and swap sequences.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Total swap cost. Values are kept below `2^63`.
pub type Cost = u64;

/// Largest total cost any computation may reach.
pub const COST_BUDGET: Cost = i64::MAX as Cost;

/// Adds two costs, failing once the budget is exceeded.
pub fn add_cost(a: Cost, b: Cost) -> Result<Cost> {
    a.checked_add(b)
        .filter(|&c| c <= COST_BUDGET)
        .ok_or(Error::ArithmeticOverflow)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token {
    pub id: usize,
    pub weight: u64,
    pub start: usize,
    pub dest: usize,
}

/// A weighted token swapping instance: a graph plus one token per vertex.
#[derive(Debug, Clone)]
pub struct Instance {
    graph: Arc<Graph>,
    tokens: Vec<Token>,
    token_at_start: Vec<usize>,
    token_at_dest: Vec<usize>,
    min_weight: u64,
    max_weight: u64,
}

impl Instance {
    /// Validates and builds an instance. Tokens may be listed in any order
    /// but their ids must be exactly `0..n`.
    pub fn new(graph: Arc<Graph>, mut tokens: Vec<Token>) -> Result<Self> {
        let n = graph.n();
        if tokens.len() != n {
            return Err(Error::InvalidInstance(format!(
                "{} tokens for {} vertices",
                tokens.len(),
                n
            )));
        }
        tokens.sort_by_key(|t| t.id);
        let mut token_at_start = vec![usize::MAX; n];
        let mut token_at_dest = vec![usize::MAX; n];
        for (i, t) in tokens.iter().enumerate() {
            if t.id != i {
                return Err(Error::InvalidInstance(format!(
                    "token ids must be 0..{n}, found {}",
                    t.id
                )));
            }
            if t.weight == 0 {
                return Err(Error::InvalidInstance(format!("token {i} has weight 0")));
            }
            graph.check_vertex(t.start)?;
            graph.check_vertex(t.dest)?;
            if token_at_start[t.start] != usize::MAX {
                return Err(Error::NotABijection(format!(
                    "two tokens start on vertex {}",
                    t.start
                )));
            }
            if token_at_dest[t.dest] != usize::MAX {
                return Err(Error::NotABijection(format!(
                    "two tokens target vertex {}",
                    t.dest
                )));
            }
            token_at_start[t.start] = i;
            token_at_dest[t.dest] = i;
        }
        let min_weight = tokens.iter().map(|t| t.weight).min().unwrap_or(1);
        let max_weight = tokens.iter().map(|t| t.weight).max().unwrap_or(1);
        // Every solver here performs fewer than 2n^2 swaps of cost <= 2W.
        let worst = (n as u128) * (n as u128) * 4 * max_weight as u128;
        if worst > COST_BUDGET as u128 {
            return Err(Error::ArithmeticOverflow);
        }
        Ok(Instance {
            graph,
            tokens,
            token_at_start,
            token_at_dest,
            min_weight,
            max_weight,
        })
    }

    /// Convenience constructor: token `i` starts on `starts[i]`.
    pub fn from_assignments(
        graph: Arc<Graph>,
        starts: &[usize],
        dests: &[usize],
        weights: &[u64],
    ) -> Result<Self> {
        if starts.len() != dests.len() || starts.len() != weights.len() {
            return Err(Error::InvalidInstance(
                "assignment and weight lengths differ".into(),
            ));
        }
        let tokens = (0..starts.len())
            .map(|i| Token {
                id: i,
                weight: weights[i],
                start: starts[i],
                dest: dests[i],
            })
            .collect();
        Self::new(graph, tokens)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn shared_graph(&self) -> Arc<Graph> {
        Arc::clone(&self.graph)
    }

    pub fn n(&self) -> usize {
        self.tokens.len()
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn token(&self, t: usize) -> &Token {
        &self.tokens[t]
    }

    pub fn weight(&self, t: usize) -> u64 {
        self.tokens[t].weight
    }

    pub fn start(&self, t: usize) -> usize {
        self.tokens[t].start
    }

    pub fn dest(&self, t: usize) -> usize {
        self.tokens[t].dest
    }

    pub fn token_at_start(&self, v: usize) -> usize {
        self.token_at_start[v]
    }

    pub fn token_at_dest(&self, v: usize) -> usize {
        self.token_at_dest[v]
    }

    /// Smallest token weight (`w`).
    pub fn min_weight(&self) -> u64 {
        self.min_weight
    }

    /// Largest token weight (`W`).
    pub fn max_weight(&self) -> u64 {
        self.max_weight
    }

    /// Start-to-destination distance of token `t`.
    pub fn travel(&self, t: usize) -> usize {
        self.graph.dist(self.start(t), self.dest(t))
    }

    pub fn is_identity(&self) -> bool {
        self.tokens.iter().all(|t| t.start == t.dest)
    }

    /// Same graph and assignments, new weights.
    pub fn reweighted(&self, weights: &[u64]) -> Result<Self> {
        let tokens = self
            .tokens
            .iter()
            .map(|t| Token {
                weight: weights[t.id],
                ..*t
            })
            .collect();
        Self::new(self.shared_graph(), tokens)
    }

    /// Same graph, weights and destinations, starting from `conf`.
    pub fn restarted_from(&self, conf: &Configuration) -> Result<Self> {
        let tokens = self
            .tokens
            .iter()
            .map(|t| Token {
                start: conf.vertex_of(t.id),
                ..*t
            })
            .collect();
        Self::new(self.shared_graph(), tokens)
    }
}

/// The current token/vertex bijection.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    token_at: Vec<usize>,
    vertex_of: Vec<usize>,
}

impl Configuration {
    /// Every token on its start vertex.
    pub fn start(inst: &Instance) -> Self {
        Configuration {
            token_at: inst.token_at_start.clone(),
            vertex_of: inst.tokens.iter().map(|t| t.start).collect(),
        }
    }

    /// Every token on its destination vertex.
    pub fn goal(inst: &Instance) -> Self {
        Configuration {
            token_at: inst.token_at_dest.clone(),
            vertex_of: inst.tokens.iter().map(|t| t.dest).collect(),
        }
    }

    pub fn from_token_at(token_at: Vec<usize>) -> Result<Self> {
        let n = token_at.len();
        let mut vertex_of = vec![usize::MAX; n];
        for (v, &t) in token_at.iter().enumerate() {
            if t >= n || vertex_of[t] != usize::MAX {
                return Err(Error::NotABijection(format!("token {t} at vertex {v}")));
            }
            vertex_of[t] = v;
        }
        Ok(Configuration {
            token_at,
            vertex_of,
        })
    }

    pub fn token_at(&self, v: usize) -> usize {
        self.token_at[v]
    }

    pub fn vertex_of(&self, t: usize) -> usize {
        self.vertex_of[t]
    }

    pub fn token_at_slice(&self) -> &[usize] {
        &self.token_at
    }

    /// Exchanges the tokens on `u` and `v`, returning them as `(at u, at v)`
    /// before the swap. Adjacency is the caller's concern.
    pub fn swap(&mut self, u: usize, v: usize) -> (usize, usize) {
        let a = self.token_at[u];
        let b = self.token_at[v];
        self.token_at.swap(u, v);
        self.vertex_of[a] = v;
        self.vertex_of[b] = u;
        (a, b)
    }

    pub fn is_happy(&self, inst: &Instance, t: usize) -> bool {
        self.vertex_of[t] == inst.dest(t)
    }

    pub fn all_happy(&self, inst: &Instance) -> bool {
        (0..inst.n()).all(|t| self.is_happy(inst, t))
    }
}

/// Ordered swaps; each pair names two vertices whose tokens are exchanged.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct SwapSequence {
    pub swaps: Vec<(usize, usize)>,
}

impl SwapSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.swaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.swaps.is_empty()
    }

    pub fn push(&mut self, u: usize, v: usize) {
        self.swaps.push((u, v));
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.swaps.iter().copied()
    }

    pub fn extend(&mut self, other: &SwapSequence) {
        self.swaps.extend_from_slice(&other.swaps);
    }
}

impl From<Vec<(usize, usize)>> for SwapSequence {
    fn from(swaps: Vec<(usize, usize)>) -> Self {
        SwapSequence { swaps }
    }
}

/// `sum_t weight(t) * dist(start(t), dest(t))`, a lower bound on the
/// optimal cost: every token must cover its distance, and each hop it makes
/// is charged its weight.
pub fn opt_lower_bound(inst: &Instance) -> Result<Cost> {
    inst.tokens().iter().try_fold(0, |acc, t| {
        let term = (t.weight as u128) * inst.graph().dist(t.start, t.dest) as u128;
        let term = Cost::try_from(term).map_err(|_| Error::ArithmeticOverflow)?;
        add_cost(acc, term)
    })
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn path(n: usize) -> Arc<Graph> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Arc::new(Graph::new(n, &edges).unwrap())
    }

    /// Two tokens on a single edge, each wanting the other's vertex.
    pub fn crossed_pair(w0: u64, w1: u64) -> Instance {
        Instance::from_assignments(path(2), &[0, 1], &[1, 0], &[w0, w1]).unwrap()
    }

    /// A: 0 -> 2 (w=1), B: 1 -> 0 (w=2), C: 2 -> 1 (w=3) on the path 0-1-2.
    pub fn three_path_cyclic() -> Instance {
        Instance::from_assignments(path(3), &[0, 1, 2], &[2, 0, 1], &[1, 2, 3]).unwrap()
    }

    pub fn identity(n: usize) -> Instance {
        let v: Vec<_> = (0..n).collect();
        Instance::from_assignments(path(n), &v, &v, &vec![1; n]).unwrap()
    }
}
