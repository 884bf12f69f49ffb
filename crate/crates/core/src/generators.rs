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

//! Instance families.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `SeedableRng::seed_from_u64(seed)`. Draw order is fixed: tree shape
//! (Prüfer sequence), then extra edges, then the destination permutation,
//! then weights.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::Arc;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{Cost, Instance, SwapSequence};

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Where the light tokens of a tree barrier go.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Pairing {
    /// Leaf `j` of the first star sends its token to leaf `j` of the second;
    /// leaf `k` of the second sends to leaf `k + l` of the first, except the
    /// last `l`, which send to leaves `l, l-1, .., 1`. With this pairing the
    /// middle stage of the staged witness consists of happy swaps only.
    #[default]
    Conveyor,
    /// Leaves `j` of the two stars exchange tokens.
    Exchange,
}

impl Pairing {
    pub fn name(self) -> &'static str {
        match self {
            Pairing::Conveyor => "conveyor",
            Pairing::Exchange => "exchange",
        }
    }
}

impl std::str::FromStr for Pairing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "conveyor" => Ok(Pairing::Conveyor),
            "exchange" => Ok(Pairing::Exchange),
            _ => Err(Error::InvalidParams(format!("unknown pairing {s:?}"))),
        }
    }
}

/// Tree-barrier parameters: a path of `l` vertices with a star of
/// `leaves` leaves hanging off each end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BarrierParams {
    pub l: usize,
    pub leaves: usize,
    pub w: u64,
    pub big_w: u64,
    pub pairing: Pairing,
}

impl BarrierParams {
    pub fn new(l: usize, leaves: usize, w: u64, big_w: u64) -> Self {
        BarrierParams {
            l,
            leaves,
            w,
            big_w,
            pairing: Pairing::default(),
        }
    }

    pub fn with_pairing(self, pairing: Pairing) -> Self {
        BarrierParams { pairing, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.l < 1 {
            return Err(Error::InvalidParams("path length must be at least 1".into()));
        }
        if self.leaves < self.l {
            return Err(Error::InvalidParams(
                "each star needs at least as many leaves as path vertices".into(),
            ));
        }
        if self.w < 1 || self.big_w < self.w {
            return Err(Error::InvalidParams("need 1 <= w <= W".into()));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.l + 2 * self.leaves
    }

    /// Vertex `h_i`, `i` in `1..=l`.
    pub fn path_vertex(&self, i: usize) -> usize {
        i - 1
    }

    /// Leaf `i` (1-based) of star `side` (1 = attached to `h_1`, 2 = to `h_l`).
    pub fn leaf(&self, side: usize, i: usize) -> usize {
        self.l + (side - 1) * self.leaves + i - 1
    }

    /// Index of the first-star leaf that the token on second-star leaf `k`
    /// wants.
    pub fn return_leaf(&self, k: usize) -> usize {
        match self.pairing {
            Pairing::Exchange => k,
            Pairing::Conveyor if k + self.l <= self.leaves => k + self.l,
            Pairing::Conveyor => self.leaves + 1 - k,
        }
    }

    /// Cost of the three-stage witness:
    /// `l(l+1)(W+w) + (2(N-l)(l+1) + l(l+1)) w`.
    pub fn staged_closed_form(&self) -> Cost {
        let (l, nl) = (self.l as Cost, self.leaves as Cost);
        l * (l + 1) * (self.big_w + self.w) + (2 * (nl - l) * (l + 1) + l * (l + 1)) * self.w
    }

    /// `2N(l - 2k)(W + w)`: the least any `k`-straying algorithm can pay.
    pub fn straying_lower_bound(&self, k: usize) -> Cost {
        let crossing = self.l.saturating_sub(2 * k) as Cost;
        2 * self.leaves as Cost * crossing * (self.big_w + self.w)
    }
}

/// Path `h_1 .. h_l` with `N` leaves on each end. Path tokens weigh `W` and
/// start home; every leaf token weighs `w` and wants a leaf of the other
/// star, as chosen by the pairing. Token ids equal start vertices.
pub fn gen_tree_barrier(p: &BarrierParams) -> Result<Instance> {
    p.validate()?;
    let n = p.n();
    let mut edges = Vec::with_capacity(n - 1);
    for i in 1..p.l {
        edges.push((p.path_vertex(i), p.path_vertex(i + 1)));
    }
    for i in 1..=p.leaves {
        edges.push((p.path_vertex(1), p.leaf(1, i)));
        edges.push((p.path_vertex(p.l), p.leaf(2, i)));
    }
    let graph = Arc::new(Graph::new(n, &edges)?);
    let mut dests: Vec<usize> = (0..n).collect();
    let mut weights = vec![p.big_w; n];
    for i in 1..=p.leaves {
        dests[p.leaf(1, i)] = p.leaf(2, i);
        dests[p.leaf(2, i)] = p.leaf(1, p.return_leaf(i));
        weights[p.leaf(1, i)] = p.w;
        weights[p.leaf(2, i)] = p.w;
    }
    let starts: Vec<usize> = (0..n).collect();
    Instance::from_assignments(graph, &starts, &dests, &weights)
}

/// Recovers the parameters of an instance built by [`gen_tree_barrier`].
pub fn barrier_params_of(inst: &Instance) -> Result<BarrierParams> {
    let l = inst.tokens().iter().filter(|t| t.start == t.dest).count();
    let n = inst.n();
    if l == 0 || (n - l) % 2 != 0 {
        return Err(Error::NotABarrierInstance);
    }
    let base = BarrierParams::new(l, (n - l) / 2, inst.min_weight(), inst.max_weight());
    base.validate().map_err(|_| Error::NotABarrierInstance)?;
    for pairing in [Pairing::Conveyor, Pairing::Exchange] {
        let p = base.with_pairing(pairing);
        let reference = gen_tree_barrier(&p)?;
        if reference.tokens() == inst.tokens() && reference.graph().edges() == inst.graph().edges()
        {
            return Ok(p);
        }
    }
    Err(Error::NotABarrierInstance)
}

/// Three-stage witness for a barrier instance.
///
/// Stage I parks the path token of `h_i` on leaf `i` of the first star,
/// pushing light tokens onto the path. Stage II moves only light tokens
/// (see [`light_stage`]). Stage III replays Stage I backwards.
pub fn staged_barrier_solution(inst: &Instance) -> Result<SwapSequence> {
    let p = barrier_params_of(inst)?;
    let h = |i| p.path_vertex(i);

    let mut stage1 = SwapSequence::new();
    for i in 1..=p.l {
        for j in (1..i).rev() {
            stage1.push(h(j + 1), h(j));
        }
        stage1.push(h(1), p.leaf(1, i));
    }

    // Token ids equal start vertices.
    let mut token_at: Vec<usize> = (0..p.n()).collect();
    for (u, v) in stage1.iter() {
        token_at.swap(u, v);
    }
    let stage2 = light_stage(inst, &p, token_at)?;

    let mut seq = stage1.clone();
    seq.extend(&stage2);
    seq.extend(&SwapSequence::from(
        stage1.swaps.iter().rev().copied().collect::<Vec<_>>(),
    ));
    Ok(seq)
}

struct Sim {
    token_at: Vec<usize>,
    seq: SwapSequence,
}

impl Sim {
    fn swap(&mut self, u: usize, v: usize) {
        self.token_at.swap(u, v);
        self.seq.push(u, v);
    }
}

/// Moves light tokens only, as a conveyor over the path. Call a token on
/// the second star *through* if it wants an unoccupied first-star leaf
/// (index above `l`), and *final* otherwise: final tokens end Stage II on
/// the path, `h_i` holding the one that wants leaf `l + 1 - i`.
///
/// Tokens heading right are dropped into their leaf on the second star,
/// lifting that leaf's token onto the path, except that no final token is
/// lifted while a through token is still waiting; the arriving token then
/// parks on the next waiting through leaf instead. A token heading left
/// reaching `h_1` drops into its leaf, lifting the light token waiting
/// there, which then crosses the path. Once no through token is left, the
/// path holds the final tokens; a bubble sort puts them in order.
///
/// Under [`Pairing::Conveyor`] nothing ever parks and the sort is empty, so
/// every swap is happy. Under [`Pairing::Exchange`] every pair above `l`
/// costs one parking, two extra light moves.
fn light_stage(inst: &Instance, p: &BarrierParams, token_at: Vec<usize>) -> Result<SwapSequence> {
    let l = p.l;
    let h = |i| p.path_vertex(i);
    let first_star = p.leaf(1, 1)..p.leaf(2, 1);
    let second_star = p.leaf(2, 1)..p.n();
    let is_through = |t: usize| {
        second_star.contains(&t) && inst.dest(t) >= p.leaf(1, l + 1)
    };
    let mut sim = Sim {
        token_at,
        seq: SwapSequence::new(),
    };
    let mut waiting = second_star.clone().filter(|&v| is_through(v)).count();
    let mut next_fresh = second_star.start;

    // Drops the right-moving token on h_l, following any chain of lifts.
    // A second-star leaf holds either its own token, not yet lifted, or a
    // parked first-star token.
    let drop_right = |sim: &mut Sim, waiting: &mut usize, fresh: &mut usize| loop {
        let t = sim.token_at[h(l)];
        let home = inst.dest(t);
        let there = sim.token_at[home];
        let target = if second_star.contains(&there) && !is_through(there) && *waiting > 0 {
            while !(sim.token_at[*fresh] == *fresh && is_through(*fresh)) {
                *fresh += 1;
            }
            *fresh
        } else {
            home
        };
        let lifted = sim.token_at[target];
        sim.swap(h(l), target);
        if second_star.contains(&lifted) {
            if is_through(lifted) {
                *waiting -= 1;
            }
            return;
        }
    };

    for s in 1..=l {
        let at = l + 1 - s;
        for k in at..l {
            sim.swap(h(k), h(k + 1));
        }
        drop_right(&mut sim, &mut waiting, &mut next_fresh);
    }
    while is_through(sim.token_at[h(1)]) {
        let r = sim.token_at[h(1)];
        let leaf = inst.dest(r);
        if !first_star.contains(&sim.token_at[leaf]) || sim.token_at[leaf] != leaf {
            return Err(Error::InternalInvariantViolation(format!(
                "leaf {leaf} lost its light token before {r} arrived"
            )));
        }
        sim.swap(h(1), leaf);
        for k in 1..l {
            sim.swap(h(k), h(k + 1));
        }
        drop_right(&mut sim, &mut waiting, &mut next_fresh);
    }

    // Final tokens: the one on h_i should want first-star leaf l + 1 - i.
    let rank = |t: usize| inst.dest(t) - p.leaf(1, 1);
    for pass in 0..l {
        for k in 1..l - pass {
            if rank(sim.token_at[h(k)]) < rank(sim.token_at[h(k + 1)]) {
                sim.swap(h(k), h(k + 1));
            }
        }
    }
    for i in 1..=l {
        let t = sim.token_at[h(i)];
        if !second_star.contains(&t) || inst.dest(t) != p.leaf(1, l + 1 - i) {
            return Err(Error::InternalInvariantViolation(format!(
                "path vertex {i} ends Stage II with token {t}"
            )));
        }
    }
    Ok(sim.seq)
}

/// `n`-cycle where the token on vertex `i` wants vertex `i + 1 (mod n)`.
pub fn gen_cycle_shift(n: usize, weights: &[u64]) -> Result<Instance> {
    if n < 3 {
        return Err(Error::InvalidParams("cycle needs at least 3 vertices".into()));
    }
    if weights.len() != n {
        return Err(Error::InvalidParams(format!(
            "{} weights for {n} tokens",
            weights.len()
        )));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let graph = Arc::new(Graph::new(n, &edges)?);
    let starts: Vec<usize> = (0..n).collect();
    let dests: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    Instance::from_assignments(graph, &starts, &dests, weights)
}

/// Decodes a Prüfer sequence over `0..n` (`n = seq.len() + 2`) into edges.
pub fn prufer_to_edges(seq: &[usize]) -> Vec<(usize, usize)> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let Reverse(leaf) = leaves.pop().expect("a leaf always exists");
        edges.push((leaf.min(x), leaf.max(x)));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.push(Reverse(x));
        }
    }
    let Reverse(a) = leaves.pop().expect("two leaves remain");
    let Reverse(b) = leaves.pop().expect("two leaves remain");
    edges.push((a.min(b), a.max(b)));
    edges
}

fn random_tree_edges(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    match n {
        1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => {
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            prufer_to_edges(&seq)
        }
    }
}

fn random_tokens(
    graph: Graph,
    wmin: u64,
    wmax: u64,
    rng: &mut ChaCha8Rng,
) -> Result<Instance> {
    if wmin < 1 || wmax < wmin {
        return Err(Error::InvalidParams("need 1 <= wmin <= wmax".into()));
    }
    let n = graph.n();
    let starts: Vec<usize> = (0..n).collect();
    let mut dests = starts.clone();
    dests.shuffle(rng);
    let weights: Vec<u64> = (0..n).map(|_| rng.gen_range(wmin..=wmax)).collect();
    Instance::from_assignments(Arc::new(graph), &starts, &dests, &weights)
}

/// Uniform random labeled tree (via a random Prüfer sequence) with a
/// uniform random destination permutation and uniform integer weights.
pub fn gen_random_tree(n: usize, wmin: u64, wmax: u64, seed: u64) -> Result<Instance> {
    if n < 1 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    let mut rng = rng_for(seed);
    let edges = random_tree_edges(n, &mut rng);
    random_tokens(Graph::new(n, &edges)?, wmin, wmax, &mut rng)
}

/// Random spanning tree plus `m - n + 1` distinct extra edges.
pub fn gen_random_graph(n: usize, m: usize, wmin: u64, wmax: u64, seed: u64) -> Result<Instance> {
    if n < 1 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    if m + 1 < n {
        return Err(Error::InvalidParams(format!(
            "{m} edges cannot connect {n} vertices"
        )));
    }
    let max = n * (n - 1) / 2;
    if m > max {
        return Err(Error::TooManyEdges { requested: m, max });
    }
    let mut rng = rng_for(seed);
    let mut edges = random_tree_edges(n, &mut rng);
    let tree: std::collections::HashSet<_> = edges.iter().copied().collect();
    let spare: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|e| !tree.contains(e))
        .collect();
    let mut picked: Vec<usize> = index::sample(&mut rng, spare.len(), m + 1 - n).into_vec();
    picked.sort_unstable();
    edges.extend(picked.into_iter().map(|i| spare[i]));
    random_tokens(Graph::new(n, &edges)?, wmin, wmax, &mut rng)
}

/// Exhaustive families for small sweeps.
pub mod exhaustive {
    use itertools::Itertools;

    use super::prufer_to_edges;

    /// Every labeled tree on `n` vertices (`n^(n-2)` of them for `n >= 2`).
    pub fn all_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
        match n {
            0 => Vec::new(),
            1 => vec![Vec::new()],
            2 => vec![vec![(0, 1)]],
            _ => (0..n - 2)
                .map(|_| 0..n)
                .multi_cartesian_product()
                .map(|seq| prufer_to_edges(&seq))
                .collect(),
        }
    }

    /// Every connected labeled graph on `n` vertices.
    pub fn all_connected_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        (0u64..1 << pairs.len())
            .map(|mask| {
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect::<Vec<_>>()
            })
            .filter(|edges| connected(n, edges))
            .collect()
    }

    pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
        (0..n).permutations(n).collect()
    }

    fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut parts = n;
        for &(u, v) in edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                parts -= 1;
            }
        }
        parts == 1
    }
}
