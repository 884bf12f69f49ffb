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

//! Sweeps: instance families, algorithm runs and CSV rows.
//!
//! CSV columns:
//! `instance_id,family,params,n,algo,cost,swaps,baseline,baseline_cost,ratio_frac,ratio,ceiling,wall_ms`.
//! `ratio_frac` is the exact quotient `cost / baseline_cost` as `p/q` and
//! `ratio` the same to six decimals. A baseline that could not be computed
//! leaves `baseline_cost` as `unavailable`; a failed algorithm leaves
//! `cost` as `error`. `wall_ms` is `0` unless timing was requested.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use crate::analysis::{replay_cost, within_ratio, CostRatio};
use crate::cycle_solver::solve_general;
use crate::error::{Error, Result};
use crate::exact::{solve_exact, SearchLimits};
use crate::generators::{self, exhaustive, rng_for, staged_barrier_solution};
use crate::graph::Graph;
use crate::instance::{opt_lower_bound, Cost, Instance, SwapSequence};
use crate::tree_solver::solve_tree;

pub const CSV_HEADER: [&str; 13] = [
    "instance_id",
    "family",
    "params",
    "n",
    "algo",
    "cost",
    "swaps",
    "baseline",
    "baseline_cost",
    "ratio_frac",
    "ratio",
    "ceiling",
    "wall_ms",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algo {
    Happy,
    Cycle,
    Exact,
    Staged,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Happy => "happy",
            Algo::Cycle => "cycle",
            Algo::Exact => "exact",
            Algo::Staged => "staged",
        }
    }

    pub fn run(self, inst: &Instance, limits: &SearchLimits) -> Result<SwapSequence> {
        match self {
            Algo::Happy => solve_tree(inst),
            Algo::Cycle => solve_general(inst),
            Algo::Exact => Ok(solve_exact(inst, limits)?.sequence),
            Algo::Staged => staged_barrier_solution(inst),
        }
    }

    /// Proven cost ceiling relative to OPT, where one exists.
    pub fn ceiling(self, inst: &Instance) -> Option<CostRatio> {
        let (w, big_w) = (inst.min_weight(), inst.max_weight());
        match self {
            Algo::Happy => Some(CostRatio::tree_ceiling(w, big_w)),
            Algo::Cycle => Some(CostRatio::general_ceiling(w, big_w)),
            Algo::Exact => CostRatio::new(1, 1),
            Algo::Staged => None,
        }
    }
}

impl FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "happy" => Ok(Algo::Happy),
            "cycle" => Ok(Algo::Cycle),
            "exact" => Ok(Algo::Exact),
            "staged" => Ok(Algo::Staged),
            _ => Err(Error::InvalidParams(format!("unknown algorithm {s:?}"))),
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineKind {
    Exact,
    LowerBound,
    Staged,
}

impl BaselineKind {
    pub fn name(self) -> &'static str {
        match self {
            BaselineKind::Exact => "exact",
            BaselineKind::LowerBound => "lower-bound",
            BaselineKind::Staged => "staged",
        }
    }

    /// Exact OPT and the lower bound both sit at or below OPT, so an
    /// algorithm's ceiling applies against them.
    pub fn bounds_opt_from_below(self) -> bool {
        !matches!(self, BaselineKind::Staged)
    }

    pub fn compute(self, inst: &Instance, limits: &SearchLimits) -> Result<Cost> {
        match self {
            BaselineKind::Exact => Ok(solve_exact(inst, limits)?.cost),
            BaselineKind::LowerBound => opt_lower_bound(inst),
            BaselineKind::Staged => {
                let seq = staged_barrier_solution(inst)?;
                let (cost, ok) = replay_cost(inst, &seq)?;
                if !ok {
                    return Err(Error::InvalidSequence);
                }
                Ok(cost)
            }
        }
    }
}

impl FromStr for BaselineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(BaselineKind::Exact),
            "lower-bound" => Ok(BaselineKind::LowerBound),
            "staged" => Ok(BaselineKind::Staged),
            _ => Err(Error::InvalidParams(format!("unknown baseline {s:?}"))),
        }
    }
}

/// One instance of a sweep. Cases from the same graph share it.
#[derive(Debug, Clone)]
pub struct Case {
    pub id: String,
    pub family: String,
    pub params: String,
    pub graph: Arc<Graph>,
    pub dests: Vec<usize>,
    pub weights: Vec<u64>,
}

impl Case {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn instance(&self) -> Result<Instance> {
        let starts: Vec<usize> = (0..self.n()).collect();
        Instance::from_assignments(self.graph.clone(), &starts, &self.dests, &self.weights)
    }

    pub fn from_instance(id: String, family: &str, params: String, inst: &Instance) -> Self {
        let dests = (0..inst.n())
            .map(|v| inst.dest(inst.token_at_start(v)))
            .collect();
        let weights = (0..inst.n())
            .map(|v| inst.weight(inst.token_at_start(v)))
            .collect();
        Case {
            id,
            family: family.to_string(),
            params,
            graph: inst.shared_graph(),
            dests,
            weights,
        }
    }
}

/// Token weights drawn from `{1, ratio}`; all ones when `ratio == 1`.
pub fn weight_pattern(n: usize, ratio: u64, rng: &mut impl Rng) -> Vec<u64> {
    (0..n)
        .map(|_| if ratio > 1 && rng.gen_bool(0.5) { ratio } else { 1 })
        .collect()
}

fn push_weighted(
    out: &mut Vec<Case>,
    family: &str,
    base: String,
    graph: &Arc<Graph>,
    dests: &[usize],
    ratios: &[u64],
    rng: &mut impl Rng,
) {
    for &r in ratios {
        let n = graph.n();
        out.push(Case {
            id: format!("{family}-{}", out.len()),
            family: family.to_string(),
            params: format!("{base};R={r}"),
            graph: graph.clone(),
            dests: dests.to_vec(),
            weights: weight_pattern(n, r, rng),
        });
    }
}

/// Every labeled tree with `n <= n_max` vertices. Up to five vertices every
/// destination permutation is used; beyond that each tree gets random
/// permutations, at least `random_perms` in total per size.
pub fn tree_sweep(n_max: usize, random_perms: usize, ratios: &[u64], seed: u64) -> Result<Vec<Case>> {
    let mut rng = rng_for(seed);
    let mut out = Vec::new();
    for n in 1..=n_max {
        let trees = exhaustive::all_trees(n);
        let perms_per_tree = random_perms.div_ceil(trees.len()).max(1);
        let all_perms = (n <= 5).then(|| exhaustive::all_permutations(n));
        for (ti, edges) in trees.iter().enumerate() {
            let graph = Arc::new(Graph::new(n, edges)?);
            let perms: Vec<Vec<usize>> = match &all_perms {
                Some(p) => p.clone(),
                None => (0..perms_per_tree)
                    .map(|_| {
                        let mut p: Vec<usize> = (0..n).collect();
                        p.shuffle(&mut rng);
                        p
                    })
                    .collect(),
            };
            for (pi, dests) in perms.iter().enumerate() {
                let base = format!("n={n};tree={ti};perm={pi}");
                push_weighted(&mut out, "tree", base, &graph, dests, ratios, &mut rng);
            }
        }
    }
    Ok(out)
}

/// Every connected labeled graph with `n <= n_max` vertices under every
/// destination permutation, followed by `random_graphs` random connected
/// graphs whose sizes cycle through `random_sizes`, with edge counts uniform
/// between a tree and a complete graph.
pub fn graph_sweep(
    n_max: usize,
    random_graphs: usize,
    random_sizes: &[usize],
    ratios: &[u64],
    seed: u64,
) -> Result<Vec<Case>> {
    let mut rng = rng_for(seed);
    let mut out = Vec::new();
    for n in 1..=n_max {
        let perms = exhaustive::all_permutations(n);
        for (gi, edges) in exhaustive::all_connected_graphs(n).iter().enumerate() {
            let graph = Arc::new(Graph::new(n, edges)?);
            for (pi, dests) in perms.iter().enumerate() {
                let base = format!("n={n};graph={gi};perm={pi}");
                push_weighted(&mut out, "graph", base, &graph, dests, ratios, &mut rng);
            }
        }
    }
    if random_graphs > 0 && random_sizes.is_empty() {
        return Err(Error::InvalidParams("random graphs need at least one size".into()));
    }
    for i in 0..random_graphs {
        let n = random_sizes[i % random_sizes.len()];
        let m = rng.gen_range(n.saturating_sub(1)..=n * n.saturating_sub(1) / 2);
        let s: u64 = rng.gen();
        let inst = generators::gen_random_graph(n, m, 1, 1, s)?;
        let case = Case::from_instance(String::new(), "graph", String::new(), &inst);
        let base = format!("n={n};m={m};seed={s}");
        push_weighted(&mut out, "graph", base, &case.graph, &case.dests, ratios, &mut rng);
    }
    Ok(out)
}

/// `count` random trees, seeds `seed, seed + 1, ..`.
pub fn random_tree_cases(n: usize, count: usize, wmin: u64, wmax: u64, seed: u64) -> Result<Vec<Case>> {
    (0..count as u64)
        .map(|i| {
            let s = seed.wrapping_add(i);
            let inst = generators::gen_random_tree(n, wmin, wmax, s)?;
            let params = format!("n={n};w=[{wmin},{wmax}];seed={s}");
            Ok(Case::from_instance(format!("random-tree-{i}"), "random-tree", params, &inst))
        })
        .collect()
}

/// `count` random graphs, seeds `seed, seed + 1, ..`.
pub fn random_graph_cases(
    n: usize,
    m: usize,
    count: usize,
    wmin: u64,
    wmax: u64,
    seed: u64,
) -> Result<Vec<Case>> {
    (0..count as u64)
        .map(|i| {
            let s = seed.wrapping_add(i);
            let inst = generators::gen_random_graph(n, m, wmin, wmax, s)?;
            let params = format!("n={n};m={m};w=[{wmin},{wmax}];seed={s}");
            Ok(Case::from_instance(format!("random-graph-{i}"), "random-graph", params, &inst))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub instance_id: String,
    pub family: String,
    pub params: String,
    pub n: usize,
    pub algo: Algo,
    /// `None` when the algorithm failed on this instance.
    pub cost: Option<Cost>,
    pub swaps: Option<usize>,
    pub baseline: BaselineKind,
    /// `None` when the baseline was unavailable.
    pub baseline_cost: Option<Cost>,
    pub ratio: Option<CostRatio>,
    pub ceiling: Option<CostRatio>,
    pub wall_ms: f64,
}

impl BenchRow {
    /// True when the row shows an algorithm above its proven ceiling.
    pub fn exceeds_ceiling(&self) -> bool {
        match (self.cost, self.baseline_cost, self.ceiling) {
            (Some(c), Some(b), Some(k)) if self.baseline.bounds_opt_from_below() => {
                !within_ratio(c, b, k)
            }
            _ => false,
        }
    }

    pub fn record(&self) -> [String; 13] {
        let opt = |v: Option<String>, missing: &str| v.unwrap_or_else(|| missing.to_string());
        [
            self.instance_id.clone(),
            self.family.clone(),
            self.params.clone(),
            self.n.to_string(),
            self.algo.name().to_string(),
            opt(self.cost.map(|c| c.to_string()), "error"),
            opt(self.swaps.map(|s| s.to_string()), ""),
            self.baseline.name().to_string(),
            opt(self.baseline_cost.map(|c| c.to_string()), "unavailable"),
            opt(self.ratio.map(|r| r.to_string()), ""),
            opt(self.ratio.map(|r| format!("{:.6}", r.to_f64())), ""),
            opt(self.ceiling.map(|r| r.to_string()), ""),
            if self.wall_ms == 0.0 {
                "0".to_string()
            } else {
                format!("{:.3}", self.wall_ms)
            },
        ]
    }
}

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub limits: SearchLimits,
    pub timing: bool,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            limits: SearchLimits::default(),
            timing: false,
        }
    }
}

fn run_case(case: &Case, algos: &[Algo], baseline: BaselineKind, opts: &BenchOptions) -> Result<Vec<BenchRow>> {
    let inst = case.instance()?;
    let baseline_cost = baseline.compute(&inst, &opts.limits).ok();
    Ok(algos
        .iter()
        .map(|&algo| {
            let clock = Instant::now();
            let outcome = algo.run(&inst, &opts.limits).and_then(|seq| {
                let (cost, ok) = replay_cost(&inst, &seq)?;
                if ok {
                    Ok((cost, seq.len()))
                } else {
                    Err(Error::InvalidSequence)
                }
            });
            let wall_ms = if opts.timing {
                clock.elapsed().as_secs_f64() * 1e3
            } else {
                0.0
            };
            let cost = outcome.as_ref().ok().map(|o| o.0);
            BenchRow {
                instance_id: case.id.clone(),
                family: case.family.clone(),
                params: case.params.clone(),
                n: case.n(),
                algo,
                cost,
                swaps: outcome.as_ref().ok().map(|o| o.1),
                baseline,
                baseline_cost,
                ratio: cost.zip(baseline_cost).and_then(|(c, b)| CostRatio::new(c, b)),
                ceiling: algo.ceiling(&inst),
                wall_ms,
            }
        })
        .collect())
}

/// Runs every case on a worker pool; rows come back in case order.
pub fn run_bench(
    cases: &[Case],
    algos: &[Algo],
    baseline: BaselineKind,
    opts: &BenchOptions,
) -> Result<Vec<BenchRow>> {
    let per_case: Vec<Vec<BenchRow>> = cases
        .par_iter()
        .map(|c| run_case(c, algos, baseline, opts))
        .collect::<Result<_>>()?;
    Ok(per_case.into_iter().flatten().collect())
}

pub fn write_csv<W: Write>(out: W, rows: &[BenchRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for row in rows {
        w.write_record(row.record()).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

/// Largest ratio per algorithm and the number of rows above their ceiling.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchSummary {
    pub max_ratio: Vec<(Algo, CostRatio)>,
    pub over_ceiling: usize,
    pub unavailable: usize,
}

pub fn summarize(rows: &[BenchRow]) -> BenchSummary {
    let mut s = BenchSummary::default();
    for row in rows {
        if row.exceeds_ceiling() {
            s.over_ceiling += 1;
        }
        if row.baseline_cost.is_none() || row.cost.is_none() {
            s.unavailable += 1;
        }
        if let Some(r) = row.ratio {
            match s.max_ratio.iter_mut().find(|(a, _)| *a == row.algo) {
                Some((_, best)) => *best = (*best).max(r),
                None => s.max_ratio.push((row.algo, r)),
            }
        }
    }
    s
}
