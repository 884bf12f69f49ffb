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

//! Replay, cost accounting and structural checkers for swap sequences.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{solve_exact, SearchLimits};
use crate::instance::{add_cost, opt_lower_bound, Configuration, Cost, Instance, SwapSequence};

/// Distances of one token around a swap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TokenStep {
    pub token: usize,
    pub weight: u64,
    pub dest_before: usize,
    pub dest_after: usize,
    pub start_before: usize,
    pub start_after: usize,
}

impl TokenStep {
    pub fn closer_to_dest(&self) -> bool {
        self.dest_after < self.dest_before
    }

    pub fn closer_to_start(&self) -> bool {
        self.start_after < self.start_before
    }

    pub fn farther_from_dest(&self) -> bool {
        self.dest_after > self.dest_before
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwapRecord {
    pub edge: (usize, usize),
    /// `steps[0]` moved from `edge.0` to `edge.1`, `steps[1]` the other way.
    pub steps: [TokenStep; 2],
    pub cost: Cost,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub records: Vec<SwapRecord>,
    pub total_cost: Cost,
    pub final_ok: bool,
}

/// Steps through `seq` from the start configuration, handing each swap's
/// record and the configuration after it to `visit`.
fn walk<F>(inst: &Instance, seq: &SwapSequence, mut visit: F) -> Result<Configuration>
where
    F: FnMut(usize, &SwapRecord, &Configuration) -> Result<()>,
{
    let g = inst.graph();
    let mut conf = Configuration::start(inst);
    for (index, (u, v)) in seq.iter().enumerate() {
        if !g.has_edge(u, v) {
            return Err(Error::InvalidSwapEdge { index, u, v });
        }
        let (a, b) = conf.swap(u, v);
        let step = |t: usize, from: usize, to: usize| TokenStep {
            token: t,
            weight: inst.weight(t),
            dest_before: g.dist(from, inst.dest(t)),
            dest_after: g.dist(to, inst.dest(t)),
            start_before: g.dist(from, inst.start(t)),
            start_after: g.dist(to, inst.start(t)),
        };
        let record = SwapRecord {
            edge: (u, v),
            steps: [step(a, u, v), step(b, v, u)],
            cost: add_cost(inst.weight(a), inst.weight(b))?,
        };
        visit(index, &record, &conf)?;
    }
    Ok(conf)
}

/// Simulates `seq` from the start configuration.
pub fn replay(inst: &Instance, seq: &SwapSequence) -> Result<Trace> {
    let mut records = Vec::with_capacity(seq.len());
    let mut total_cost = 0;
    let conf = walk(inst, seq, |_, r, _| {
        total_cost = add_cost(total_cost, r.cost)?;
        records.push(*r);
        Ok(())
    })?;
    Ok(Trace {
        records,
        total_cost,
        final_ok: conf.all_happy(inst),
    })
}

/// Total cost and final validity without keeping per-swap records.
pub fn replay_cost(inst: &Instance, seq: &SwapSequence) -> Result<(Cost, bool)> {
    let g = inst.graph();
    let mut conf = Configuration::start(inst);
    let mut total = 0;
    for (index, (u, v)) in seq.iter().enumerate() {
        if !g.has_edge(u, v) {
            return Err(Error::InvalidSwapEdge { index, u, v });
        }
        let (a, b) = conf.swap(u, v);
        total = add_cost(total, inst.weight(a) + inst.weight(b))?;
    }
    Ok((total, conf.all_happy(inst)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub swap_index: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyVerdict {
    pub holds: bool,
    pub first_violation: Option<Violation>,
}

impl PropertyVerdict {
    pub fn holds() -> Self {
        PropertyVerdict {
            holds: true,
            first_violation: None,
        }
    }

    pub fn violated(swap_index: usize, detail: impl Into<String>) -> Self {
        PropertyVerdict {
            holds: false,
            first_violation: Some(Violation {
                swap_index,
                detail: detail.into(),
            }),
        }
    }
}

/// One line of the JSON check report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub property: String,
    pub holds: bool,
    pub first_violation: Option<Violation>,
}

impl CheckReport {
    pub fn new(property: &str, verdict: PropertyVerdict) -> Self {
        CheckReport {
            property: property.to_string(),
            holds: verdict.holds,
            first_violation: verdict.first_violation,
        }
    }
}

fn first_violation<F>(inst: &Instance, seq: &SwapSequence, mut bad: F) -> Result<PropertyVerdict>
where
    F: FnMut(&SwapRecord) -> Option<String>,
{
    let mut verdict = PropertyVerdict::holds();
    walk(inst, seq, |i, r, _| {
        if verdict.holds {
            if let Some(detail) = bad(r) {
                verdict = PropertyVerdict::violated(i, detail);
            }
        }
        Ok(())
    })?;
    Ok(verdict)
}

/// Holds iff no swap moves both tokens strictly farther from their
/// destinations.
pub fn is_locally_optimal(inst: &Instance, seq: &SwapSequence) -> Result<PropertyVerdict> {
    first_violation(inst, seq, |r| {
        let [a, b] = r.steps;
        (a.farther_from_dest() && b.farther_from_dest()).then(|| {
            format!(
                "swap ({}, {}) moves tokens {} and {} away from their destinations",
                r.edge.0, r.edge.1, a.token, b.token
            )
        })
    })
}

/// Holds iff every swap moves at least one of its tokens strictly closer to
/// that token's destination or to its start.
pub fn is_generalized_locally_optimal(
    inst: &Instance,
    seq: &SwapSequence,
) -> Result<PropertyVerdict> {
    first_violation(inst, seq, |r| {
        let ok = r
            .steps
            .iter()
            .any(|s| s.closer_to_dest() || s.closer_to_start());
        (!ok).then(|| {
            format!(
                "swap ({}, {}) moves neither token {} nor {} closer to its start or destination",
                r.edge.0, r.edge.1, r.steps[0].token, r.steps[1].token
            )
        })
    })
}

/// Largest distance any token reaches from its start-destination path over
/// the whole run. Only defined on trees.
pub fn straying_value(inst: &Instance, seq: &SwapSequence) -> Result<usize> {
    let g = inst.graph();
    let tree = g.rooted_tree().ok_or(Error::NotATree)?;
    let mut conf = Configuration::start(inst);
    let mut worst = 0;
    for (index, (u, v)) in seq.iter().enumerate() {
        if !g.has_edge(u, v) {
            return Err(Error::InvalidSwapEdge { index, u, v });
        }
        let (a, b) = conf.swap(u, v);
        for (t, at) in [(a, v), (b, u)] {
            worst = worst.max(tree.dist_to_path(at, inst.start(t), inst.dest(t)));
        }
    }
    Ok(worst)
}

/// Holds iff no token ever gets farther than `k` from its start-destination
/// path. The violation points at the first swap exceeding `k`.
pub fn straying_within(inst: &Instance, seq: &SwapSequence, k: usize) -> Result<PropertyVerdict> {
    let g = inst.graph();
    let tree = g.rooted_tree().ok_or(Error::NotATree)?;
    let mut verdict = PropertyVerdict::holds();
    walk(inst, seq, |i, r, conf| {
        if verdict.holds {
            for s in r.steps {
                let at = conf.vertex_of(s.token);
                let d = tree.dist_to_path(at, inst.start(s.token), inst.dest(s.token));
                if d > k {
                    verdict = PropertyVerdict::violated(
                        i,
                        format!("token {} is {d} away from its start-destination path", s.token),
                    );
                    break;
                }
            }
        }
        Ok(())
    })?;
    Ok(verdict)
}

/// An exact non-negative rational, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CostRatio {
    pub num: u64,
    pub den: u64,
}

impl CostRatio {
    /// `None` when `den == 0` and `num > 0`; `0/0` reads as 1.
    pub fn new(num: u64, den: u64) -> Option<Self> {
        match (num, den) {
            (0, 0) => Some(CostRatio { num: 1, den: 1 }),
            (_, 0) => None,
            _ => {
                let g = num_integer::gcd(num, den);
                Some(CostRatio {
                    num: num / g,
                    den: den / g,
                })
            }
        }
    }

    /// `1 + W/w`.
    pub fn tree_ceiling(w: u64, big_w: u64) -> Self {
        Self::new(w + big_w, w).expect("w >= 1")
    }

    /// `2 + 2W/w`.
    pub fn general_ceiling(w: u64, big_w: u64) -> Self {
        Self::new(2 * (w + big_w), w).expect("w >= 1")
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for CostRatio {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CostRatio {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let l = self.num as u128 * other.den as u128;
        let r = other.num as u128 * self.den as u128;
        l.cmp(&r)
    }
}

impl fmt::Display for CostRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Checks `alg <= ceiling * baseline` exactly.
pub fn within_ratio(alg: Cost, baseline: Cost, ceiling: CostRatio) -> bool {
    alg as u128 * ceiling.den as u128 <= baseline as u128 * ceiling.num as u128
}

#[derive(Debug, Clone)]
pub enum Baseline {
    ExactOpt(SearchLimits),
    LowerBound,
    GivenSequence(SwapSequence),
}

impl Baseline {
    pub fn kind(&self) -> &'static str {
        match self {
            Baseline::ExactOpt(_) => "exact",
            Baseline::LowerBound => "lower-bound",
            Baseline::GivenSequence(_) => "given",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioReport {
    pub alg_cost: Cost,
    pub baseline_kind: &'static str,
    pub baseline_cost: Cost,
    /// `None` only when the baseline is zero and the algorithm is not.
    pub ratio: Option<CostRatio>,
    /// `1 + W/w` on trees, `2 + 2W/w` otherwise.
    pub ceiling: CostRatio,
}

pub fn ratio_report(inst: &Instance, alg: &SwapSequence, baseline: &Baseline) -> Result<RatioReport> {
    let (alg_cost, ok) = replay_cost(inst, alg)?;
    if !ok {
        return Err(Error::InvalidSequence);
    }
    let baseline_cost = match baseline {
        Baseline::ExactOpt(limits) => solve_exact(inst, limits)
            .map_err(|e| Error::BaselineUnavailable(e.to_string()))?
            .cost,
        Baseline::LowerBound => opt_lower_bound(inst)?,
        Baseline::GivenSequence(seq) => {
            let (c, ok) = replay_cost(inst, seq)?;
            if !ok {
                return Err(Error::BaselineUnavailable(
                    "baseline sequence does not solve the instance".into(),
                ));
            }
            c
        }
    };
    let (w, big_w) = (inst.min_weight(), inst.max_weight());
    let ceiling = if inst.graph().is_tree() {
        CostRatio::tree_ceiling(w, big_w)
    } else {
        CostRatio::general_ceiling(w, big_w)
    };
    Ok(RatioReport {
        alg_cost,
        baseline_kind: baseline.kind(),
        baseline_cost,
        ratio: CostRatio::new(alg_cost, baseline_cost),
        ceiling,
    })
}
