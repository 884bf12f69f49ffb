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

//! Exact minimum-cost search over configurations.
//!
//! Best-first search where moving along edge `(u, v)` costs the weights of
//! the two tokens there. States are packed as 4-bit vertex slots in a `u64`,
//! which caps instances at 16 vertices.
//!
//! Heuristic: `h(c) = sum_t weight(t) * dist(vertex(t), dest(t))`. A swap of
//! tokens `a` and `b` changes each of their distances by exactly one, so `h`
//! drops by at most `weight(a) + weight(b)`, which is the swap's cost. Hence
//! `h(parent) <= cost + h(child)` (consistency), and `h` is zero on the goal,
//! so it never overestimates. [`Heuristic::HalfSum`] and [`Heuristic::Zero`]
//! are weaker variants kept for cross-checking.

use std::cmp::Reverse;
use std::collections::hash_map::Entry;
use std::collections::{BinaryHeap, HashMap};

use crate::error::{Error, Result};
use crate::instance::{Configuration, Cost, Instance, SwapSequence};

pub const MAX_EXACT_VERTICES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_states: u64,
    pub max_cost: Option<Cost>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_states: 5_000_000,
            max_cost: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Heuristic {
    Zero,
    HalfSum,
    #[default]
    FullSum,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptResult {
    pub cost: Cost,
    pub sequence: SwapSequence,
    pub states_expanded: u64,
}

/// What the search reports to an observer for every generated successor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpansionEdge {
    pub parent: u64,
    pub child: u64,
    pub parent_g: Cost,
    pub parent_h: Cost,
    pub child_h: Cost,
    pub swap_cost: Cost,
}

/// Lower bound on the cost of finishing from `conf`.
pub fn admissible_estimate(inst: &Instance, conf: &Configuration) -> Cost {
    let g = inst.graph();
    (0..inst.n())
        .map(|t| inst.weight(t) * g.dist(conf.vertex_of(t), inst.dest(t)) as Cost)
        .sum()
}

pub fn solve_exact(inst: &Instance, limits: &SearchLimits) -> Result<OptResult> {
    solve_exact_with(inst, limits, Heuristic::default(), |_| {})
}

fn pack(token_at: &[usize]) -> u64 {
    token_at
        .iter()
        .enumerate()
        .fold(0, |k, (v, &t)| k | (t as u64) << (4 * v))
}

/// Decodes a packed state into `token_at` slots.
pub fn unpack(key: u64, n: usize, out: &mut [usize]) {
    for (v, slot) in out.iter_mut().enumerate().take(n) {
        *slot = ((key >> (4 * v)) & 0xf) as usize;
    }
}

/// Packed key of a configuration, as reported to observers.
pub fn state_key(conf: &Configuration) -> u64 {
    pack(conf.token_at_slice())
}

pub fn solve_exact_with<F>(
    inst: &Instance,
    limits: &SearchLimits,
    heuristic: Heuristic,
    mut observe: F,
) -> Result<OptResult>
where
    F: FnMut(&ExpansionEdge),
{
    let n = inst.n();
    if n > MAX_EXACT_VERTICES {
        return Err(Error::InstanceTooLarge {
            n,
            max: MAX_EXACT_VERTICES,
        });
    }
    let g = inst.graph();
    let edges = g.edges();
    let contrib = |t: usize, v: usize| inst.weight(t) * g.dist(v, inst.dest(t)) as Cost;
    let h_of = |sum: Cost| match heuristic {
        Heuristic::Zero => 0,
        Heuristic::HalfSum => sum / 2,
        Heuristic::FullSum => sum,
    };

    let start = Configuration::start(inst);
    let start_key = state_key(&start);
    let goal_key = state_key(&Configuration::goal(inst));
    let start_sum = admissible_estimate(inst, &start);

    // key -> (g, parent key, edge id); the start is its own parent.
    let mut best: HashMap<u64, (Cost, u64, usize)> = HashMap::new();
    best.insert(start_key, (0, start_key, usize::MAX));
    // Entries: (f, g, key, full sum).
    let mut open = BinaryHeap::new();
    open.push(Reverse((h_of(start_sum), 0, start_key, start_sum)));
    let mut expanded = 0u64;
    let mut slots = vec![0usize; n];
    let mut pruned = false;

    while let Some(Reverse((_, cost, key, sum))) = open.pop() {
        if best[&key].0 < cost {
            continue;
        }
        if key == goal_key {
            return Ok(OptResult {
                cost,
                sequence: witness(&best, edges, start_key, goal_key),
                states_expanded: expanded,
            });
        }
        if expanded >= limits.max_states {
            return Err(Error::StateSpaceExceeded(limits.max_states));
        }
        expanded += 1;
        unpack(key, n, &mut slots);
        let parent_h = h_of(sum);
        for (id, &(u, v)) in edges.iter().enumerate() {
            let (a, b) = (slots[u], slots[v]);
            let swap_cost = inst.weight(a) + inst.weight(b);
            let child_sum = sum + contrib(a, v) + contrib(b, u) - contrib(a, u) - contrib(b, v);
            let mask = (0xf_u64 << (4 * u)) | (0xf_u64 << (4 * v));
            let child = (key & !mask) | (a as u64) << (4 * v) | (b as u64) << (4 * u);
            let child_h = h_of(child_sum);
            observe(&ExpansionEdge {
                parent: key,
                child,
                parent_g: cost,
                parent_h,
                child_h,
                swap_cost,
            });
            let child_g = cost + swap_cost;
            if let Some(cap) = limits.max_cost {
                if child_g + child_h > cap {
                    pruned = true;
                    continue;
                }
            }
            let improved = match best.entry(child) {
                Entry::Vacant(e) => {
                    e.insert((child_g, key, id));
                    true
                }
                Entry::Occupied(mut e) => {
                    if child_g < e.get().0 {
                        e.insert((child_g, key, id));
                        true
                    } else {
                        false
                    }
                }
            };
            if improved {
                open.push(Reverse((child_g + child_h, child_g, child, child_sum)));
            }
        }
    }
    match limits.max_cost {
        Some(cap) if pruned => Err(Error::CostCeilingExceeded(cap)),
        _ => Err(Error::Unsolvable),
    }
}

fn witness(
    best: &HashMap<u64, (Cost, u64, usize)>,
    edges: &[(usize, usize)],
    start: u64,
    goal: u64,
) -> SwapSequence {
    let mut swaps = Vec::new();
    let mut key = goal;
    while key != start {
        let (_, parent, id) = best[&key];
        swaps.push(edges[id]);
        key = parent;
    }
    swaps.reverse();
    swaps.into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::replay;
    use crate::instance::fixtures::*;

    #[test]
    fn small_examples() {
        let id = solve_exact(&identity(4), &SearchLimits::default()).unwrap();
        assert_eq!(id.cost, 0);
        assert!(id.sequence.is_empty());
        assert_eq!(
            solve_exact(&crossed_pair(1, 5), &SearchLimits::default())
                .unwrap()
                .cost,
            6
        );
        let c = three_path_cyclic();
        let r = solve_exact(&c, &SearchLimits::default()).unwrap();
        assert_eq!(r.cost, 7);
        let t = replay(&c, &r.sequence).unwrap();
        assert!(t.final_ok);
        assert_eq!(t.total_cost, 7);
    }

    #[test]
    fn estimate_examples() {
        let x = crossed_pair(1, 5);
        assert_eq!(admissible_estimate(&x, &Configuration::goal(&x)), 0);
        assert!(admissible_estimate(&x, &Configuration::start(&x)) <= 6);
    }

    #[test]
    fn limits_are_enforced() {
        let c = three_path_cyclic();
        let tight = SearchLimits {
            max_states: 1,
            max_cost: None,
        };
        assert_eq!(
            solve_exact_with(&c, &tight, Heuristic::Zero, |_| {}).unwrap_err(),
            Error::StateSpaceExceeded(1)
        );
        let capped = SearchLimits {
            max_states: 1000,
            max_cost: Some(6),
        };
        assert_eq!(
            solve_exact(&c, &capped).unwrap_err(),
            Error::CostCeilingExceeded(6)
        );
        let ok = SearchLimits {
            max_cost: Some(7),
            ..capped
        };
        assert_eq!(solve_exact(&c, &ok).unwrap().cost, 7);
    }

    #[test]
    fn heuristics_agree_on_fixtures() {
        for inst in [three_path_cyclic(), crossed_pair(3, 2), identity(3)] {
            let costs: Vec<_> = [Heuristic::Zero, Heuristic::HalfSum, Heuristic::FullSum]
                .iter()
                .map(|&h| {
                    solve_exact_with(&inst, &SearchLimits::default(), h, |_| {})
                        .unwrap()
                        .cost
                })
                .collect();
            assert!(costs.windows(2).all(|w| w[0] == w[1]), "{costs:?}");
        }
    }
}
